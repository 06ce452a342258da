use std::collections::BTreeMap;

use num_integer::gcd;

use super::group::{FinAbGroup, GroupElt};
use super::matrix::IMat;
use super::snf::smith_normal_form;
use super::subgroup::Subgroup;
use crate::error::{MextError, Result};
use crate::limits;

/// Invariant factors `d_1 | d_2 | …`, with trivial factors dropped.
pub fn canonical_decomposition(g: &FinAbGroup) -> FinAbGroup {
    canonical_from_moduli(g.moduli())
}

pub(crate) fn canonical_from_moduli(moduli: &[i64]) -> FinAbGroup {
    let d: Vec<i128> = moduli.iter().map(|&n| n as i128).collect();
    let s = smith_normal_form(&IMat::diagonal(&d));
    let inv = s
        .invariants()
        .into_iter()
        .filter(|&x| x > 1)
        .map(|x| x as i64)
        .collect();
    FinAbGroup::new(inv).expect("invariant factors of a valid group")
}

fn pairwise_gcd(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    let m: Vec<i64> = a
        .moduli()
        .iter()
        .flat_map(|&x| b.moduli().iter().map(move |&y| gcd(x, y)))
        .collect();
    canonical_from_moduli(&m)
}

/// `Hom(A, B)`.
pub fn hom_group(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    pairwise_gcd(a, b)
}

/// `Ext(A, B)`; for finite groups isomorphic to `Hom(A, B)`.
pub fn ext_group(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    pairwise_gcd(a, b)
}

/// `A ⊗ B`.
pub fn tensor(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    pairwise_gcd(a, b)
}

/// `∧^k A` for `k = 2, 3`. The gcd formula holds for any cyclic decomposition.
pub fn wedge_power(a: &FinAbGroup, k: usize) -> Result<FinAbGroup> {
    let m = a.moduli();
    let r = m.len();
    let mut out = vec![];
    match k {
        2 => {
            for i in 0..r {
                for j in i + 1..r {
                    out.push(gcd(m[i], m[j]));
                }
            }
        }
        3 => {
            for i in 0..r {
                for j in i + 1..r {
                    for l in j + 1..r {
                        out.push(gcd(gcd(m[i], m[j]), m[l]));
                    }
                }
            }
        }
        _ => return Err(MextError::Range(format!("wedge power {k} (only 2 and 3)"))),
    }
    Ok(canonical_from_moduli(&out))
}

fn require_order_two(a: &FinAbGroup, t: &GroupElt) -> Result<()> {
    a.check(t)?;
    match a.order_of(t) {
        2 => Ok(()),
        o => Err(MextError::NotOrderTwo(o)),
    }
}

/// Whether `⟨t⟩` is a direct summand of `A`, decided by `t ∉ 2A`.
pub fn is_split(a: &FinAbGroup, t: &GroupElt) -> Result<bool> {
    require_order_two(a, t)?;
    let doubles: Vec<GroupElt> = (0..a.rank()).map(|i| a.scale(&a.basis(i), 2)).collect();
    Ok(!Subgroup::generated(a, &doubles).contains(t))
}

/// Characters `A → Z_2`, as values on the generators, in lexicographic order.
fn z2_characters(a: &FinAbGroup) -> Vec<Vec<i64>> {
    let even: Vec<usize> = (0..a.rank()).filter(|&i| a.moduli()[i] % 2 == 0).collect();
    (0..1u64 << even.len())
        .map(|mask| {
            let mut v = vec![0; a.rank()];
            for (bit, &i) in even.iter().rev().enumerate() {
                v[i] = ((mask >> bit) & 1) as i64;
            }
            v
        })
        .collect()
}

/// Brute-force search for a complement of `⟨t⟩`: kernels of characters
/// `A → Z_2` not vanishing on `t`, verified by enumeration.
pub fn complement_search(a: &FinAbGroup, t: &GroupElt) -> Result<Option<Vec<GroupElt>>> {
    limits::check("group for complement search", a.order(), limits::COMPLEMENT_LIMIT)?;
    require_order_two(a, t)?;
    let tsub = Subgroup::generated(a, std::slice::from_ref(t));
    for phi in z2_characters(a) {
        let val: i64 = phi.iter().zip(&t.coords).map(|(p, c)| p * c).sum();
        if val % 2 == 0 {
            continue;
        }
        let ker: Vec<GroupElt> = a
            .elements()
            .filter(|x| phi.iter().zip(&x.coords).map(|(p, c)| p * c).sum::<i64>() % 2 == 0)
            .collect();
        let b = Subgroup::generated(a, &ker);
        let meets = b.elements().iter().any(|x| !x.is_zero() && tsub.contains(x));
        if !meets && b.sum(&tsub).order() == a.order() {
            return Ok(Some(b.gens()));
        }
    }
    Ok(None)
}

/// Number of elements of each order.
pub fn order_census(a: &FinAbGroup) -> BTreeMap<u64, u64> {
    let mut m = BTreeMap::new();
    for x in a.elements() {
        *m.entry(a.order_of(&x)).or_insert(0) += 1;
    }
    m
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Recovers the isomorphism type of a finite abelian group from how many of
/// its elements have each order.
pub fn group_from_census(census: &BTreeMap<u64, u64>) -> Result<FinAbGroup> {
    let total: u64 = census.values().sum();
    let mut cyclic_parts: Vec<i64> = vec![];
    for p in prime_factors(total) {
        // counts[k] = |G[p^k]|; then log_p counts[k] - log_p counts[k-1] = #{e_i ≥ k}.
        let mut k = 0u32;
        let mut prev_log = 0u32;
        let mut at_least: Vec<u32> = vec![];
        loop {
            k += 1;
            let pk = p.pow(k);
            let cnt: u64 = census
                .iter()
                .filter(|(&o, _)| pk % o == 0)
                .map(|(_, &c)| c)
                .sum();
            let lg = log_exact(cnt, p).ok_or_else(|| {
                MextError::Internal("element census is not that of an abelian group".into())
            })?;
            if lg == prev_log {
                break;
            }
            at_least.push(lg - prev_log);
            prev_log = lg;
        }
        // at_least[k-1] = number of cyclic p-factors of exponent ≥ k.
        for (idx, &c) in at_least.iter().enumerate() {
            let next = at_least.get(idx + 1).copied().unwrap_or(0);
            for _ in 0..c - next {
                cyclic_parts.push(p.pow(idx as u32 + 1) as i64);
            }
        }
    }
    Ok(canonical_from_moduli(&cyclic_parts))
}

fn log_exact(mut n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[i64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_decomposition(&g(&[2, 4, 3])).moduli(), &[2, 12]);
        assert_eq!(canonical_decomposition(&g(&[6])).moduli(), &[6]);
        assert!(canonical_decomposition(&g(&[])).moduli().is_empty());
        assert_eq!(canonical_decomposition(&g(&[1, 1, 4, 1])).moduli(), &[4]);
    }

    #[test]
    fn hom_ext_examples() {
        assert_eq!(hom_group(&g(&[4]), &g(&[6])).moduli(), &[2]);
        assert_eq!(ext_group(&g(&[2]), &g(&[4])).moduli(), &[2]);
        assert!(hom_group(&g(&[4, 2]), &g(&[])).is_trivial());
    }

    #[test]
    fn hom_z4_z6_brute() {
        // a candidate map sends 1 to any element of Z6; valid iff 4·x ≡ 0
        let valid = (0..6).filter(|x| (4 * x) % 6 == 0).count();
        assert_eq!(valid, 2);
    }

    #[test]
    fn wedge_examples() {
        assert!(wedge_power(&g(&[2, 2]), 3).unwrap().is_trivial());
        assert_eq!(wedge_power(&g(&[2, 2, 2]), 3).unwrap().moduli(), &[2]);
        assert!(wedge_power(&g(&[7]), 2).unwrap().is_trivial());
        assert!(wedge_power(&g(&[2]), 4).is_err());
    }

    #[test]
    fn wedge3_dimension_over_f2() {
        // alternating trilinear forms on F2^r: dimension C(r,3)
        for r in 0..6 {
            let a = g(&vec![2; r]);
            let expected = r * r.saturating_sub(1) * r.saturating_sub(2) / 6;
            assert_eq!(wedge_power(&a, 3).unwrap().order(), 1 << expected);
        }
    }

    #[test]
    fn split_examples() {
        let z2 = g(&[2]);
        assert!(is_split(&z2, &z2.elt(&[1]).unwrap()).unwrap());
        let z4 = g(&[4]);
        assert!(!is_split(&z4, &z4.elt(&[2]).unwrap()).unwrap());
        let a = g(&[2, 4]);
        let t = a.elt(&[1, 2]).unwrap();
        assert!(is_split(&a, &t).unwrap());
        assert!(matches!(
            is_split(&z4, &z4.elt(&[1]).unwrap()),
            Err(MextError::NotOrderTwo(4))
        ));
    }

    #[test]
    fn complement_examples() {
        let a = g(&[2, 4]);
        let t = a.elt(&[1, 2]).unwrap();
        let b = complement_search(&a, &t).unwrap().unwrap();
        assert_eq!(Subgroup::generated(&a, &b), Subgroup::generated(&a, &[a.elt(&[0, 1]).unwrap()]));
        let z4 = g(&[4]);
        assert!(complement_search(&z4, &z4.elt(&[2]).unwrap()).unwrap().is_none());
        let z2 = g(&[2]);
        assert!(complement_search(&z2, &z2.elt(&[1]).unwrap()).unwrap().unwrap().is_empty());
    }

    #[test]
    fn census_recovers_type() {
        for m in [vec![2, 4], vec![8, 4], vec![2, 2, 2], vec![6, 4], vec![9, 3, 2], vec![]] {
            let a = g(&m);
            assert_eq!(group_from_census(&order_census(&a)).unwrap(), canonical_decomposition(&a));
        }
    }
}
