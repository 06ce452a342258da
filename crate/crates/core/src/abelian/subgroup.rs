//! Subgroups as lattices `D ⊆ L ⊆ Z^n` (with `D = ⊕ n_i Z`) in Hermite normal
//! form, and quotients of such lattices via Smith normal form.

use super::group::{FinAbGroup, GroupElt};
use super::matrix::IMat;
use super::snf::smith_normal_form;
use crate::error::{MextError, Result};

/// A subgroup of `ambient`, stored as the upper-triangular reduced HNF basis
/// of its preimage lattice in `Z^n`. Two subgroups are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FinAbGroup,
    hnf: IMat,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl Subgroup {
    pub fn trivial(ambient: &FinAbGroup) -> Self {
        let d: Vec<i128> = ambient.moduli().iter().map(|&n| n as i128).collect();
        Subgroup {
            ambient: ambient.clone(),
            hnf: IMat::diagonal(&d),
        }
    }

    pub fn whole(ambient: &FinAbGroup) -> Self {
        Subgroup {
            ambient: ambient.clone(),
            hnf: IMat::identity(ambient.rank()),
        }
    }

    /// The subgroup generated by `gens` (coordinates need not be reduced).
    pub fn generated(ambient: &FinAbGroup, gens: &[GroupElt]) -> Self {
        let mut s = Subgroup::trivial(ambient);
        for g in gens {
            let v: Vec<i128> = g.coords.iter().map(|&c| c as i128).collect();
            s.insert(v);
        }
        s
    }

    fn insert(&mut self, mut g: Vec<i128>) {
        let n = self.ambient.rank();
        for j in 0..n {
            if g[j] == 0 {
                continue;
            }
            let a = self.hnf[(j, j)];
            let b = g[j];
            let (d, u, v) = ext_gcd(a, b);
            let row: Vec<i128> = self.hnf.row(j);
            for k in 0..n {
                let new_row = u * row[k] + v * g[k];
                g[k] = (a / d) * g[k] - (b / d) * row[k];
                self.hnf[(j, k)] = new_row;
            }
        }
        self.reduce();
    }

    fn reduce(&mut self) {
        let n = self.ambient.rank();
        for i in (0..n).rev() {
            for j in i + 1..n {
                let q = self.hnf[(i, j)].div_euclid(self.hnf[(j, j)]);
                if q != 0 {
                    self.hnf.add_row(i, j, -q);
                }
            }
        }
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    /// The HNF basis of the preimage lattice.
    pub fn lattice(&self) -> &IMat {
        &self.hnf
    }

    pub fn order(&self) -> u64 {
        let piv: u64 = (0..self.ambient.rank())
            .map(|i| self.hnf[(i, i)] as u64)
            .product();
        self.ambient.order() / piv
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Canonical generators: nonzero reductions of the HNF rows.
    pub fn gens(&self) -> Vec<GroupElt> {
        (0..self.ambient.rank())
            .map(|i| self.ambient.reduce_wide(&self.hnf.row(i)))
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Coefficients `c` with `x = c · hnf` (as integer vectors), if `x ∈ L`.
    pub(crate) fn coords_in_basis(&self, x: &[i128]) -> Option<Vec<i128>> {
        let n = self.ambient.rank();
        let mut r = x.to_vec();
        let mut c = vec![0i128; n];
        for j in 0..n {
            let p = self.hnf[(j, j)];
            if r[j] % p != 0 {
                return None;
            }
            c[j] = r[j] / p;
            for k in j..n {
                r[k] -= c[j] * self.hnf[(j, k)];
            }
        }
        Some(c)
    }

    pub fn contains(&self, x: &GroupElt) -> bool {
        let v: Vec<i128> = x.coords.iter().map(|&c| c as i128).collect();
        self.coords_in_basis(&v).is_some()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.gens().iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        let mut s = self.clone();
        for i in 0..self.ambient.rank() {
            s.insert(other.hnf.row(i));
        }
        s
    }

    /// Elements in a deterministic order (not sorted).
    pub fn elements(&self) -> Vec<GroupElt> {
        let n = self.ambient.rank();
        let bounds: Vec<i128> = (0..n)
            .map(|j| self.ambient.moduli()[j] as i128 / self.hnf[(j, j)])
            .collect();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut c = vec![0i128; n];
        loop {
            let v: Vec<i128> = (0..n)
                .map(|k| (0..=k).map(|j| c[j] * self.hnf[(j, k)]).sum())
                .collect();
            out.push(self.ambient.reduce_wide(&v));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                c[i] += 1;
                if c[i] < bounds[i] {
                    break;
                }
                c[i] = 0;
            }
        }
    }

    /// This subgroup as an abstract group, with lifts of the new generators.
    pub fn as_group(&self) -> Quotient {
        Quotient::new(self, &Subgroup::trivial(&self.ambient))
            .expect("trivial subgroup is contained in every subgroup")
    }
}

/// `K / H` for subgroups `H ⊆ K` of a common ambient group.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FinAbGroup,
    k: Subgroup,
    // Row i maps K-basis coordinates to the i-th kept invariant factor.
    proj: Vec<Vec<i128>>,
    lifts: Vec<GroupElt>,
}

impl Quotient {
    pub fn new(k: &Subgroup, h: &Subgroup) -> Result<Quotient> {
        if k.ambient != h.ambient {
            return Err(MextError::GroupMismatch("subgroups of different groups".into()));
        }
        if !h.is_subgroup_of(k) {
            return Err(MextError::Invariant("H is not contained in K".into()));
        }
        let n = k.ambient.rank();
        // Rows of m: the H-lattice basis in K-lattice coordinates.
        let rows: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                k.coords_in_basis(&h.hnf.row(i))
                    .expect("H lattice lies in K lattice")
            })
            .collect();
        let m = IMat::from_rows(&rows, n);
        // U·Mᵀ·V = D, so Vᵀ·M·Uᵀ = D: y ↦ U·yᵀ identifies Z^n / rowspace(M) with ⊕ Z_{d_i}.
        let s = smith_normal_form(&m.transpose());
        let inv = s.invariants();
        let mut moduli = vec![];
        let mut proj = vec![];
        let mut lifts = vec![];
        for (i, &d) in inv.iter().enumerate() {
            if d == 1 {
                continue;
            }
            moduli.push(d as i64);
            proj.push(s.u.row(i));
            let y = s.u_inv.col(i);
            let x: Vec<i128> = (0..n)
                .map(|col| (0..n).map(|r| y[r] * k.hnf[(r, col)]).sum())
                .collect();
            lifts.push(k.ambient.reduce_wide(&x));
        }
        Ok(Quotient {
            group: FinAbGroup::new(moduli)?,
            k: k.clone(),
            proj,
            lifts,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Image of `x ∈ K` in the quotient.
    pub fn project(&self, x: &GroupElt) -> Result<GroupElt> {
        let v: Vec<i128> = x.coords.iter().map(|&c| c as i128).collect();
        let y = self
            .k
            .coords_in_basis(&v)
            .ok_or_else(|| MextError::InvalidElement(format!("{:?} not in K", x.coords)))?;
        let q: Vec<i128> = self
            .proj
            .iter()
            .map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum())
            .collect();
        Ok(self.group.reduce_wide(&q))
    }

    /// Representatives in `K` of the quotient generators.
    pub fn lifts(&self) -> &[GroupElt] {
        &self.lifts
    }

    /// A representative in `K` of a quotient element.
    pub fn lift(&self, q: &GroupElt) -> GroupElt {
        let amb = &self.k.ambient;
        q.coords
            .iter()
            .zip(&self.lifts)
            .fold(amb.zero(), |acc, (&c, l)| amb.add(&acc, &amb.scale(l, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn g(m: &[i64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    fn brute_span(a: &FinAbGroup, gens: &[GroupElt]) -> BTreeSet<GroupElt> {
        let mut set: BTreeSet<GroupElt> = [a.zero()].into();
        loop {
            let mut grew = false;
            for x in set.clone() {
                for gg in gens {
                    let y = a.add(&x, &a.reduce(&gg.coords));
                    grew |= set.insert(y);
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn span_matches_brute_force() {
        let a = g(&[2, 4, 6]);
        let gens = vec![
            a.elt(&[1, 2, 3]).unwrap(),
            a.elt(&[0, 2, 2]).unwrap(),
        ];
        let s = Subgroup::generated(&a, &gens);
        let brute = brute_span(&a, &gens);
        assert_eq!(s.order() as usize, brute.len());
        let els: BTreeSet<GroupElt> = s.elements().into_iter().collect();
        assert_eq!(els, brute);
        for x in a.elements() {
            assert_eq!(s.contains(&x), brute.contains(&x));
        }
    }

    #[test]
    fn canonical_equality() {
        let a = g(&[4, 4]);
        let s1 = Subgroup::generated(&a, &[a.elt(&[1, 1]).unwrap()]);
        let s2 = Subgroup::generated(&a, &[a.elt(&[3, 3]).unwrap(), a.elt(&[2, 2]).unwrap()]);
        assert_eq!(s1, s2);
        assert_eq!(Subgroup::generated(&a, &a.elements().collect::<Vec<_>>()), Subgroup::whole(&a));
    }

    #[test]
    fn quotient_structure() {
        let a = g(&[2, 4]);
        let k = Subgroup::whole(&a);
        let h = Subgroup::generated(&a, &[a.elt(&[1, 2]).unwrap()]);
        let q = Quotient::new(&k, &h).unwrap();
        assert_eq!(q.group().moduli(), &[4]);
        // projection is a surjective homomorphism with kernel H
        for x in a.elements() {
            let px = q.project(&x).unwrap();
            assert_eq!(px.is_zero(), h.contains(&x));
            for y in a.elements() {
                let lhs = q.project(&a.add(&x, &y)).unwrap();
                let rhs = q.group().add(&px, &q.project(&y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        for z in q.group().elements() {
            assert_eq!(q.project(&q.lift(&z)).unwrap(), z);
        }
    }

    #[test]
    fn subgroup_as_group() {
        let a = g(&[2, 4, 3]);
        let s = Subgroup::generated(&a, &[a.elt(&[1, 2, 1]).unwrap()]);
        let q = s.as_group();
        assert_eq!(q.group().order(), 6);
        for l in q.lifts() {
            assert!(s.contains(l));
        }
    }
}
