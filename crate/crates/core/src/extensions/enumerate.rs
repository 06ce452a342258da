//! Exhaustive classification of pointed minimal extensions for small `A`.

use std::collections::BTreeMap;

use super::base::BaseCategory;
use super::minext::MinExt;
use crate::abelian::{canonical_from_moduli, group_from_census, FinAbGroup, GroupElt, GroupHom};
use crate::error::{MextError, Result};
use crate::qforms::{enumerate_forms, isometry_search, MetricGroup, QuadForm, QZ};

/// Largest `|A|` accepted by [`enumerate_pointed`].
pub const ENUMERATION_LIMIT: u64 = 4;

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order `n`, in invariant-factor form.
pub fn abelian_groups_of_order(n: u64) -> Vec<FinAbGroup> {
    let mut prime_powers: Vec<(u64, u32)> = vec![];
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            prime_powers.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        prime_powers.push((m, 1));
    }
    let mut combos: Vec<Vec<i64>> = vec![vec![]];
    for (p, e) in prime_powers {
        let mut next = vec![];
        for c in &combos {
            for part in partitions(e, e) {
                let mut c2 = c.clone();
                c2.extend(part.iter().map(|&k| p.pow(k) as i64));
                next.push(c2);
            }
        }
        combos = next;
    }
    combos.iter().map(|c| canonical_from_moduli(c)).collect()
}

fn form_census(q: &QuadForm) -> BTreeMap<(u64, QZ), u64> {
    let a = q.group();
    let mut m = BTreeMap::new();
    for x in a.elements() {
        *m.entry((a.order_of(&x), q.q(&x))).or_insert(0) += 1;
    }
    m
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Isometry classes of nondegenerate forms on `c`; each represented by its
/// lexicographically least JSON encoding.
fn form_classes(c: &FinAbGroup) -> Result<Vec<QuadForm>> {
    struct Class {
        key: BTreeMap<(u64, QZ), u64>,
        pivot: QuadForm,
        best: (String, QuadForm),
    }
    let mut classes: Vec<Class> = vec![];
    for f in enumerate_forms(c, true)? {
        let key = form_census(&f);
        let mut placed = false;
        for cl in classes.iter_mut().filter(|cl| cl.key == key) {
            if isometry_search(&cl.pivot, &f, &[])?.is_some() {
                let j = json(&f);
                if j < cl.best.0 {
                    cl.best = (j, f.clone());
                }
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(Class {
                key,
                pivot: f.clone(),
                best: (json(&f), f),
            });
        }
    }
    Ok(classes.into_iter().map(|c| c.best.1).collect())
}

/// All embeddings `ι: Â → C` satisfying the minimal-extension conditions.
pub fn valid_embeddings(base: &BaseCategory, cat: &MetricGroup) -> Result<Vec<MinExt>> {
    let a = base.group();
    let c = cat.group();
    let qt = base.q_t();
    let cands: Vec<Vec<GroupElt>> = (0..a.rank())
        .map(|i| {
            let e = a.basis(i);
            let (n, target) = (a.moduli()[i], qt.q(&e));
            c.elements()
                .filter(|y| c.scale(y, n).is_zero() && cat.q(y) == target)
                .collect()
        })
        .collect();
    let mut out = vec![];
    let mut stack: Vec<GroupElt> = vec![];
    fn rec(
        i: usize,
        stack: &mut Vec<GroupElt>,
        cands: &[Vec<GroupElt>],
        base: &BaseCategory,
        cat: &MetricGroup,
        out: &mut Vec<MinExt>,
    ) -> Result<()> {
        if i == cands.len() {
            let iota = GroupHom::from_images(base.group().clone(), cat.group().clone(), stack)?;
            if let Ok(m) = MinExt::new(base.clone(), cat.clone(), iota) {
                out.push(m);
            }
            return Ok(());
        }
        for y in &cands[i] {
            if stack.iter().all(|x| cat.b(x, y).is_zero()) {
                stack.push(y.clone());
                rec(i + 1, stack, cands, base, cat, out)?;
                stack.pop();
            }
        }
        Ok(())
    }
    rec(0, &mut stack, &cands, base, cat, &mut out)?;
    Ok(out)
}

/// Representatives of all equivalence classes of pointed minimal extensions
/// of `base` (requires `|A| ≤ 4`). Within a class the representative has the
/// lexicographically least JSON form, then the least embedding matrix.
pub fn enumerate_pointed(base: &BaseCategory) -> Result<Vec<MinExt>> {
    let a = base.group();
    if a.order() > ENUMERATION_LIMIT {
        return Err(MextError::SizeGuard {
            what: "base group for enumeration",
            size: a.order(),
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut reps = vec![];
    for c in abelian_groups_of_order(a.order() * a.order()) {
        for f in form_classes(&c)? {
            let cat = MetricGroup::new(f)?;
            let mut classes: Vec<(MinExt, String, MinExt)> = vec![];
            for m in valid_embeddings(base, &cat)? {
                let j = json(&m.iota().matrix().to_vec());
                let mut placed = false;
                for (pivot, best_j, best) in classes.iter_mut() {
                    if pivot.is_equivalent(&m)? {
                        if j < *best_j {
                            *best_j = j.clone();
                            *best = m.clone();
                        }
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    classes.push((m.clone(), j, m));
                }
            }
            reps.extend(classes.into_iter().map(|(_, _, best)| best));
        }
    }
    Ok(reps)
}

/// Index of the representative equivalent to `m`.
pub fn identify(m: &MinExt, reps: &[MinExt]) -> Result<usize> {
    for (i, r) in reps.iter().enumerate() {
        if r.is_equivalent(m)? {
            return Ok(i);
        }
    }
    Err(MextError::Invariant("extension not equivalent to any listed class".into()))
}

/// `table[i][j]` is the index of `reps[i] ⊡ reps[j]`.
pub fn cayley_table(reps: &[MinExt]) -> Result<Vec<Vec<usize>>> {
    reps.iter()
        .map(|x| {
            reps.iter()
                .map(|y| identify(&x.product(y)?, reps))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Isomorphism type of the finite abelian group given by a Cayley table,
/// after checking it is one (identity, inverses, commutativity, associativity).
pub fn group_from_table(table: &[Vec<usize>], identity: usize) -> Result<FinAbGroup> {
    let n = table.len();
    let bad = |what: &str| Err(MextError::Invariant(format!("product table: {what}")));
    for i in 0..n {
        if table[identity][i] != i || table[i][identity] != i {
            return bad("identity law fails");
        }
        if !(0..n).any(|j| table[i][j] == identity) {
            return bad("missing inverse");
        }
        for j in 0..n {
            if table[i][j] != table[j][i] {
                return bad("not commutative");
            }
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return bad("not associative");
                }
            }
        }
    }
    let mut census = BTreeMap::new();
    for i in 0..n {
        let (mut x, mut ord) = (i, 1u64);
        while x != identity {
            x = table[x][i];
            ord += 1;
        }
        *census.entry(ord).or_insert(0u64) += 1;
    }
    group_from_census(&census)
}
