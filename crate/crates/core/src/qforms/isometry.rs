use std::collections::{BTreeMap, HashMap};

use super::form::QuadForm;
use super::qz::QZ;
use crate::abelian::{GroupElt, GroupHom, Subgroup};
use crate::error::Result;
use crate::limits;

fn census(q: &QuadForm) -> BTreeMap<(u64, QZ), u64> {
    let a = q.group();
    let mut m = BTreeMap::new();
    for x in a.elements() {
        *m.entry((a.order_of(&x), q.q(&x))).or_insert(0) += 1;
    }
    m
}

/// Searches for a group isomorphism `f: A₁ → A₂` with `q₂ ∘ f = q₁` and
/// `f(x) = y` for every pinned pair. Generators of `A₁` are assigned in order,
/// candidates tried in lexicographic order, so the result is deterministic.
pub fn isometry_search(
    q1: &QuadForm,
    q2: &QuadForm,
    pinned: &[(GroupElt, GroupElt)],
) -> Result<Option<GroupHom>> {
    let (a1, a2) = (q1.group(), q2.group());
    let limit = limits::metric_limit();
    limits::check("metric group for isometry search", a1.order().max(a2.order()), limit)?;
    for (x, y) in pinned {
        a1.check(x)?;
        a2.check(y)?;
    }
    if a1.order() != a2.order() || census(q1) != census(q2) {
        return Ok(None);
    }
    let r = a1.rank();
    let mut buckets: HashMap<(u64, QZ), Vec<GroupElt>> = HashMap::new();
    for y in a2.elements() {
        buckets.entry((a2.order_of(&y), q2.q(&y))).or_default().push(y);
    }
    let empty = vec![];
    let cands: Vec<&Vec<GroupElt>> = (0..r)
        .map(|i| {
            let e = a1.basis(i);
            buckets.get(&(a1.order_of(&e), q1.q(&e))).unwrap_or(&empty)
        })
        .collect();

    // Pins become checkable once their last nonzero coordinate is assigned.
    let mut pins_at: Vec<Vec<usize>> = vec![vec![]; r];
    for (p, (x, y)) in pinned.iter().enumerate() {
        match (0..r).rev().find(|&i| x.coords[i] != 0) {
            Some(i) => pins_at[i].push(p),
            None => {
                if !y.is_zero() {
                    return Ok(None);
                }
            }
        }
    }

    let b1: Vec<Vec<QZ>> = (0..r).map(|i| (0..r).map(|j| q1.b_gen(i, j)).collect()).collect();
    let mut imgs: Vec<GroupElt> = Vec::with_capacity(r);
    let mut choice = vec![0usize; r];
    let mut level = 0usize;
    loop {
        if level == r {
            if Subgroup::generated(a2, &imgs).order() == a2.order() {
                return GroupHom::from_images(a1.clone(), a2.clone(), &imgs).map(Some);
            }
            // Not surjective: keep searching.
            level -= 1;
            imgs.pop();
            choice[level] += 1;
            continue;
        }
        let mut found = false;
        while choice[level] < cands[level].len() {
            let y = &cands[level][choice[level]];
            let ok_b = (0..level).all(|j| q2.b(y, &imgs[j]) == b1[level][j]);
            let ok_pins = ok_b
                && pins_at[level].iter().all(|&p| {
                    let (x, target) = &pinned[p];
                    let mut acc = a2.zero();
                    for k in 0..level {
                        acc = a2.add(&acc, &a2.scale(&imgs[k], x.coords[k]));
                    }
                    acc = a2.add(&acc, &a2.scale(y, x.coords[level]));
                    &acc == target
                });
            if ok_pins {
                found = true;
                break;
            }
            choice[level] += 1;
        }
        if found {
            imgs.push(cands[level][choice[level]].clone());
            level += 1;
            if level < r {
                choice[level] = 0;
            }
        } else {
            if level == 0 {
                return Ok(None);
            }
            level -= 1;
            imgs.pop();
            choice[level] += 1;
        }
    }
}

/// True when `f` is a bijective homomorphism carrying `q1` to `q2`.
pub fn is_isometry(f: &GroupHom, q1: &QuadForm, q2: &QuadForm) -> bool {
    f.source() == q1.group()
        && f.target() == q2.group()
        && f.is_injective()
        && q1.group().order() == q2.group().order()
        && q1.group().elements().all(|x| q2.q(&f.apply(&x)) == q1.q(&x))
}
