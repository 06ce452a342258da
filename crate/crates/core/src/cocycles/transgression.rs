use super::cocycle3::Cocycle3;
use super::trilinear::Trilinear;
use crate::abelian::{FinAbGroup, GroupElt};
use crate::error::{MextError, Result};
use crate::extensions::BaseCategory;
use crate::filtration::AltForm2;
use crate::limits;
use crate::qforms::{BilForm, QZ};

/// Largest `|A|` for which 2-cochain tables are built.
pub const MU_LIMIT: u64 = 32;
/// Most generator choices [`integral_assignments`] will try.
pub const ASSIGNMENT_LIMIT: u64 = 1 << 16;

/// A normalized 2-cochain `A × A → Q/Z` as a full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    group: FinAbGroup,
    table: Vec<QZ>,
}

impl Cochain2 {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn at(&self, x: &GroupElt, y: &GroupElt) -> QZ {
        let s = self.group.order() as usize;
        self.table[self.group.index_of(x) * s + self.group.index_of(y)]
    }

    pub fn is_cocycle(&self) -> bool {
        let a = &self.group;
        let els: Vec<GroupElt> = a.elements().collect();
        els.iter().all(|x| {
            els.iter().all(|y| {
                let xy = a.add(x, y);
                els.iter().all(|z| {
                    let d = self.at(y, z) - self.at(&xy, z) + self.at(x, &a.add(y, z)) - self.at(x, y);
                    d.is_zero()
                })
            })
        })
    }

    /// The commutator form `(y, z) ↦ μ(y, z) − μ(z, y)`, checked to be bilinear.
    pub fn alt_form(&self) -> Result<AltForm2> {
        let a = &self.group;
        let r = a.rank();
        let m = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| self.at(&a.basis(i), &a.basis(j)) - self.at(&a.basis(j), &a.basis(i)))
                    .collect()
            })
            .collect();
        let beta = AltForm2::new(BilForm::new(a.clone(), m)?)?;
        for y in a.elements() {
            for z in a.elements() {
                if beta.eval(&y, &z) != self.at(&y, &z) - self.at(&z, &y) {
                    return Err(MextError::Invariant("commutator form is not bilinear".into()));
                }
            }
        }
        Ok(beta)
    }
}

/// `μ_x(y, z) = ω(x, y, z) + ω(y, z, x) − ω(y, x, z)`.
pub fn mu_from_omega(w: &Cocycle3, x: &GroupElt) -> Result<Cochain2> {
    let a = w.group();
    limits::check("group for 2-cochain tables", a.order(), MU_LIMIT)?;
    a.check(x)?;
    let els: Vec<GroupElt> = a.elements().collect();
    let mut table = Vec::with_capacity(els.len() * els.len());
    for y in &els {
        for z in &els {
            table.push(w.eval(x, y, z) + w.eval(y, z, x) - w.eval(y, x, z));
        }
    }
    Ok(Cochain2 {
        group: a.clone(),
        table,
    })
}

/// `τ(x, y, z) = ½ ξ_{μ_x}(y) ξ_{μ_x}(z) + μ_x(y, z) − μ_x(z, y)`, with
/// `assignment[i]` the class `μ_x` of the `i`-th element of `A`.
pub fn tau_direct(assignment: &[AltForm2], base: &BaseCategory, x: &GroupElt, y: &GroupElt, z: &GroupElt) -> QZ {
    let mu = &assignment[base.group().index_of(x)];
    QZ::new(i64::from(mu.xi(base, y) * mu.xi(base, z)), 2) + mu.eval(y, z)
}

fn check_assignment(assignment: &[AltForm2], base: &BaseCategory) -> Result<()> {
    let a = base.group();
    if assignment.len() as u64 != a.order() || assignment.iter().any(|m| m.group() != a) {
        return Err(MextError::Range("assignment must list one form on A per element of A".into()));
    }
    Ok(())
}

/// `μ_{x+y} = μ_x ⊛ μ_y` for all `x, y`.
fn is_additive(assignment: &[AltForm2], base: &BaseCategory) -> Result<bool> {
    let a = base.group();
    for x in a.elements() {
        for y in a.elements() {
            let lhs = &assignment[a.index_of(&a.add(&x, &y))];
            let rhs = assignment[a.index_of(&x)].star(&assignment[a.index_of(&y)], base)?;
            if *lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn tau_from_mu(assignment: &[AltForm2], base: &BaseCategory) -> Result<Trilinear> {
    check_assignment(assignment, base)?;
    let a = base.group();
    limits::check("group for τ", a.order(), 2 * MU_LIMIT)?;
    if !is_additive(assignment, base)? {
        return Err(MextError::Invariant("x ↦ μ_x is not additive for ⊛".into()));
    }
    let tau = Trilinear::from_generators(a, |x, y, z| tau_direct(assignment, base, x, y, z))?;
    for x in a.elements() {
        for y in a.elements() {
            for z in a.elements() {
                if tau.eval(&x, &y, &z) != tau_direct(assignment, base, &x, &y, &z) {
                    return Err(MextError::Invariant(format!(
                        "τ is not trilinear at {:?}, {:?}, {:?}",
                        x.coords, y.coords, z.coords
                    )));
                }
            }
        }
    }
    if !tau.is_t_alternating(base) {
        return Err(MextError::Invariant(
            "τ is not t-alternating (the assignment violates the Q condition)".into(),
        ));
    }
    Ok(tau)
}

/// `Q_E(μ_x, x) = 0` for every `x`.
pub fn satisfies_q_condition(assignment: &[AltForm2], base: &BaseCategory) -> bool {
    let a = base.group();
    a.elements().all(|x| assignment[a.index_of(&x)].q_e(base, &x).is_zero())
}

/// Extends `μ_{e_i} = gens[i]` to `x ↦ μ_x` by `⊛`-additivity.
pub fn assignment_from_generators(base: &BaseCategory, gens: &[AltForm2]) -> Result<Vec<AltForm2>> {
    let a = base.group();
    if gens.len() != a.rank() {
        return Err(MextError::Range("one form per generator".into()));
    }
    for (i, g) in gens.iter().enumerate() {
        if !g.star_power(a.moduli()[i], base)?.is_zero() {
            return Err(MextError::Invariant(format!("μ_(e_{i}) has ⊛-order not dividing {}", a.moduli()[i])));
        }
    }
    let powers: Vec<Vec<AltForm2>> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut v = vec![AltForm2::zero(a)];
            for k in 1..a.moduli()[i] as usize {
                let next = v[k - 1].star(g, base)?;
                v.push(next);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    a.elements()
        .map(|x| {
            let mut acc = AltForm2::zero(a);
            for (i, p) in powers.iter().enumerate() {
                acc = acc.star(&p[x.coords[i] as usize], base)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Every `⊛`-additive `x ↦ μ_x` with `Q_E(μ_x, x) = 0`, i.e. every assignment
/// an integral extension could carry.
pub fn integral_assignments(base: &BaseCategory) -> Result<Vec<Vec<AltForm2>>> {
    let a = base.group();
    let forms = AltForm2::all(a);
    // the condition at x = e_i already restricts μ_{e_i}
    let mut cands: Vec<Vec<AltForm2>> = vec![];
    for i in 0..a.rank() {
        let e = a.basis(i);
        let mut c = vec![];
        for f in &forms {
            if f.q_e(base, &e).is_zero() && f.star_power(a.moduli()[i], base)?.is_zero() {
                c.push(f.clone());
            }
        }
        cands.push(c);
    }
    let count = cands
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .unwrap_or(u64::MAX);
    limits::check("generator choices for μ", count, ASSIGNMENT_LIMIT)?;
    // ⊛-powers of every candidate
    let mut powers: Vec<Vec<Vec<AltForm2>>> = vec![];
    for (i, c) in cands.iter().enumerate() {
        let mut per = vec![];
        for f in c {
            let mut v = vec![AltForm2::zero(a)];
            for k in 1..a.moduli()[i] as usize {
                let next = v[k - 1].star(f, base)?;
                v.push(next);
            }
            per.push(v);
        }
        powers.push(per);
    }
    let mut out = vec![];
    let span = vec![(a.zero(), AltForm2::zero(a))];
    extend_span(base, &powers, 0, span, &mut out)?;
    Ok(out)
}

/// Backtracking over generators: `span` holds `μ` on `⟨e_0, …, e_{i−1}⟩`,
/// already checked against the Q condition there.
fn extend_span(
    base: &BaseCategory,
    powers: &[Vec<Vec<AltForm2>>],
    i: usize,
    span: Vec<(GroupElt, AltForm2)>,
    out: &mut Vec<Vec<AltForm2>>,
) -> Result<()> {
    let a = base.group();
    if i == a.rank() {
        let mut asg = vec![AltForm2::zero(a); a.order() as usize];
        for (x, f) in span {
            let k = a.index_of(&x);
            asg[k] = f;
        }
        out.push(asg);
        return Ok(());
    }
    'cand: for pw in &powers[i] {
        let mut next = span.clone();
        for m in 1..a.moduli()[i] {
            for (x, f) in &span {
                let mut y = x.clone();
                y.coords[i] = m;
                let g = f.star(&pw[m as usize], base)?;
                if !g.q_e(base, &y).is_zero() {
                    continue 'cand;
                }
                next.push((y, g));
            }
        }
        extend_span(base, powers, i + 1, next, out)?;
    }
    Ok(())
}
