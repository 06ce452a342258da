use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::form::QuadForm;
use super::qz::QZ;
use crate::abelian::{FinAbGroup, GroupElt, Quotient, Subgroup};
use crate::error::{MextError, Result};

/// A finite abelian group with a nondegenerate quadratic form. Serialized
/// exactly like its [`QuadForm`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadForm", into = "QuadForm")]
pub struct MetricGroup {
    form: QuadForm,
}

impl TryFrom<QuadForm> for MetricGroup {
    type Error = MextError;
    fn try_from(f: QuadForm) -> Result<Self> {
        MetricGroup::new(f)
    }
}

impl From<MetricGroup> for QuadForm {
    fn from(m: MetricGroup) -> QuadForm {
        m.form
    }
}

/// `σ = Σ_x e^{2πi q(x)}` in floating point, with the exact value of `|σ|²`.
#[derive(Clone, Copy, Debug)]
pub struct GaussSum {
    pub value: Complex64,
    pub abs_sq: u64,
}

/// `σ(q)` for any (possibly degenerate) form. The floating-point sum is
/// checked against `|σ|² = |A|·|R|` when `q` vanishes on the radical `R`, `0` otherwise.
pub fn gauss_sum_of(q: &QuadForm) -> Result<GaussSum> {
    let a = q.group();
    let value: Complex64 = a
        .elements()
        .map(|x| Complex64::from_polar(1.0, 2.0 * PI * q.q(&x).to_f64()))
        .sum();
    let rad = q.radical();
    let on_rad_zero = rad.gens().iter().all(|x| q.q(x).is_zero());
    let abs_sq = if on_rad_zero { a.order() * rad.order() } else { 0 };
    let tol = 1e-7 * (a.order() as f64).max(1.0);
    if (value.norm_sqr() - abs_sq as f64).abs() > tol {
        return Err(MextError::Internal(format!(
            "Gauss sum {value} disagrees with exact |σ|² = {abs_sq}"
        )));
    }
    Ok(GaussSum { value, abs_sq })
}

impl MetricGroup {
    pub fn new(form: QuadForm) -> Result<Self> {
        let rad = form.radical();
        if !rad.is_trivial() {
            return Err(MextError::Degenerate(format!(
                "radical of order {} generated by {:?}",
                rad.order(),
                rad.gens().iter().map(|x| &x.coords).collect::<Vec<_>>()
            )));
        }
        Ok(MetricGroup { form })
    }

    pub fn group(&self) -> &FinAbGroup {
        self.form.group()
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    pub fn order(&self) -> u64 {
        self.group().order()
    }

    pub fn q(&self, x: &GroupElt) -> QZ {
        self.form.q(x)
    }

    pub fn b(&self, x: &GroupElt, y: &GroupElt) -> QZ {
        self.form.b(x, y)
    }

    pub fn direct_sum(&self, other: &MetricGroup) -> MetricGroup {
        MetricGroup {
            form: self.form.direct_sum(&other.form),
        }
    }

    /// Same group, negated form.
    pub fn reverse(&self) -> MetricGroup {
        MetricGroup {
            form: self.form.negate(),
        }
    }

    pub fn gauss_sum(&self) -> Result<GaussSum> {
        let s = gauss_sum_of(&self.form)?;
        if s.abs_sq != self.order() {
            return Err(MextError::Degenerate(format!(
                "|σ|² = {} but |A| = {}",
                s.abs_sq,
                self.order()
            )));
        }
        Ok(s)
    }

    /// The `k mod 8` with `σ/√|A| = e^{2πik/8}`.
    pub fn central_charge(&self) -> Result<u8> {
        let s = self.gauss_sum()?;
        let z = s.value / (self.order() as f64).sqrt();
        (0..8u8)
            .find(|&k| (z - Complex64::from_polar(1.0, PI * k as f64 / 4.0)).norm() < 1e-6)
            .ok_or_else(|| {
                MextError::Internal(format!("normalized Gauss sum {z} is not an 8th root of unity"))
            })
    }

    pub fn orthogonal_complement(&self, h: &Subgroup) -> Subgroup {
        self.form.perp(h)
    }

    /// `H^⊥/H` with the induced form.
    pub fn condense(&self, h: &Subgroup) -> Result<Condensed> {
        if h.ambient() != self.group() {
            return Err(MextError::GroupMismatch("subgroup of another group".into()));
        }
        let hg = h.gens();
        for (i, x) in hg.iter().enumerate() {
            if !self.q(x).is_zero() || hg[..i].iter().any(|y| !self.b(x, y).is_zero()) {
                return Err(MextError::NotIsotropic);
            }
        }
        let k = self.orthogonal_complement(h);
        let quot = Quotient::new(&k, h)?;
        let lifts = quot.lifts();
        let r = lifts.len();
        let diag: Vec<QZ> = lifts.iter().map(|l| self.q(l)).collect();
        let mut cross = vec![];
        for i in 0..r {
            for j in i + 1..r {
                cross.push(self.b(&lifts[i], &lifts[j]));
            }
        }
        let form = QuadForm::new(quot.group().clone(), diag, cross)?;
        let a = self.group();
        for l in lifts {
            for y in &hg {
                if self.q(&a.add(l, y)) != self.q(l) {
                    return Err(MextError::Internal("induced form depends on the coset representative".into()));
                }
            }
        }
        if quot.group().order() <= 4096 {
            for z in quot.group().elements() {
                if form.q(&z) != self.q(&quot.lift(&z)) {
                    return Err(MextError::Internal("induced form is not the restriction".into()));
                }
            }
        }
        Ok(Condensed {
            metric: MetricGroup::new(form)?,
            quotient: quot,
        })
    }
}

/// Result of [`MetricGroup::condense`].
#[derive(Clone, Debug)]
pub struct Condensed {
    pub metric: MetricGroup,
    /// `H^⊥ → H^⊥/H`, with lifts.
    pub quotient: Quotient,
}

impl Condensed {
    pub fn project(&self, x: &GroupElt) -> Result<GroupElt> {
        self.quotient.project(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[i64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    fn q(s: &str) -> QZ {
        s.parse().unwrap()
    }

    fn metric(m: &[i64], diag: &[&str], cross: &[&str]) -> MetricGroup {
        MetricGroup::new(
            QuadForm::new(
                g(m),
                diag.iter().map(|s| q(s)).collect(),
                cross.iter().map(|s| q(s)).collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn gauss_examples() {
        let triv = metric(&[], &[], &[]);
        assert!(close(triv.gauss_sum().unwrap().value, Complex64::new(1.0, 0.0)));
        let z4 = metric(&[4], &["1/8"], &[]);
        let xi = Complex64::from_polar(1.0, PI / 4.0);
        assert!(close(z4.gauss_sum().unwrap().value, xi * 2.0));
        let z2 = metric(&[2], &["1/4"], &[]);
        assert!(close(z2.gauss_sum().unwrap().value, Complex64::new(1.0, 1.0)));
    }

    #[test]
    fn charge_examples() {
        assert_eq!(metric(&[2, 2], &["0", "0"], &["1/2"]).central_charge().unwrap(), 0);
        assert_eq!(metric(&[4], &["1/8"], &[]).central_charge().unwrap(), 1);
        assert_eq!(metric(&[4], &["7/8"], &[]).central_charge().unwrap(), 7);
        assert_eq!(metric(&[2, 2], &["1/2", "1/2"], &["1/2"]).central_charge().unwrap(), 4);
    }

    #[test]
    fn degenerate_rejected() {
        let f = QuadForm::zero(&g(&[2]));
        assert!(matches!(MetricGroup::new(f.clone()), Err(MextError::Degenerate(_))));
        assert_eq!(gauss_sum_of(&f).unwrap().abs_sq, 4);
        let f = QuadForm::diagonal(&g(&[2]), vec![q("1/2")]).unwrap();
        assert_eq!(gauss_sum_of(&f).unwrap().abs_sq, 0);
    }

    #[test]
    fn condense_examples() {
        let hyp = metric(&[2, 2], &["0", "0"], &["1/2"]);
        let a = hyp.group().clone();
        let c = hyp.condense(&Subgroup::trivial(&a)).unwrap();
        assert_eq!(c.metric.order(), 4);
        let h = Subgroup::generated(&a, &[a.elt(&[1, 0]).unwrap()]);
        assert_eq!(hyp.orthogonal_complement(&h), h);
        let c = hyp.condense(&h).unwrap();
        assert!(c.metric.group().is_trivial());
        let bad = Subgroup::generated(&a, &[a.elt(&[1, 1]).unwrap()]);
        assert!(matches!(hyp.condense(&bad), Err(MextError::NotIsotropic)));
    }

    #[test]
    fn condense_z16() {
        let m = metric(&[16], &["1/32"], &[]);
        let a = m.group().clone();
        let h = Subgroup::generated(&a, &[a.elt(&[8]).unwrap()]);
        // q(8) = 64/32 = 0
        let c = m.condense(&h).unwrap();
        assert_eq!(c.metric.order(), 4);
        let s1 = m.gauss_sum().unwrap().value;
        let s2 = c.metric.gauss_sum().unwrap().value;
        assert!(close(s2, s1 / 2.0));
    }

    #[test]
    fn json_is_the_form() {
        let m = metric(&[4], &["1/8"], &[]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"group":{"moduli":[4]},"diag":["1/8"],"cross":[]}"#);
        assert_eq!(serde_json::from_str::<MetricGroup>(&s).unwrap(), m);
        assert!(serde_json::from_str::<MetricGroup>(
            r#"{"group":{"moduli":[2]},"diag":["0"],"cross":[]}"#
        )
        .is_err());
    }
}
