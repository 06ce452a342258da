use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupElt};
use crate::error::{MextError, Result};
use crate::extensions::BaseCategory;
use crate::qforms::{BilForm, QZ};

/// A class in `H²(A, k^×) ≅ Hom(∧²A, Q/Z)`, stored as its commutator form
/// `β(x, y) = μ(x, y) − μ(y, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BilForm", into = "BilForm")]
pub struct AltForm2 {
    beta: BilForm,
}

impl TryFrom<BilForm> for AltForm2 {
    type Error = MextError;
    fn try_from(b: BilForm) -> Result<Self> {
        AltForm2::new(b)
    }
}

impl From<AltForm2> for BilForm {
    fn from(a: AltForm2) -> BilForm {
        a.beta
    }
}

impl AltForm2 {
    pub fn new(beta: BilForm) -> Result<Self> {
        if !beta.is_alternating() {
            return Err(MextError::InvalidForm("form is not alternating".into()));
        }
        Ok(AltForm2 { beta })
    }

    pub fn zero(a: &FinAbGroup) -> Self {
        AltForm2 { beta: BilForm::zero(a) }
    }

    /// `β(e_i, e_j) = c / gcd(n_i, n_j) = −β(e_j, e_i)` for `i < j`, zero elsewhere.
    pub fn from_upper(a: &FinAbGroup, upper: &[i64]) -> Result<Self> {
        let n = a.moduli();
        let r = a.rank();
        if upper.len() != r * r.saturating_sub(1) / 2 {
            return Err(MextError::Range("wrong number of ∧² coefficients".into()));
        }
        let mut m = vec![vec![QZ::ZERO; r]; r];
        let mut k = 0;
        for i in 0..r {
            for j in i + 1..r {
                let v = QZ::new(upper[k], gcd(n[i], n[j]));
                m[i][j] = v;
                m[j][i] = -v;
                k += 1;
            }
        }
        AltForm2::new(BilForm::new(a.clone(), m)?)
    }

    /// Every alternating form on `a`, in lexicographic order of coefficients.
    pub fn all(a: &FinAbGroup) -> Vec<AltForm2> {
        let n = a.moduli();
        let r = a.rank();
        let mut mods = vec![];
        for i in 0..r {
            for j in i + 1..r {
                mods.push(gcd(n[i], n[j]));
            }
        }
        let g = FinAbGroup::new(mods).expect("∧² has small exponent");
        g.elements()
            .map(|c| AltForm2::from_upper(a, &c.coords).expect("in range"))
            .collect()
    }

    pub fn group(&self) -> &FinAbGroup {
        self.beta.group()
    }

    pub fn form(&self) -> &BilForm {
        &self.beta
    }

    pub fn eval(&self, x: &GroupElt, y: &GroupElt) -> QZ {
        self.beta.eval(x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.beta.matrix().iter().flatten().all(|v| v.is_zero())
    }

    /// `ξ_β(x) ∈ Z/2`, defined by `(−1)^ξ = μ(x, t)/μ(t, x)`.
    pub fn xi(&self, base: &BaseCategory, x: &GroupElt) -> u8 {
        let v = self.eval(x, base.t());
        v.numerator_over(2).expect("β(x, t) is killed by 2") as u8
    }

    /// `β₁ ⊛ β₂ = β₁ + β₂ + ½(ξ₁ ⊗ ξ₂ − ξ₂ ⊗ ξ₁)`.
    pub fn star(&self, other: &AltForm2, base: &BaseCategory) -> Result<AltForm2> {
        let a = self.group();
        if a != other.group() || a != base.group() {
            return Err(MextError::GroupMismatch("⊛ of forms on different groups".into()));
        }
        let r = a.rank();
        let x1: Vec<i64> = (0..r).map(|i| self.xi(base, &a.basis(i)) as i64).collect();
        let x2: Vec<i64> = (0..r).map(|i| other.xi(base, &a.basis(i)) as i64).collect();
        let sum = self.beta.add(&other.beta)?;
        let m = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| sum.at(i, j) + QZ::new(x1[i] * x2[j] - x1[j] * x2[i], 2))
                    .collect()
            })
            .collect();
        AltForm2::new(BilForm::new(a.clone(), m)?)
    }

    /// `k`-fold `⊛`-power (`k ≥ 0`).
    pub fn star_power(&self, k: i64, base: &BaseCategory) -> Result<AltForm2> {
        let mut acc = AltForm2::zero(self.group());
        for _ in 0..k {
            acc = acc.star(self, base)?;
        }
        Ok(acc)
    }

    /// `Q_E(β, z) ∈ Â`: the character `y ↦ β(w, y)` with `w = z + (ξ_β(z) + 1) t`.
    pub fn q_e(&self, base: &BaseCategory, z: &GroupElt) -> GroupElt {
        let a = self.group();
        let w = a.add(z, &a.scale(base.t(), self.xi(base, z) as i64 + 1));
        let n = a.moduli();
        GroupElt::new(
            (0..a.rank())
                .map(|j| self.eval(&w, &a.basis(j)).numerator_over(n[j]).expect("character value"))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(m: &[i64], t: &[i64]) -> BaseCategory {
        BaseCategory::new(FinAbGroup::new(m.to_vec()).unwrap(), GroupElt::new(t.to_vec())).unwrap()
    }

    #[test]
    fn star_is_a_group_law() {
        for b in [base(&[2, 2], &[0, 1]), base(&[2, 4], &[1, 2]), base(&[2, 2, 2], &[0, 0, 1])] {
            let forms = AltForm2::all(b.group());
            let zero = AltForm2::zero(b.group());
            for f in &forms {
                assert_eq!(f.star(&zero, &b).unwrap(), *f);
                assert!(f.star(&AltForm2::new(f.form().negate()).unwrap(), &b).unwrap().is_zero());
                for g in &forms {
                    let fg = f.star(g, &b).unwrap();
                    assert_eq!(fg, g.star(f, &b).unwrap());
                    for x in b.group().elements() {
                        assert_eq!(fg.xi(&b, &x), (f.xi(&b, &x) + g.xi(&b, &x)) % 2);
                    }
                    for h in forms.iter().step_by(3) {
                        assert_eq!(fg.star(h, &b).unwrap(), f.star(&g.star(h, &b).unwrap(), &b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn xi_and_q_examples() {
        let b = base(&[2, 2], &[0, 1]);
        let beta = AltForm2::from_upper(b.group(), &[1]).unwrap();
        assert_eq!(beta.xi(&b, b.t()), 0);
        assert_eq!(beta.xi(&b, &b.group().basis(0)), 1);
        assert!(beta.star(&beta, &b).unwrap().is_zero());
        let zero = AltForm2::zero(b.group());
        for z in b.group().elements() {
            assert!(zero.q_e(&b, &z).is_zero());
        }
        // ξ-trivial forms multiply by ordinary addition
        let b3 = base(&[2, 2, 2], &[0, 0, 1]);
        let f = AltForm2::from_upper(b3.group(), &[1, 0, 0]).unwrap();
        let g = AltForm2::from_upper(b3.group(), &[1, 0, 0]).unwrap();
        assert_eq!(f.star(&g, &b3).unwrap().form(), &f.form().add(g.form()).unwrap());
    }
}
