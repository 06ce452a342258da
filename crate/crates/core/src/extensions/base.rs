use serde::{Deserialize, Serialize};

use crate::abelian::{is_split, FinAbGroup, GroupElt, GroupHom, Subgroup};
use crate::error::{MextError, Result};
use crate::qforms::{pairing, QuadForm, QZ};

/// `Rep(A, t)`: a finite abelian group with an element `t`, `2t = 0`.
/// `t = 0` is the Tannakian case.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBase")]
pub struct BaseCategory {
    #[serde(rename = "A")]
    a: FinAbGroup,
    t: GroupElt,
}

#[derive(Deserialize)]
struct RawBase {
    #[serde(rename = "A")]
    a: FinAbGroup,
    t: GroupElt,
}

impl TryFrom<RawBase> for BaseCategory {
    type Error = MextError;
    fn try_from(r: RawBase) -> Result<Self> {
        BaseCategory::new(r.a, r.t)
    }
}

impl BaseCategory {
    pub fn new(a: FinAbGroup, t: GroupElt) -> Result<Self> {
        a.check(&t)?;
        let o = a.order_of(&t);
        if o > 2 {
            return Err(MextError::NotOrderTwo(o));
        }
        Ok(BaseCategory { a, t })
    }

    /// `sVect = Rep(Z_2, 1)`.
    pub fn svect() -> Self {
        let a = FinAbGroup::new(vec![2]).expect("Z2");
        BaseCategory::new(a, GroupElt::new(vec![1])).expect("order 2")
    }

    /// `Rep(Z_{2^n}^f)`, with `t = 2^{n-1}`.
    pub fn cyclic_fermionic(n: u32) -> Result<Self> {
        if n == 0 || n > 15 {
            return Err(MextError::Range(format!("n = {n} (need 1 ≤ n ≤ 15)")));
        }
        let a = FinAbGroup::new(vec![1 << n])?;
        BaseCategory::new(a, GroupElt::new(vec![1 << (n - 1)]))
    }

    /// `Rep(Z_2 × Z_2^f)`, with `t = (0, 1)`.
    pub fn z2_z2f() -> Self {
        let a = FinAbGroup::new(vec![2, 2]).expect("Z2²");
        BaseCategory::new(a, GroupElt::new(vec![0, 1])).expect("order 2")
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.a
    }

    /// The character group `Â`, presented with the same moduli.
    pub fn dual(&self) -> &FinAbGroup {
        &self.a
    }

    pub fn t(&self) -> &GroupElt {
        &self.t
    }

    pub fn is_tannakian(&self) -> bool {
        self.t.is_zero()
    }

    /// `⟨t⟩` is a direct summand (false in the Tannakian case).
    pub fn is_split(&self) -> bool {
        !self.is_tannakian() && is_split(&self.a, &self.t).expect("t has order 2")
    }

    /// `q_t(φ) = ⟨t, φ⟩` on `Â`.
    pub fn q_t(&self) -> QuadForm {
        let diag = self
            .a
            .moduli()
            .iter()
            .zip(&self.t.coords)
            .map(|(&n, &t)| QZ::new(t, n))
            .collect();
        QuadForm::diagonal(&self.a, diag).expect("a 2-torsion character is quadratic")
    }

    pub fn pair(&self, x: &GroupElt, phi: &GroupElt) -> QZ {
        pairing(&self.a, x, phi)
    }

    /// `{φ ∈ Â : ⟨t, φ⟩ = 0}`.
    pub fn tannakian_part(&self) -> Subgroup {
        let z2 = FinAbGroup::new(vec![2]).expect("Z2");
        let row: Vec<i64> = self
            .a
            .moduli()
            .iter()
            .zip(&self.t.coords)
            .map(|(&n, &t)| 2 * t / n)
            .collect();
        GroupHom::new(self.a.clone(), z2, vec![row])
            .expect("φ ↦ ⟨t, φ⟩ is a character")
            .kernel()
    }

    /// Parses `--group "2,2" --t "0,1"` style input.
    pub fn parse(group: &str, t: &str) -> Result<Self> {
        let a = FinAbGroup::parse(group)?;
        let t = a.parse_elt(t)?;
        BaseCategory::new(a, t)
    }
}
