use serde::{Deserialize, Serialize};

use super::cohomology::h3_group;
use super::kappa::kappa_cokernel;
use super::theta::theta_kernel;
use crate::abelian::{canonical_from_moduli, wedge_power, FinAbGroup};
use crate::error::Result;
use crate::extensions::BaseCategory;

/// Factors of `Mext_triv ⊂ Mext_pt ⊂ Mext_int ⊂ Mext` for a super-Tannakian base.
/// Only the factors and the total order are claimed, not the extension class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub triv: FinAbGroup,
    pub pt_over_triv: FinAbGroup,
    pub int_over_pt: FinAbGroup,
    pub top: FinAbGroup,
    #[serde(rename = "order")]
    pub total_order: u64,
    pub split: bool,
}

/// `Mext(Rep(A)) ≅ H³(A, k^×)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TannakianReport {
    #[serde(rename = "H3")]
    pub h3: FinAbGroup,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Factors {
    SuperTannakian(FactorReport),
    Tannakian(TannakianReport),
}

impl Factors {
    pub fn order(&self) -> u64 {
        match self {
            Factors::SuperTannakian(r) => r.total_order,
            Factors::Tannakian(r) => r.order,
        }
    }

    pub fn super_tannakian(&self) -> Option<&FactorReport> {
        match self {
            Factors::SuperTannakian(r) => Some(r),
            Factors::Tannakian(_) => None,
        }
    }
}

pub fn mext_factors(base: &BaseCategory) -> Result<Factors> {
    let a = base.group();
    if base.is_tannakian() {
        let h3 = h3_group(a);
        return Ok(Factors::Tannakian(TannakianReport { order: h3.order(), h3 }));
    }
    let triv = kappa_cokernel(base)?.cokernel;
    let pt_over_triv = theta_kernel(base)?.kernel;
    let int_over_pt = wedge_power(a, 3)?;
    let split = base.is_split();
    let top = if split {
        let r = a.moduli().iter().filter(|&&n| n % 2 == 0).count();
        canonical_from_moduli(&vec![2; r])
    } else {
        FinAbGroup::trivial()
    };
    let total_order = triv.order() * pt_over_triv.order() * int_over_pt.order() * top.order();
    Ok(Factors::SuperTannakian(FactorReport {
        triv,
        pt_over_triv,
        int_over_pt,
        top,
        total_order,
        split,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::GroupElt;

    fn report(m: &[i64], t: &[i64]) -> FactorReport {
        let b = BaseCategory::new(FinAbGroup::new(m.to_vec()).unwrap(), GroupElt::new(t.to_vec())).unwrap();
        mext_factors(&b).unwrap().super_tannakian().unwrap().clone()
    }

    fn moduli(g: &FinAbGroup) -> Vec<i64> {
        g.moduli().to_vec()
    }

    #[test]
    fn examples() {
        let s = report(&[2], &[1]);
        assert_eq!(
            [moduli(&s.triv), moduli(&s.pt_over_triv), moduli(&s.int_over_pt), moduli(&s.top)],
            [vec![4], vec![2], vec![], vec![2]]
        );
        assert_eq!(s.total_order, 16);
        let z = report(&[2, 2], &[0, 1]);
        assert_eq!(
            [moduli(&z.triv), moduli(&z.pt_over_triv), moduli(&z.int_over_pt), moduli(&z.top)],
            [vec![2, 4], vec![2, 2], vec![], vec![2, 2]]
        );
        assert_eq!(z.total_order, 128);
        let c = report(&[4], &[2]);
        assert_eq!(c.total_order, 8);
        assert!(!c.split);
        assert_eq!(moduli(&report(&[2, 2, 2], &[0, 0, 1]).int_over_pt), vec![2]);
        for n in 2..=4u32 {
            let b = BaseCategory::cyclic_fermionic(n).unwrap();
            assert_eq!(mext_factors(&b).unwrap().order(), 1 << (n + 1));
        }
    }

    #[test]
    fn tannakian_branch() {
        let b = BaseCategory::new(FinAbGroup::new(vec![2, 2]).unwrap(), GroupElt::new(vec![0, 0])).unwrap();
        let f = mext_factors(&b).unwrap();
        assert!(f.super_tannakian().is_none());
        assert_eq!(f.order(), 8);
    }

    #[test]
    fn json_keys() {
        let v: serde_json::Value = serde_json::to_value(report(&[2], &[1])).unwrap();
        for k in ["triv", "pt_over_triv", "int_over_pt", "top", "order", "split"] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }
}
