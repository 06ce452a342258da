use num_integer::gcd;
use serde::Serialize;

use super::factors::mext_factors;
use crate::abelian::{canonical_from_moduli, hom_group, tensor, wedge_power, FinAbGroup, GroupElt};
use crate::error::{MextError, Result};
use crate::extensions::BaseCategory;
use crate::qforms::quad_group;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyOrders {
    pub h2_order: u64,
    pub h3: FinAbGroup,
    pub quad_order: u64,
}

/// `H³(A, k^×) ≅ ⊕ Z_{n_i} ⊕ ⊕_{i<j} Z_{gcd} ⊕ ⊕_{i<j<k} Z_{gcd}`.
pub fn h3_group(a: &FinAbGroup) -> FinAbGroup {
    let n = a.moduli();
    let r = n.len();
    let mut m = n.to_vec();
    for i in 0..r {
        for j in i + 1..r {
            m.push(gcd(n[i], n[j]));
            for k in j + 1..r {
                m.push(gcd(gcd(n[i], n[j]), n[k]));
            }
        }
    }
    canonical_from_moduli(&m)
}

pub fn cohomology_orders(a: &FinAbGroup) -> CohomologyOrders {
    CohomologyOrders {
        h2_order: wedge_power(a, 2).expect("k = 2").order(),
        h3: h3_group(a),
        quad_order: quad_group(a).group().order(),
    }
}

/// `|H³(G × L)|` against the Künneth terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethLedger {
    pub lhs: u64,
    pub h3_g: u64,
    pub h3_l: u64,
    pub tensor: u64,
    pub hom_l_h2g: u64,
    pub hom_g_h2l: u64,
    pub rhs: u64,
    pub balanced: bool,
}

pub fn kunneth_check(g: &FinAbGroup, l: &FinAbGroup) -> KunnethLedger {
    let lhs = h3_group(&g.direct_sum(l)).order();
    let h3_g = h3_group(g).order();
    let h3_l = h3_group(l).order();
    let tensor = tensor(g, l).order();
    let h2 = |x: &FinAbGroup| wedge_power(x, 2).expect("k = 2");
    let hom_l_h2g = hom_group(l, &h2(g)).order();
    let hom_g_h2l = hom_group(g, &h2(l)).order();
    let rhs = h3_g * h3_l * tensor * hom_l_h2g * hom_g_h2l;
    KunnethLedger {
        lhs,
        h3_g,
        h3_l,
        tensor,
        hom_l_h2g,
        hom_g_h2l,
        rhs,
        balanced: lhs == rhs,
    }
}

/// `|Pic(Rep(A, t))|` and the order of its integral part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PicOrder {
    pub total: u64,
    pub integral: u64,
}

pub fn pic_order(base: &BaseCategory) -> PicOrder {
    let integral = wedge_power(base.group(), 2).expect("k = 2").order();
    let total = if base.is_split() { 2 * integral } else { integral };
    PicOrder { total, integral }
}

/// `Pic(Rep(A, t))` up to isomorphism: `∧²A`, times `Z_2` when split.
fn pic_group(base: &BaseCategory) -> FinAbGroup {
    let mut m = wedge_power(base.group(), 2).expect("k = 2").moduli().to_vec();
    if base.is_split() {
        m.push(2);
    }
    canonical_from_moduli(&m)
}

/// `|Mext(Rep(A, t))|`.
pub fn mext_order(base: &BaseCategory) -> Result<u64> {
    Ok(mext_factors(base)?.order())
}

/// `|Mext(Rep(Z_N) ⊠ E₁)|` against `|Mext(E₁)| · N · |Ext(Z_N, Â₁)| · |Hom(Z_N, Pic(E₁))|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoFunLedger {
    pub n: i64,
    pub lhs: u64,
    pub mext_e1: u64,
    pub ext: u64,
    pub hom_pic: u64,
    pub rhs: u64,
    pub balanced: bool,
}

/// Splits off the cyclic factor `index` of `base`, which must not carry `t`.
pub fn twofun_recursion(base: &BaseCategory, index: usize) -> Result<TwoFunLedger> {
    let a = base.group();
    if index >= a.rank() {
        return Err(MextError::Range(format!("factor {index} of a rank-{} group", a.rank())));
    }
    if base.t().coords[index] != 0 {
        return Err(MextError::Range(format!("t has a component in factor {index}")));
    }
    let n = a.moduli()[index];
    let rest: Vec<usize> = (0..a.rank()).filter(|&i| i != index).collect();
    let a1 = FinAbGroup::new(rest.iter().map(|&i| a.moduli()[i]).collect())?;
    let t1 = GroupElt::new(rest.iter().map(|&i| base.t().coords[i]).collect());
    let e1 = BaseCategory::new(a1.clone(), t1)?;
    let zn = FinAbGroup::cyclic(n)?;
    let lhs = mext_order(base)?;
    let mext_e1 = mext_order(&e1)?;
    let ext = tensor(&zn, &a1).order();
    let hom_pic = hom_group(&zn, &pic_group(&e1)).order();
    let rhs = mext_e1 * n as u64 * ext * hom_pic;
    Ok(TwoFunLedger {
        n,
        lhs,
        mext_e1,
        ext,
        hom_pic,
        rhs,
        balanced: lhs == rhs,
    })
}
