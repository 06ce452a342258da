//! Explicit pointed extensions: the cyclic family `M_{k,ζ}` over
//! `Rep(Z_{2^n}^f)` and the centers `M₁(i)`, `M₂(ξ)` over `Rep(Z_2 × Z_2^f)`.

use super::base::BaseCategory;
use super::minext::MinExt;
use crate::abelian::{FinAbGroup, GroupHom};
use crate::error::{MextError, Result};
use crate::qforms::{MetricGroup, QuadForm, QZ};

/// `M_{k,ζ} = C(Z_{2^k}, q_{−ζ^{−4^{n−k}}}) ⊕ C(Z_{2^{2n−k}}, q_ζ)` with
/// `ι(j) = (j, 2^{n−k} j)`, where `ζ = e^{2πi s / 2^{2n−k+1}}`, `s` odd.
/// For `k = 0` the first factor is trivial and is left out.
pub fn build_m_k_zeta(n: u32, k: u32, s: i64) -> Result<MinExt> {
    if n == 0 || n > 7 || k > n {
        return Err(MextError::Range(format!("need 1 ≤ n ≤ 7 and 0 ≤ k ≤ n (got n = {n}, k = {k})")));
    }
    if s % 2 == 0 {
        return Err(MextError::Range(format!("ζ exponent {s} must be odd")));
    }
    let base = BaseCategory::cyclic_fermionic(n)?;
    let m2 = 1i64 << (2 * n - k);
    let mut moduli = vec![];
    let mut diag = vec![];
    let mut iota_col = vec![];
    if k > 0 {
        let m1 = 1i64 << k;
        moduli.push(m1);
        diag.push(QZ::new(m1 - s, 2 * m1));
        iota_col.push(1);
    }
    moduli.push(m2);
    diag.push(QZ::new(s, 2 * m2));
    iota_col.push(1i64 << (n - k));
    let c = FinAbGroup::new(moduli)?;
    let cat = MetricGroup::new(QuadForm::diagonal(&c, diag)?)?;
    let iota = GroupHom::new(
        base.group().clone(),
        c,
        iota_col.into_iter().map(|v| vec![v]).collect(),
    )?;
    MinExt::new(base, cat, iota)
}

/// `M₂(ξ) = Z(C(Z_4, q_ξ))` with `ξ = e^{2πi s/8}`, `s` odd:
/// `Z_4²` with `q(x, y) = s(x² − y²)/8`, `ι(e₁) = (2, 2)`, `ι(e₂) = (2, 0)`.
pub fn m2_xi(s: i64) -> Result<MinExt> {
    if s % 2 == 0 {
        return Err(MextError::Range(format!("ξ exponent {s} must be odd")));
    }
    let base = BaseCategory::z2_z2f();
    let c = FinAbGroup::new(vec![4, 4])?;
    let cat = MetricGroup::new(QuadForm::diagonal(&c, vec![QZ::new(s, 8), QZ::new(-s, 8)])?)?;
    let iota = GroupHom::new(base.group().clone(), c, vec![vec![2, 2], vec![2, 0]])?;
    MinExt::new(base, cat, iota)
}

/// `M₁(i) = Z(C(Z_2, q_i) ⊠ C(Z_2, q_i))` with `i = e^{2πi u/4}`, `u = ±1`:
/// `Z_2⁴` with `q = u(x₁² + x₂² − x₃² − x₄²)/4`, `ι(e₁) = (1,1,1,1)`, `ι(e₂) = (1,1,0,0)`.
pub fn m1_i(u: i64) -> Result<MinExt> {
    if u.rem_euclid(4) != 1 && u.rem_euclid(4) != 3 {
        return Err(MextError::Range(format!("i exponent {u} must be odd")));
    }
    let base = BaseCategory::z2_z2f();
    let c = FinAbGroup::new(vec![2, 2, 2, 2])?;
    let d = QZ::new(u, 4);
    let cat = MetricGroup::new(QuadForm::diagonal(&c, vec![d, d, -d, -d])?)?;
    let iota = GroupHom::new(
        base.group().clone(),
        c,
        vec![vec![1, 1], vec![1, 1], vec![1, 0], vec![1, 0]],
    )?;
    MinExt::new(base, cat, iota)
}
