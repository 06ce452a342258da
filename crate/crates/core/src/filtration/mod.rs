//! The filtration `Mext_triv ⊂ Mext_pt ⊂ Mext_int ⊂ Mext` of `Mext(Rep(A, t))`
//! and the cohomological counts around it.

mod cocycle2;
mod cohomology;
mod cup;
mod factors;
mod h2t;
mod kappa;
mod theta;

pub(crate) use cocycle2::carry;
pub use cocycle2::{epsilon, epsilon_transpose, AbCocycle2, EPSILON_LIMIT};
pub use cohomology::{
    cohomology_orders, h3_group, kunneth_check, mext_order, pic_order, twofun_recursion,
    CohomologyOrders, KunnethLedger, PicOrder, TwoFunLedger,
};
pub use cup::{cup_square_kernel, CupKernel, CUP_MAX_RANK};
pub use factors::{mext_factors, FactorReport, Factors, TannakianReport};
pub use h2t::AltForm2;
pub use kappa::{kappa_cokernel, kappa_form, triv_closed_formula, KappaCokernel};
pub use theta::{theta_direct, theta_kernel, ThetaKernel};
