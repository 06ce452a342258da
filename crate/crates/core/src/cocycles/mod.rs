//! Explicit 3-cocycles on finite abelian groups, the alternator, the
//! transgressed 2-cocycles `μ_x` and the trilinear invariant `τ`.

mod cocycle3;
mod transgression;
mod trilinear;

pub use cocycle3::{standard_cocycle, Cocycle3, CocycleType, COCYCLE_CHECK_LIMIT};
pub use transgression::{
    assignment_from_generators, integral_assignments, mu_from_omega, satisfies_q_condition,
    tau_direct, tau_from_mu, Cochain2, ASSIGNMENT_LIMIT, MU_LIMIT,
};
pub use trilinear::{alternator, alternator_direct, span_order, tensor3_group, Trilinear};
