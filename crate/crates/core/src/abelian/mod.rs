//! Finite abelian groups `Z_{n_1} × … × Z_{n_k}` with a fixed generator basis.
//!
//! The character group `Â` is represented by the same moduli, paired with `A`
//! by `⟨x, φ⟩ = Σ x_i φ_i / n_i ∈ Q/Z`.

mod functors;
mod group;
mod hom;
mod matrix;
mod snf;
mod subgroup;

pub use functors::{
    canonical_decomposition, complement_search, ext_group, group_from_census, hom_group,
    is_split, order_census, tensor, wedge_power,
};
pub use group::{FinAbGroup, GroupElt, EXPONENT_CAP};
pub use hom::{GroupHom, KerCoker};
pub use matrix::IMat;
pub use snf::{smith_normal_form, Snf};
pub use subgroup::{Quotient, Subgroup};

pub(crate) use functors::canonical_from_moduli;
