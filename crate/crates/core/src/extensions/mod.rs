//! Pointed minimal non-degenerate extensions of `Rep(A, t)`.
//!
//! An extension is a metric group `C` with an embedding `ι: Â → C` such that
//! `q_C ∘ ι = ⟨t, ·⟩` and `ι(Â)` is its own orthogonal complement. The product
//! is condensation of `C₁ ⊕ C₂` along the antidiagonal copy of `Â`.

mod base;
mod enumerate;
mod families;
mod minext;

pub use base::BaseCategory;
pub use enumerate::{
    abelian_groups_of_order, cayley_table, enumerate_pointed, group_from_table, identify,
    valid_embeddings, ENUMERATION_LIMIT,
};
pub use families::{build_m_k_zeta, m1_i, m2_xi};
pub use minext::MinExt;
