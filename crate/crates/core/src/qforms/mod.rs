//! `Q/Z`-valued quadratic and bilinear forms on finite abelian groups.

mod enumerate;
mod form;
mod isometry;
mod metric;
mod qz;

pub use enumerate::{enumerate_forms, quad_group, QuadGroup, MAX_FORMS};
pub use form::{BilForm, QuadForm};
pub use isometry::{is_isometry, isometry_search};
pub use metric::{gauss_sum_of, Condensed, GaussSum, MetricGroup};
pub use qz::QZ;


use crate::abelian::{FinAbGroup, GroupElt};

/// `⟨x, φ⟩ = Σ x_i φ_i / n_i`.
pub fn pairing(a: &FinAbGroup, x: &GroupElt, phi: &GroupElt) -> QZ {
    a.moduli()
        .iter()
        .zip(x.coords.iter().zip(&phi.coords))
        .map(|(&n, (&xi, &pi))| QZ::new(xi * pi, n))
        .sum()
}
