//! Exact computations with minimal non-degenerate extensions of pointed
//! symmetric fusion categories `Rep(A, t)`.
//!
//! Everything is modelled with finite abelian groups and `Q/Z`-valued forms:
//! a pointed braided fusion category is a pre-metric group `(C, q)`, the
//! symmetric category `Rep(A, t)` is the pair `(Â, φ ↦ ⟨t, φ⟩)`, and a pointed
//! minimal extension is a metric group together with a pinned embedding of `Â`.
//!
//! * [`abelian`]: groups, elements, homomorphisms, Smith normal form, subgroups and quotients.
//! * [`qforms`]: `Q/Z` arithmetic, quadratic and bilinear forms, Gauss sums, condensation, isometries.
//! * [`extensions`]: pointed minimal extensions, their product, equivalence, orders and charges.
//! * [`filtration`]: the filtration factors of `Mext(Rep(A, t))` and supporting cohomology counts.
//! * [`cocycles`]: explicit 3-cocycles, the alternator and the trilinear invariant `τ`.
//! * [`verify`]: end-to-end check suites shared by the CLI.

pub mod abelian;
pub mod cocycles;
pub mod error;
pub mod extensions;
pub mod filtration;
pub mod limits;
pub mod qforms;
pub mod verify;

pub use abelian::{FinAbGroup, GroupElt, GroupHom, Subgroup};
pub use error::{MextError, Result};
pub use extensions::{BaseCategory, MinExt};
pub use filtration::FactorReport;
pub use qforms::{BilForm, MetricGroup, QuadForm, QZ};
