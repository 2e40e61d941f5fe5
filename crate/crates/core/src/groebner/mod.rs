//! Gröbner bases, syzygies and graded free resolutions.

pub(crate) mod basis;
pub mod ideal;
pub mod order;
pub mod resolution;
pub mod syzygy;

pub use ideal::{buchberger, divide, exact_div, groebner_with_cofactors, normal_form, verify_groebner, Ideal};
pub use order::TermOrder;
pub use resolution::{free_resolution, projdim_and_depth, BettiEntry, BettiTable, GradedResolution};
pub use syzygy::syzygy_module;
