//! Algebraic invariants of central hyperplane arrangements over the
//! rationals: Jacobian ideals, minimal graded free resolutions, logarithmic
//! derivations, freeness and plus-one generated classification, and the
//! associated primes of `S/J(A)`.

pub mod algebra;
pub mod arrangement;
pub mod assoc;
pub mod classification;
pub mod error;
pub mod groebner;
pub mod properties;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Field, Rat};

/// Polynomial with exact rational coefficients.
pub type Poly = algebra::Polynomial<Rat>;
