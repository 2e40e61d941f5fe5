//! Exact polynomial algebra: monomials, polynomials, graded free modules and
//! small dense linear algebra over a field.

pub mod linalg;
mod module;
mod monomial;
pub mod parse;
mod poly;

pub use module::{FreeModule, HomMatrix, ModuleElement};
pub use monomial::{default_var_names, Monomial, MAX_VARS};
pub use parse::parse_poly;
pub use poly::{ArithOp, Polynomial};
