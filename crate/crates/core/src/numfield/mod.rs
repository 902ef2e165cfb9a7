//! Exact arithmetic in a real number field `L = Q(θ)` and linear algebra over it.

mod field;
pub mod linalg;
mod matrix;
pub mod poly;
mod subfield;

pub use field::{fe_arith, ArithOp, FieldElement, Irreducibility, NumberField, RootInterval, MAX_VERIFIED_DEGREE};
pub use matrix::{dot, mat_inverse, mat_mul, mat_solve, FieldMatrix};
pub use poly::Poly;
pub use subfield::{subfield_membership, Subfield};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r: Rational = s.parse().ok()?;
    Some(r)
}
