//! Exact Laurent polynomial rings.
//!
//! String grammar (output, also accepted as input):
//!
//! * terms in ascending exponent order, joined by ` + ` or ` - `;
//! * a coefficient of magnitude one is omitted on non-constant terms;
//! * Gaussian coefficients print as `i`, `2i` or `(2-3i)`;
//! * exponents print as `t`, `t^3`, `t^-1/2` (reduced fractions, no braces);
//! * the zero polynomial prints as `0`.
//!
//! Two-variable polynomials use the same rules with monomials such as
//! `a^-2z^3`, ordered by z-exponent then a-exponent.

mod gauss;
mod laurent;
mod parse;
mod twovar;

pub use gauss::{GaussInt, GaussRational};
pub use laurent::LaurentPoly;
pub use twovar::{two_var_substitute, TwoVarPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("image of {0} is not invertible but a negative power is required")]
    NonInvertibleImage(char),
    #[error("result has a nonzero imaginary part: {0}")]
    ResidualImaginaryPart(String),
    #[error("polynomial has non-integer exponents")]
    FractionalExponent,
    #[error("cannot evaluate a negative power at zero")]
    ZeroEvaluationPoint,
}

/// `a ↦ i t^{-2}`, the `a` image in the cabling formula.
pub fn king_a_image() -> LaurentPoly {
    LaurentPoly::monomial(GaussInt::I, -8)
}

/// `z ↦ i (t - t^{-1})`, the `z` image in the cabling formula.
pub fn king_z_image() -> LaurentPoly {
    LaurentPoly::monomial(GaussInt::I, 4) - LaurentPoly::monomial(GaussInt::I, -4)
}
