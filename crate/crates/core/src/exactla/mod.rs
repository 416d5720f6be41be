//! Exact linear algebra over the rationals.
//!
//! Dense matrices with arbitrary-precision rational entries, reduced
//! row-echelon forms, kernels, linear solves, subspaces in reduced echelon
//! form, and quotient-coordinate maps. Also a few integer-matrix utilities
//! (determinant, Smith normal form) used by the invariant reports.

mod intmat;
mod matrix;
mod subspace;

pub use intmat::{int_matrix_det, smith_normal_form};
pub use matrix::RationalMatrix;
pub use subspace::{
    quotient_coordinates, quotient_representatives, quotient_with_representatives, Subspace,
};

pub type Rat = num::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses a decimal-free rational string such as `"3"`, `"-5"` or `"2/7"`.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    s.parse::<Rat>()
        .map_err(|e| crate::Error::Parse(format!("bad rational {s:?}: {e}")))
}
