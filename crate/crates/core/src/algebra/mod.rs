//! Exact arithmetic: univariate polynomials, certified positive-root
//! isolation, quadratic surds and decimal conversion.

mod decimal;
mod poly;
mod roots;
mod surd;

pub use decimal::{parse_rational, to_decimal_string};
pub use poly::Polynomial;
pub use roots::{
    default_eps, isolate_positive_roots, refine_root, squarefree_part, sturm_count_positive,
    sturm_sequence, yun_factors, RootInterval,
};
pub use surd::{sqrt_rational, QuadSurd};

use num_bigint::BigInt;

use crate::Rational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
