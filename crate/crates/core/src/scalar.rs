//! Scalar abstraction shared by every evaluator in the crate.
//!
//! Curvature functionals, their gradients and the Einstein residuals are
//! written once against [`Scalar`] and instantiated with `f64`/`f32` for fast
//! numerics, [`Rational`] for exact identities, and [`QuadSurd`] for exact
//! checks at quadratic-irrational points.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::QuadSurd;
use crate::Rational;

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// True when arithmetic in this type introduces no rounding.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Integer power; negative exponents divide.
    fn powi(&self, e: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * self.clone();
        }
        if e < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }

    fn max_val(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn powi(&self, e: i32) -> Self {
        f64::powi(*self, e)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn powi(&self, e: i32) -> Self {
        f32::powi(*self, e)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Scalar for QuadSurd {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        QuadSurd::from_rational(r.clone())
    }

    fn to_f64(&self) -> f64 {
        QuadSurd::to_f64(self)
    }
}

/// Converts a rational to the nearest-ish double, robust to huge numerators
/// and denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = num_traits::ToPrimitive::to_f64(r) {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to shifting both parts into range.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let ns: BigInt = n >> shift;
    let ds: BigInt = d >> shift;
    ns.to_f64().unwrap_or(f64::NAN) / ds.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}
