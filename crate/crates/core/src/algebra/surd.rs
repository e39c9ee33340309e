//! Exact arithmetic in `Q(sqrt(D))` for a single squarefree radicand `D`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::rational_to_f64;
use crate::Rational;

/// The number `rat + irr * sqrt(radicand)`.
///
/// `radicand` is squarefree and greater than one whenever `irr != 0`;
/// rational values carry radicand one. Values with different radicands can
/// only be combined when at least one of them is rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    rat: Rational,
    irr: Rational,
    radicand: BigInt,
}

/// Writes a nonnegative rational as `coeff * sqrt(radicand)` with a squarefree integer radicand.
pub fn sqrt_rational(r: &Rational) -> Option<(Rational, BigInt)> {
    if r.is_negative() {
        return None;
    }
    // sqrt(n/d) = sqrt(n*d)/d
    let nd = r.numer() * r.denom();
    let (outside, inside) = square_split(&nd);
    Some((Rational::new(outside, r.denom().clone()), inside))
}

/// Splits `n >= 0` as `a^2 * b` with `b` squarefree.
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            outside *= &p;
        }
        if e % 2 == 1 {
            inside *= &p;
        }
        p += 1;
    }
    inside *= rest;
    (outside, inside)
}

impl QuadSurd {
    pub fn from_rational(r: Rational) -> Self {
        Self { rat: r, irr: Rational::zero(), radicand: BigInt::one() }
    }

    /// `rat + irr * sqrt(radicand)`; the radicand is reduced to squarefree form.
    pub fn new(rat: Rational, irr: Rational, radicand: BigInt) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        let (outside, inside) = square_split(&radicand);
        let irr = irr * Rational::from_integer(outside);
        Self::normalized(rat, irr, inside)
    }

    /// `a + b * sqrt(r)` for a nonnegative rational `r`.
    pub fn with_sqrt_of(a: Rational, b: Rational, r: &Rational) -> Self {
        let (coeff, radicand) = sqrt_rational(r).expect("square root of a negative rational");
        Self::normalized(a, b * coeff, radicand)
    }

    fn normalized(rat: Rational, irr: Rational, radicand: BigInt) -> Self {
        if irr.is_zero() || radicand.is_one() {
            let rat = if radicand.is_one() { rat + irr } else { rat };
            return Self::from_rational(rat);
        }
        Self { rat, irr, radicand }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.irr
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    fn common_radicand(&self, other: &Self) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert_eq!(self.radicand, other.radicand, "mixed radicands in surd arithmetic");
                self.radicand.clone()
            }
        }
    }

    pub fn conjugate(&self) -> Self {
        Self::normalized(self.rat.clone(), -self.irr.clone(), self.radicand.clone())
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sa = sgn(&self.rat);
        let sb = sgn(&self.irr);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.rat * &self.rat;
        let b2d = &self.irr * &self.irr * Rational::from_integer(self.radicand.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return rational_to_f64(&self.rat);
        }
        self.to_rational_approx(40).to_f64().unwrap_or(f64::NAN)
    }

    /// Rational approximation with error below `10^-digits` (times the size of the irrational coefficient).
    pub fn to_rational_approx(&self, digits: u32) -> Rational {
        if self.is_rational() {
            return self.rat.clone();
        }
        let scale = BigInt::from(10).pow(digits);
        let root = (&self.radicand * &scale * &scale).sqrt();
        &self.rat + &self.irr * Rational::new(root, scale)
    }
}

fn sgn(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self.clone() - other.clone()).signum().cmp(&0))
    }
}

impl Zero for QuadSurd {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for QuadSurd {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Add for QuadSurd {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        Self::normalized(self.rat + rhs.rat, self.irr + rhs.irr, d)
    }
}

impl Sub for QuadSurd {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for QuadSurd {
    type Output = Self;

    fn neg(self) -> Self {
        Self { rat: -self.rat, irr: -self.irr, radicand: self.radicand }
    }
}

impl Mul for QuadSurd {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        let dr = Rational::from_integer(d.clone());
        let rat = &self.rat * &rhs.rat + &self.irr * &rhs.irr * dr;
        let irr = &self.rat * &rhs.irr + &self.irr * &rhs.rat;
        Self::normalized(rat, irr, d)
    }
}

impl Div for QuadSurd {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero surd");
        let conj = rhs.conjugate();
        let norm = (rhs * conj.clone())
            .as_rational()
            .cloned()
            .expect("norm of a surd is rational");
        let num = self * conj;
        Self::normalized(num.rat / &norm, num.irr / &norm, num.radicand)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.rat)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.rat, self.irr, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn surd(a: i64, b: i64, d: i64) -> QuadSurd {
        QuadSurd::new(rat(a), rat(b), BigInt::from(d))
    }

    #[test]
    fn reduces_radicands() {
        let s = surd(1, 1, 12);
        assert_eq!(s.irrational_part(), &rat(2));
        assert_eq!(s.radicand(), &BigInt::from(3));
        assert!(surd(3, 2, 16).is_rational());
        assert_eq!(surd(3, 2, 16).as_rational(), Some(&rat(11)));
    }

    #[test]
    fn field_operations() {
        let a = surd(3, 1, 5);
        let b = surd(3, -1, 5);
        assert_eq!(a.clone() * b.clone(), QuadSurd::from_rational(rat(4)));
        assert_eq!((a.clone() / b.clone()) * b.clone(), a);
        assert_eq!(a.clone() + b, QuadSurd::from_rational(rat(6)));
    }

    #[test]
    fn exact_sign() {
        assert_eq!(surd(3, -1, 5).signum(), 1);
        assert_eq!(surd(2, -1, 5).signum(), -1);
        assert_eq!(surd(-3, 1, 5).signum(), -1);
        assert!(surd(3, -1, 5) < surd(1, 0, 1));
        assert!(surd(1, 0, 1) < surd(3, -1, 5) * QuadSurd::from_rational(rat(2)));
    }

    #[test]
    fn sqrt_of_fraction() {
        let (c, d) = sqrt_rational(&ratio(7, 4)).unwrap();
        assert_eq!(c, ratio(1, 2));
        assert_eq!(d, BigInt::from(7));
        assert!(sqrt_rational(&rat(-1)).is_none());
    }

    #[test]
    fn approximation() {
        let s = surd(0, 1, 2);
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }
}
