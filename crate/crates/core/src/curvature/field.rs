use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::Rational;

/// A Laurent polynomial in `nvars` positive variables with rational
/// coefficients: `sum c * x_0^e_0 * ... * x_{n-1}^e_{n-1}` with `e_i` in Z.
///
/// Scalar-curvature functionals are sums of `x_c / (x_a x_b)` and `1 / x_a`,
/// so this representation is closed under everything needed here, including
/// exact partial differentiation.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl ScalarField {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, Rational::one(), e)
    }

    pub fn monomial(nvars: usize, c: Rational, exps: Vec<i32>) -> Self {
        let mut f = Self::zero(nvars);
        f.add_term(c, exps);
        f
    }

    pub fn add_term(&mut self, c: Rational, exps: Vec<i32>) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(v * c, e.clone());
        }
        out
    }

    /// Exact partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(c * Rational::from_integer(e[i].into()), e2);
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    fn term_value<T: Scalar>(c: &Rational, e: &[i32], x: &[T]) -> T {
        e.iter()
            .zip(x)
            .filter(|(&k, _)| k != 0)
            .fold(T::from_rational(c), |acc, (&k, xi)| acc * xi.powi(k))
    }

    /// Evaluates at `x` (all coordinates must be nonzero where exponents are negative).
    pub fn eval<T: Scalar>(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.nvars, "point dimension");
        self.terms
            .iter()
            .fold(T::zero(), |acc, (e, c)| acc + Self::term_value(c, e, x))
    }

    /// Largest absolute value of a single term at `x`.
    pub fn max_term_magnitude<T: Scalar>(&self, x: &[T]) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, (e, c)| acc.max_val(Self::term_value(c, e, x).abs_val()))
    }

    /// Composes with `x_i = sum_j map[i][j] * y_j` where each row has a single
    /// entry, i.e. renames and identifies variables.
    pub fn substitute_vars(&self, nvars: usize, target: &[usize]) -> Self {
        assert_eq!(target.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[target[i]] += k;
            }
            out.add_term(c.clone(), e2);
        }
        out
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;

    fn add(self, rhs: Self) -> ScalarField {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(c.clone(), e.clone());
        }
        out
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;

    fn sub(self, rhs: Self) -> ScalarField {
        self + &(-rhs)
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;

    fn neg(self) -> ScalarField {
        self.scale(&-Rational::one())
    }
}

impl Mul for &ScalarField {
    type Output = ScalarField;

    fn mul(self, rhs: Self) -> ScalarField {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = ScalarField::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(c1 * c2, e);
            }
        }
        out
    }
}

/// Exact partials of `field` evaluated at `x`.
pub fn gradient<T: Scalar>(field: &ScalarField, x: &[T]) -> Vec<T> {
    (0..field.nvars()).map(|i| field.partial(i).eval(x)).collect()
}
