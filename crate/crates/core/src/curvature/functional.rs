use num_traits::Zero;

use crate::curvature::field::ScalarField;
use crate::scalar::Scalar;
use crate::Rational;

/// A scalar field restricted to a volume level set `prod x_i^{d_i} = const`.
///
/// Critical points of the restriction are the solutions of
/// `grad S = lambda * (d_i / x_i)_i`, which for the scalar curvature
/// functional are exactly the Einstein metrics.
#[derive(Clone, Debug)]
pub struct ConstrainedFunctional {
    field: ScalarField,
    grad: Vec<ScalarField>,
    exponents: Vec<Rational>,
}

/// Outcome of checking the Lagrange condition at a point.
///
/// All quantities are taken at the metric rescaled so that its largest
/// coordinate is one, which makes the residual scale invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinCertificate {
    /// Multiplier `lambda` of the best fit `grad S ~ lambda * v`.
    pub lambda: f64,
    /// Einstein constant `S / dim p` of the rescaled metric.
    pub einstein_constant: f64,
    /// `max |grad S - lambda v| / max(|grad S|_inf, 1)`.
    pub residual_inf: f64,
    /// `sum d_i ln x_i` of the metric as given.
    pub log_volume: f64,
    pub volume: f64,
    /// Scalar curvature of the rescaled metric.
    pub scalar_curvature: f64,
    /// For exact scalar types: whether the residual vanishes identically.
    pub exact_zero: Option<bool>,
    pub tolerance: f64,
}

impl EinsteinCertificate {
    pub fn is_einstein(&self) -> bool {
        self.exact_zero == Some(true) || (self.residual_inf.is_finite() && self.residual_inf < self.tolerance)
    }
}

impl ConstrainedFunctional {
    pub fn new(field: ScalarField, exponents: Vec<Rational>) -> Self {
        assert_eq!(field.nvars(), exponents.len(), "one volume exponent per variable");
        let grad = field.gradient();
        Self { field, grad, exponents }
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn value<T: Scalar>(&self, x: &[T]) -> T {
        self.field.eval(x)
    }

    pub fn gradient_at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        self.grad.iter().map(|g| g.eval(x)).collect()
    }

    pub fn log_volume(&self, x: &[f64]) -> f64 {
        self.exponents
            .iter()
            .zip(x)
            .map(|(d, xi)| crate::scalar::rational_to_f64(d) * xi.ln())
            .sum()
    }

    /// Lagrange multiplier and residual vector at `x` (no rescaling).
    pub fn lagrange<T: Scalar>(&self, x: &[T]) -> (T, Vec<T>, Vec<T>) {
        let g = self.gradient_at(x);
        let v: Vec<T> = self
            .exponents
            .iter()
            .zip(x)
            .map(|(d, xi)| T::from_rational(d) / xi.clone())
            .collect();
        let dot = |a: &[T], b: &[T]| {
            a.iter().zip(b).fold(T::zero(), |acc, (p, q)| acc + p.clone() * q.clone())
        };
        let lambda = dot(&g, &v) / dot(&v, &v);
        let diff = g
            .iter()
            .zip(&v)
            .map(|(gi, vi)| gi.clone() - lambda.clone() * vi.clone())
            .collect();
        (lambda, diff, g)
    }

    pub fn certify<T: Scalar>(&self, x: &[T], tolerance: f64) -> EinsteinCertificate {
        assert_eq!(x.len(), self.nvars(), "point dimension");
        let xf: Vec<f64> = x.iter().map(Scalar::to_f64).collect();
        let log_volume = self.log_volume(&xf);

        let m = x.iter().cloned().fold(T::zero(), T::max_val);
        let xn: Vec<T> = x.iter().map(|xi| xi.clone() / m.clone()).collect();
        let (lambda, diff, g) = self.lagrange(&xn);

        let sup = |v: &[T]| v.iter().fold(T::zero(), |acc, t| acc.max_val(t.abs_val()));
        let gnorm = sup(&g).max_val(T::one());
        let residual = sup(&diff) / gnorm;
        let s = self.value(&xn);
        let dim: f64 = self.exponents.iter().map(crate::scalar::rational_to_f64).sum();

        EinsteinCertificate {
            lambda: lambda.to_f64(),
            einstein_constant: s.to_f64() / dim,
            residual_inf: residual.to_f64(),
            log_volume,
            volume: log_volume.exp(),
            scalar_curvature: s.to_f64(),
            exact_zero: T::EXACT.then(|| diff.iter().all(Zero::is_zero)),
            tolerance,
        }
    }
}
