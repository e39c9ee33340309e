//! Invariant Einstein metrics with enlarged isometry groups on the
//! homogeneous spaces `SO(n)/SO(l)` and `Sp(n)/Sp(l)`.
//!
//! The crate builds the scalar-curvature functional of `Ad(K)`-invariant
//! metrics from the isotropy decomposition, solves the constrained
//! critical-point equations (closed-form quadratics, certified quartic roots),
//! and certifies every solution through its Lagrange residual. A brute-force
//! matrix oracle recomputes the structure constants from scratch.
//!
//! Evaluation code is generic over [`Scalar`]; the aliases below name the
//! instantiations used throughout.

pub mod algebra;
pub mod curvature;
pub mod error;
pub mod oracle;
pub mod scalar;
pub mod solvers;
pub mod space;

pub use algebra::{Polynomial, QuadSurd, RootInterval};
pub use curvature::{EinsteinCertificate, MetricParams, ScalarField};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use space::{GroupFamily, ModuleId, SpaceSpec, TripleSymbolTable};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials with exact rational coefficients.
pub type RationalPoly = Polynomial<Rational>;
/// Polynomials in double precision.
pub type FloatPoly = Polynomial<f64>;
/// Metric parameters evaluated exactly.
pub type ExactMetric = MetricParams<Rational>;
/// Metric parameters at quadratic-irrational points.
pub type SurdMetric = MetricParams<QuadSurd>;
/// Metric parameters in double precision.
pub type FloatMetric = MetricParams<f64>;

/// Residual below which a metric is accepted as Einstein.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
