//! Scalar-curvature functionals, their exact gradients and the Lagrange certificate.

mod field;
mod functional;
mod metric;
mod sum;
mod system;
mod three_block;

pub use field::{gradient, ScalarField};
pub use functional::{ConstrainedFunctional, EinsteinCertificate};
pub use metric::{projective_distance, MetricParams};
pub use sum::{
    einstein_functional, einstein_functional_unchecked, scalar_curvature_closed, scalar_curvature_field, scalar_curvature_generic,
    standard_metric_value, verify_einstein,
};
pub use system::{full_system, full_system_residual};
pub use three_block::{curvature_scale, symmetric_metric, three_block_coefficients, three_block_form, GeneralFamilyCoeffs};
