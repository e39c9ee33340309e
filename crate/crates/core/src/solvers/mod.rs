//! Einstein metrics of the solvable families: Jensen quadratics, the
//! three-block quartics, the general `s`-block reduction, sign checks and
//! the many-metrics construction.

mod general;
mod jensen;
mod planner;
mod quartic;
mod solution;
mod theorems;

pub use crate::curvature::GeneralFamilyCoeffs;
pub use general::{general_reduce, general_solve, general_solve_with, reduced_coordinates, GeneralReduction};
pub use jensen::{jensen_roots, jensen_solve, jensen_solve_with};
pub use planner::{canonical_vector, plan_many_metrics, plan_many_metrics_with, ManyMetricsPlan, PlanRun};
pub use quartic::{
    expected_table, quartic_build, quartic_recover_x, quartic_solve, quartic_solve_with, table_sweep, CountGrid,
};
pub use solution::{finalize, EinsteinSolution, Exactness, SolutionFamily, SolveOptions};
pub use theorems::{hypothesis_holds, p_at_one, p_at_one_bracket, quartic_at_one, theorem_sign_checks, SignReport};
