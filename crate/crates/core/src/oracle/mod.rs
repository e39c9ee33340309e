//! Brute-force Lie algebra oracle: explicit matrix bases, structure
//! constants, Killing forms and triple symbols computed from scratch.

mod basis;
mod lie;
mod triples;

pub use basis::{build_algebra, build_algebra_with_cap, is_member, MatrixBasis, ORTHOGONAL_CAP, SYMPLECTIC_CAP};
pub use lie::{ad_invariance_defect, killing_form, killing_form_from, structure_constants, BilinearForm, StructureConstants};
pub use triples::{
    brute_triple_symbols, compare_with_closed_forms, verify_killing_ratio, BruteTable, Frame, KillingRatioReport, LieOracle,
    OracleReport, RatioRow, TripleRow,
};
