//! Shape-regularity metrics, the theoretical constants, and checks of every
//! inequality that leads to the refined-mesh bound.

mod analysis;
mod constants;
mod sweep;
mod verify;

pub use analysis::{analyze_mesh, MeshAnalysis};
pub use constants::{shape_constant, theoretical_constants, TheoreticalConstants, MIN_SHAPE_CONSTANT};
pub use sweep::{geometric_grid, loglog_slope, param_name, sweep_sharpness, SweepOutcome, SweepRecord};
pub use verify::{
    dist_face_sides, prop22_interior_margin, theorem31_from_refinement, verify_lemma_cos,
    verify_lemma_cos_global, verify_lemma_dist_face, verify_mesh, verify_prop21, verify_prop22,
    verify_prop32_lemma33, verify_theorem31, CheckId, CheckRecord, DistFaceSides, FaceMargins,
    MeshSummary, RefinedSummary, Theorem31Check, VerificationReport, Worst, TOL_COS, TOL_DIST_FACE,
    TOL_FACE, TOL_PROP21, TOL_REFINED,
};
