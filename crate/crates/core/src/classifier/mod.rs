//! Finiteness verdicts for kernels of maps to Z: the Bux–Gonzalez
//! criterion for RAAGs, the Bestvina–Brady link criterion, and the two
//! end-to-end constructions with their certificate bundles.

mod bb;
mod bux;
mod report;
mod theorem_a;
mod theorem_b;

pub use bb::{bb_morse_classify, LinkTable};
pub use bux::{bux_gonzalez_classify, raag_presentation, WeightAssignment};
pub use report::{Evidence, F2Status, FinitenessReport, FpEntry, Status};
pub use theorem_a::{
    binary_icosahedral, flag_model, presentation_complex, rl_orientation, theorem_a_pipeline, verify_link_table,
    HypothesisStatus, NotF2Check, StageFailure, StageRecord, TableRow, TheoremAOptions, TheoremAResult,
};
pub use theorem_b::{theorem_b_calculator, FactorDescriptor, TheoremB};
