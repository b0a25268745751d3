//! Decision procedures for freeness, outerness and saturation, and a suite cross-checking
//! the relations between them.

mod freeness;
pub(crate) mod outer;
mod rokhlin;
mod saturation;
mod suite;

pub use freeness::{
    center_tau, group_action_free, intertwiner_space, is_free, is_free_with, FreenessReport, GroupFreenessReport,
};
pub use outer::{group_like_witness, inner_witness_check, is_outer, InnerWitnessReport, OuterVerdict};
pub use rokhlin::{exact_rokhlin_search, RokhlinDiagnostic, ROKHLIN_MAX_PROJECTIONS};
pub use saturation::{is_saturated, SaturationReport};
pub use suite::{theorem_suite, CellStatus, SuiteCell, SuiteReport, SuiteRow, PERTURBATION_SEEDS, SUITE_CHECKS};

#[cfg(test)]
mod tests;
