//! Solutions of `A_{f,p} + A_{g,q} = x + y`: construction of the sufficient families,
//! residuals of the necessary conditions, and the reconstruction pipeline tying them together.

mod classify;
mod family;
mod recover;
mod residuals;

pub use classify::{classify_solution, Classification, Verdict};
pub use family::{construct_family, perturb_pair, random_family, FamilyMeans, SolutionFamily, Split, WeightSlot};
pub use recover::{coefficients_from_initial, recover_uv, RecoveredPair, SCHWARZIAN_SAMPLES};
pub use residuals::{
    diagonal_system_check, identity_uvwz_check, invariance_residual, invariance_sweep, necessary_residuals, Condition,
    InvarianceSweep, NecessaryResiduals, ResidualReport, SystemReport, Tolerances,
};
