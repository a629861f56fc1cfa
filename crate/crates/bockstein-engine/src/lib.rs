//! The v1-Bockstein spectral sequence from H*(E_2/(p, v1)) to H*(E_2/p)
//! for the height-two fixed points.

mod error;
pub mod formulas;
pub mod homotopy;
pub mod lift;
pub mod run;

pub use error::BocksteinError;
pub use formulas::{b_exponent, geometric, n_t_closed_form, page, representations, required_truncation, split_exponent};
pub use homotopy::{homotopy_from_modules, homotopy_groups, Contribution, HomotopyChart};
pub use lift::{build_z_lift, leading_differential, match_shape, DifferentialRecord, LeadingOutcome, ZLift};
pub use run::{
    cross_check, run_bockstein, sparseness, target_is_cocycle, v2_degree, BocksteinRun, CheckStatus, CrossCheck,
    CrossCheckEntry, FpV1Module, FreeGenerator, SparsenessReport, TorsionGenerator, Unresolved,
};
