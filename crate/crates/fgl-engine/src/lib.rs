//! The universal p-typical formal group law over BP_* reduced mod p, its
//! right unit, and the congruence checks that feed the Bockstein
//! computation.

pub mod bp;
pub mod checks;
pub mod congruence;
mod error;
pub mod law;
pub mod log;
pub mod right_unit;
pub mod sigma;

pub use congruence::{verify_congruence, w1, CongruenceReport};
pub use error::FglError;
pub use law::{fgl_add, formal_sum, AxiomResiduals, FglAdder, FormalGroupLaw};
pub use log::{log_coeffs, LogCoefficients};
pub use right_unit::{solve_right_units, RightUnits};
pub use sigma::SigmaModel;
