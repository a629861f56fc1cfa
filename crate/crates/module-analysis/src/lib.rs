//! Graded modules over F_p[ν] presented by finite descriptor families, and
//! the duality check on H².

mod error;
pub mod module;
pub mod obstruction;

pub use error::ModuleError;
pub use module::{
    decompose, essentially_finite_rank, from_fpv1, CompleteFpNuModule, DecompositionResult, Exponents, Family,
    FiniteRank,
};
pub use obstruction::{bc_shift_obstruction, probe_degree, BcEntry, BcReport};
