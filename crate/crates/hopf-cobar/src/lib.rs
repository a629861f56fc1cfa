//! The quotient Hopf algebroid Σ̄₂ modulo (p, v1): coproducts from the
//! formal group law, its degree-zero Hopf algebra, the normalized cobar
//! complex and window cohomology with the F^×_{p²} ⋊ Gal descent.

pub mod cobar;
pub mod cohomology;
pub mod coproduct;
mod error;
pub mod hopf;
pub mod presentation;

pub use cobar::{cobar_d, CobarComplex, CobarWord, SignConvention};
pub use cohomology::{
    cohomology_window, group_action_invariants, stable_classes, CobarContext, CohomologyTable, GaloisConvention,
    StableClasses, TableEntry,
};
pub use coproduct::{coproducts, TensorCoproducts};
pub use error::CobarError;
pub use hopf::DegreeZeroHopf;
pub use presentation::AlgebroidPresentation;
