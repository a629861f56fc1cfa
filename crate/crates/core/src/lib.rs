//! Exact coefficient fields, sparse graded polynomial rings with quotient
//! relations, and linear algebra over finite fields.

pub mod field;
pub mod linalg;
pub mod ring;

pub use field::{CoeffRing, ExtField, Field, FieldError, FieldParams, PrimeField, Rationals};
pub use ring::{Mono, Poly, QuotientContext, RingError, Variable, VariableTable};
