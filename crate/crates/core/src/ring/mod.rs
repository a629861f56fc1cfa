//! Sparse Laurent polynomials over a coefficient ring, with weighted
//! truncation, a power-series degree cap and power-rewriting relations.

mod context;
mod text;

pub use context::{ContextBuilder, DegreeReport, PowerRule, QuotientContext};
pub use text::{TermJson, from_json, from_text, to_json, to_text};

use crate::field::FieldError;
use rustc_hash::FxHashMap;
use thiserror::Error;

pub const MAX_VARS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("too many variables ({0} > {MAX_VARS})")]
    TooManyVariables(usize),
    #[error("exponent overflow")]
    Overflow,
    #[error("negative exponent on non-Laurent variable {0}")]
    NegativeExponent(String),
    #[error("element is not invertible under the active truncation: {0}")]
    NotInvertible(String),
    #[error("image of {0} is not degree-homogeneous: {1:?}")]
    Inhomogeneous(String, Vec<(i64, usize)>),
    #[error("missing image for variable {0}")]
    MissingImage(String),
    #[error("rewrite system does not terminate: {0}")]
    NonTerminating(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation needs positive characteristic")]
    CharacteristicZero,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    /// Ring generator with an internal degree.
    Coefficient,
    /// Formal power-series variable; counts toward the degree cap.
    PowerSeries,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub degree: i64,
    pub laurent: bool,
    pub kind: VarKind,
}

impl Variable {
    pub fn new(name: &str, degree: i64) -> Self {
        Variable { name: name.to_string(), degree, laurent: false, kind: VarKind::Coefficient }
    }
    pub fn laurent(name: &str, degree: i64) -> Self {
        Variable { laurent: true, ..Self::new(name, degree) }
    }
    pub fn series(name: &str, degree: i64) -> Self {
        Variable { kind: VarKind::PowerSeries, ..Self::new(name, degree) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableTable {
    vars: Vec<Variable>,
    order: Vec<usize>,
    v1: Option<usize>,
}

impl VariableTable {
    pub fn new(vars: Vec<Variable>) -> Result<Self, RingError> {
        if vars.len() > MAX_VARS {
            return Err(RingError::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(RingError::DuplicateVariable(v.name.clone()));
            }
        }
        let v1 = vars.iter().position(|v| v.name == "v1");
        let mut order: Vec<usize> = (0..vars.len()).filter(|&i| Some(i) != v1).collect();
        order.sort_by(|&a, &b| vars[a].name.cmp(&vars[b].name));
        Ok(VariableTable { vars, order, v1 })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }
    pub fn index(&self, name: &str) -> Result<usize, RingError> {
        self.vars.iter().position(|v| v.name == name).ok_or_else(|| RingError::UnknownVariable(name.to_string()))
    }
    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn series_degree(&self, m: &Mono) -> i64 {
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == VarKind::PowerSeries)
            .map(|(i, _)| m.0[i] as i64)
            .sum()
    }

    pub fn internal_degree(&self, m: &Mono) -> i64 {
        self.vars.iter().enumerate().map(|(i, v)| v.degree * m.0[i] as i64).sum()
    }

    /// Sort key: power-series degree, v1 exponent, then the remaining
    /// exponents with variables taken alphabetically.
    pub fn order_key(&self, m: &Mono) -> Vec<i64> {
        let mut k = Vec::with_capacity(self.vars.len() + 1);
        k.push(self.series_degree(m));
        if let Some(i) = self.v1 {
            k.push(m.0[i] as i64);
        }
        k.extend(self.order.iter().map(|&i| m.0[i] as i64));
        k
    }
}

/// Exponent vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [i32; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn var(i: usize, e: i32) -> Mono {
        let mut m = Mono::ONE;
        m.0[i] = e;
        m
    }

    #[inline]
    pub fn mul(&self, o: &Mono) -> Result<Mono, RingError> {
        let mut r = [0i32; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = self.0[i].checked_add(o.0[i]).ok_or(RingError::Overflow)?;
        }
        Ok(Mono(r))
    }

    pub fn div(&self, o: &Mono) -> Result<Mono, RingError> {
        let mut r = [0i32; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = self.0[i].checked_sub(o.0[i]).ok_or(RingError::Overflow)?;
        }
        Ok(Mono(r))
    }

    pub fn pow(&self, k: i64) -> Result<Mono, RingError> {
        let k: i32 = k.try_into().map_err(|_| RingError::Overflow)?;
        let mut r = [0i32; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = self.0[i].checked_mul(k).ok_or(RingError::Overflow)?;
        }
        Ok(Mono(r))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Finite sum of monomials. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    terms: FxHashMap<Mono, E>,
}

impl<E> Default for Poly<E> {
    fn default() -> Self {
        Poly { terms: FxHashMap::default() }
    }
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn from_map(terms: FxHashMap<Mono, E>) -> Self {
        Poly { terms }
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &E)> {
        self.terms.iter()
    }
    pub fn get(&self, m: &Mono) -> Option<&E> {
        self.terms.get(m)
    }
    pub fn terms(&self) -> &FxHashMap<Mono, E> {
        &self.terms
    }
    pub fn into_terms(self) -> FxHashMap<Mono, E> {
        self.terms
    }
    /// Terms sorted by the raw exponent vector (for hashing-free comparison).
    pub fn sorted_terms(&self) -> Vec<(Mono, E)> {
        let mut v: Vec<(Mono, E)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect() }
    }
    pub fn map_monos(&self, f: impl Fn(&Mono) -> Mono) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect() }
    }
}
