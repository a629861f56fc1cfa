//! Page bookkeeping: E_1 = F_p[v2^±] ⊗ E(ζ, ξ) ⊗ F_p[v1] with ζ = g + g^p,
//! ξ = g^p − g; differentials d(v2^m) = c v1^r v2^b ξ from the lifts, and
//! d(v2^m ζ) = d(v2^m) ζ since ζ is a permanent cycle.

use crate::formulas::{b_exponent, geometric, n_t_closed_form, split_exponent};
use crate::lift::{build_z_lift, DifferentialRecord};
use crate::BocksteinError;
use fgl_engine::SigmaModel;
use hopf_cobar::{cobar_d, CobarWord, CohomologyTable, DegreeZeroHopf, SignConvention};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeGenerator {
    pub name: String,
    /// cohomological degree
    pub s: usize,
    /// v2-exponent
    pub t: i64,
    pub internal_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionGenerator {
    pub name: String,
    pub s: usize,
    pub t: i64,
    pub internal_degree: i64,
    /// v1^{exponent} kills the generator
    pub exponent: i64,
}

/// An F_p[v1]-module presented by free and cyclic torsion generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpV1Module {
    pub free: Vec<FreeGenerator>,
    pub torsion: Vec<TorsionGenerator>,
}

impl FpV1Module {
    pub fn free_rank(&self) -> usize {
        self.free.len()
    }
    pub fn exponent_of(&self, t: i64) -> Option<i64> {
        self.torsion.iter().find(|g| g.t == t).map(|g| g.exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unresolved {
    pub s: usize,
    pub t: i64,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BocksteinRun {
    pub p: u32,
    pub t_min: i64,
    pub t_max: i64,
    pub k_max: u32,
    pub truncation: i64,
    pub differentials: Vec<DifferentialRecord>,
    pub modules: BTreeMap<usize, FpV1Module>,
    pub unresolved: Vec<Unresolved>,
}

/// Internal degree of v2^t: 2t(p²−1).
pub fn v2_degree(p: u32, t: i64) -> i64 {
    2 * t * ((p * p) as i64 - 1)
}

/// The invariant E_1 input must be exterior on two classes in every
/// v2-power of the window.
fn check_e1(e1: &CohomologyTable, p: u32, t_min: i64, t_max: i64) -> Result<(), BocksteinError> {
    if e1.field != "F_p" || e1.p != p {
        return Err(BocksteinError::Parameter("E_1 must be the invariant cohomology over F_p for the same prime".into()));
    }
    if e1.s_max < 3 {
        return Err(BocksteinError::Parameter("E_1 table must reach s = 3".into()));
    }
    if e1.t_min > v2_degree(p, t_min) || e1.t_max < v2_degree(p, t_max) {
        return Err(BocksteinError::Parameter(format!(
            "E_1 table covers internal degrees [{}, {}], window needs [{}, {}]",
            e1.t_min,
            e1.t_max,
            v2_degree(p, t_min),
            v2_degree(p, t_max)
        )));
    }
    for t in t_min..=t_max {
        let dims: Vec<usize> = (0..=3).map(|s| e1.dimension(s, v2_degree(p, t))).collect();
        if dims != [1, 2, 1, 0] {
            return Err(BocksteinError::Structural(format!("E_1 at v2^{t} has dimensions {dims:?}")));
        }
    }
    Ok(())
}

/// g^p − g is a cocycle of the degree-zero cobar complex.
pub fn target_is_cocycle(hopf: &DegreeZeroHopf) -> bool {
    let g = hopf.generator(1);
    let gp = hopf.frobenius(g);
    cobar_d(hopf, &CobarWord::new(0, vec![g]), SignConvention::Standard).is_empty()
        && cobar_d(hopf, &CobarWord::new(0, vec![gp]), SignConvention::Standard).is_empty()
}

/// Differentials on v2^m for every m whose source or target lies in the
/// window (sources past t_max are reached by widening), then the E_∞ modules in cohomological degrees 0, 1, 2.
pub fn run_bockstein(
    model: &SigmaModel,
    e1: &CohomologyTable,
    t_min: i64,
    t_max: i64,
    k_max: u32,
) -> Result<BocksteinRun, BocksteinError> {
    let p = model.p();
    // an empty window yields the free part only
    check_e1(e1, p, t_min, t_max)?;
    let mut differentials = vec![];
    let mut unresolved = vec![];
    // widen by the reach of the longest differential considered
    let reach = geometric(p, k_max);
    for m in t_min..=(t_max + reach) {
        if m == 0 {
            continue;
        }
        let (s, k) = split_exponent(m, p)?;
        let b = b_exponent(s, k, p)?;
        let relevant = (t_min..=t_max).contains(&m) || (t_min..=t_max).contains(&b);
        if !relevant {
            continue;
        }
        if k > k_max {
            if (t_min..=t_max).contains(&m) {
                unresolved.push(Unresolved { s: 0, t: m, reason: format!("v2^{m} needs page k = {k} > k_max") });
            }
            continue;
        }
        differentials.push(build_z_lift(model, s, k)?.record);
    }
    let deg = |t: i64| v2_degree(p, t);
    let mut h0 = FpV1Module::default();
    let mut h1 = FpV1Module::default();
    let mut h2 = FpV1Module::default();
    h0.free.push(FreeGenerator { name: "1".into(), s: 0, t: 0, internal_degree: 0 });
    h1.free.push(FreeGenerator { name: "zeta".into(), s: 1, t: 0, internal_degree: 0 });
    for t in t_min..=t_max {
        if t != 0 && !differentials.iter().any(|r| r.source_exponent == t) && !unresolved.iter().any(|u| u.t == t) {
            unresolved.push(Unresolved { s: 0, t, reason: "no differential found".into() });
        }
        let hits: Vec<&DifferentialRecord> = differentials.iter().filter(|r| r.target_exponent == t).collect();
        match hits.as_slice() {
            [r] => {
                h1.torsion.push(TorsionGenerator {
                    name: format!("c_{t}"),
                    s: 1,
                    t,
                    internal_degree: deg(t),
                    exponent: r.page,
                });
                h2.torsion.push(TorsionGenerator {
                    name: format!("c_{t} zeta"),
                    s: 2,
                    t,
                    internal_degree: deg(t),
                    exponent: r.page,
                });
            }
            [] => unresolved.push(Unresolved { s: 1, t, reason: format!("v2^{t} xi is not hit by a page <= k_max") }),
            many => {
                return Err(BocksteinError::Structural(format!(
                    "v2^{t} xi is hit by several differentials: {:?}",
                    many.iter().map(|r| r.source_exponent).collect::<Vec<_>>()
                )))
            }
        }
    }
    let modules = BTreeMap::from([(0, h0), (1, h1), (2, h2)]);
    Ok(BocksteinRun { p, t_min, t_max, k_max, truncation: model.truncation(), differentials, modules, unresolved })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    Match,
    Mismatch,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckEntry {
    pub t: i64,
    pub engine: Option<i64>,
    pub closed_form: i64,
    pub status: CheckStatus,
    pub trail: Vec<DifferentialRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub p: u32,
    pub entries: Vec<CrossCheckEntry>,
    /// all entries match and nothing is unresolved
    pub passed: bool,
}

/// Engine torsion exponents against the closed form, t by t.
pub fn cross_check(run: &BocksteinRun) -> Result<CrossCheck, BocksteinError> {
    let h1 = &run.modules[&1];
    let mut entries = vec![];
    for t in run.t_min..=run.t_max {
        let closed = n_t_closed_form(t, run.p)?;
        let engine = h1.exponent_of(t);
        let trail: Vec<DifferentialRecord> =
            run.differentials.iter().filter(|r| r.target_exponent == t || r.source_exponent == t).cloned().collect();
        let status = match engine {
            None => CheckStatus::Unresolved,
            Some(e) if e == closed => CheckStatus::Match,
            Some(_) => CheckStatus::Mismatch,
        };
        entries.push(CrossCheckEntry { t, engine, closed_form: closed, status, trail });
    }
    let passed = entries.iter().all(|e| e.status == CheckStatus::Match) && run.unresolved.is_empty();
    Ok(CrossCheck { p: run.p, entries, passed })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsenessReport {
    /// every class of E_∞ sits in internal degree divisible by 2(p−1)
    pub degrees_divisible: bool,
    /// E_1, hence E_∞, vanishes for s ≥ 3
    pub vanishes_above_two: bool,
}

pub fn sparseness(run: &BocksteinRun, e1: &CohomologyTable) -> SparsenessReport {
    let q = 2 * (run.p as i64 - 1);
    let degrees_divisible = run.modules.values().all(|m| {
        m.free.iter().all(|g| g.internal_degree % q == 0) && m.torsion.iter().all(|g| g.internal_degree % q == 0)
    }) && (v2_degree(run.p, run.t_min)..=v2_degree(run.p, run.t_max))
        .all(|t| t % q == 0 || (0..=e1.s_max).all(|s| e1.dimension(s, t) == 0));
    let vanishes_above_two = run.modules.keys().all(|&s| s <= 2)
        && (3..=e1.s_max).all(|s| e1.entries.iter().filter(|e| e.bidegree.0 == s).all(|e| e.dimension == 0));
    SparsenessReport { degrees_divisible, vanishes_above_two }
}
