//! π_{t−s} read off from H^{s,t} by sparseness: v1^j x sits in topological
//! degree |x| + 2j(p−1) − s.

use crate::formulas::n_t_closed_form;
use crate::run::{v2_degree, FpV1Module};
use crate::BocksteinError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    /// generator name, e.g. "zeta" or "c_-4"
    pub source: String,
    pub s: usize,
    pub t: i64,
    pub j: i64,
    /// n_t for torsion sources, None for free ones
    pub lifetime: Option<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyChart {
    pub p: u32,
    pub degree_min: i64,
    pub degree_max: i64,
    pub t_min: i64,
    pub t_max: i64,
    pub degrees: BTreeMap<i64, Vec<Contribution>>,
}

impl HomotopyChart {
    pub fn contributions(&self, degree: i64) -> &[Contribution] {
        self.degrees.get(&degree).map_or(&[], |v| v.as_slice())
    }
    pub fn is_empty(&self) -> bool {
        self.degrees.values().all(|v| v.is_empty())
    }
}

struct Source {
    name: String,
    s: usize,
    t: i64,
    internal: i64,
    lifetime: Option<i64>,
}

fn chart(p: u32, dmin: i64, dmax: i64, tmin: i64, tmax: i64, sources: Vec<Source>) -> HomotopyChart {
    let step = 2 * (p as i64 - 1);
    let mut degrees: BTreeMap<i64, Vec<Contribution>> = (dmin..=dmax).map(|d| (d, vec![])).collect();
    for src in sources {
        let base = src.internal - src.s as i64;
        let j_max = src.lifetime.map_or(i64::MAX, |n| n - 1);
        // smallest j ≥ 0 with base + j·step ≥ dmin
        let mut j = if base >= dmin { 0 } else { (dmin - base + step - 1) / step };
        while j <= j_max {
            let d = base + j * step;
            if d > dmax {
                break;
            }
            degrees.get_mut(&d).unwrap().push(Contribution {
                source: src.name.clone(),
                s: src.s,
                t: src.t,
                j,
                lifetime: src.lifetime,
            });
            j += 1;
        }
    }
    for v in degrees.values_mut() {
        v.sort_by(|a, b| (a.s, a.t, a.j, &a.source).cmp(&(b.s, b.t, b.j, &b.source)));
    }
    HomotopyChart { p, degree_min: dmin, degree_max: dmax, t_min: tmin, t_max: tmax, degrees }
}

/// The chart from the closed-form answer, torsion families c_t, c_t ζ for
/// t ∈ [t_min, t_max]. An empty degree range gives an empty chart.
pub fn homotopy_groups(
    p: u32,
    degree_min: i64,
    degree_max: i64,
    t_min: i64,
    t_max: i64,
) -> Result<HomotopyChart, BocksteinError> {
    ehh2_core::field::check_odd_prime(p).map_err(|e| BocksteinError::Parameter(e.to_string()))?;
    let mut sources = vec![
        Source { name: "1".into(), s: 0, t: 0, internal: 0, lifetime: None },
        Source { name: "zeta".into(), s: 1, t: 0, internal: 0, lifetime: None },
    ];
    for t in t_min..=t_max {
        let n = n_t_closed_form(t, p)?;
        let internal = v2_degree(p, t);
        sources.push(Source { name: format!("c_{t}"), s: 1, t, internal, lifetime: Some(n) });
        sources.push(Source { name: format!("c_{t} zeta"), s: 2, t, internal, lifetime: Some(n) });
    }
    Ok(chart(p, degree_min, degree_max, t_min, t_max, sources))
}

/// The chart from engine-computed modules.
pub fn homotopy_from_modules(
    p: u32,
    modules: &BTreeMap<usize, FpV1Module>,
    degree_min: i64,
    degree_max: i64,
) -> HomotopyChart {
    let mut sources = vec![];
    let (mut tmin, mut tmax) = (0, 0);
    for m in modules.values() {
        for g in &m.free {
            sources.push(Source { name: g.name.clone(), s: g.s, t: g.t, internal: g.internal_degree, lifetime: None });
        }
        for g in &m.torsion {
            tmin = tmin.min(g.t);
            tmax = tmax.max(g.t);
            sources.push(Source {
                name: g.name.clone(),
                s: g.s,
                t: g.t,
                internal: g.internal_degree,
                lifetime: Some(g.exponent),
            });
        }
    }
    chart(p, degree_min, degree_max, tmin, tmax, sources)
}
