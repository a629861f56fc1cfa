//! The combinatorial consequence of a Brown-Comenetz self-duality shift c:
//! for each k there would be d_k ∈ H^{2, 6+2k(p−1)−c}(E_2*M(p, v1^k)) with
//! v1^{k−1} d_k ≠ 0, where H²(E_2*M(p, v1^k)) = H²/v1^k.
//!
//! In H²/v1^k a summand F_p[v1]/v1^{n} {x} becomes F_p[v1]/v1^{min(n,k)} {x},
//! so v1^{k−1}(v1^j x) ≠ 0 exactly when j = 0 and n ≥ k. A degree admits a
//! qualifying d_k iff some generator of exponent ≥ k (or free) sits in it.

use crate::ModuleError;
use bockstein_engine::{v2_degree, FpV1Module};
use serde::{Deserialize, Serialize};
use std::ops::RangeInclusive;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcEntry {
    pub c: i64,
    /// smallest k in range with no qualifying d_k
    pub failing_k: Option<u32>,
    /// the k in range where a qualifying d_k exists
    pub satisfied_k: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcReport {
    pub p: u32,
    /// degree conventions the search depends on
    pub normalization: String,
    pub entries: Vec<BcEntry>,
    /// shifts with no failing k in range: obstruction not found, not a proof of duality
    pub not_found: Vec<i64>,
}

/// Internal degree probed for shift c at level k.
pub fn probe_degree(p: u32, c: i64, k: u32) -> i64 {
    6 + 2 * k as i64 * (p as i64 - 1) - c
}

/// `h2` must hold every generator in internal degrees v2^t, t ∈ `covered`.
pub fn bc_shift_obstruction(
    h2: &FpV1Module,
    covered: RangeInclusive<i64>,
    p: u32,
    c_range: RangeInclusive<i64>,
    k_range: RangeInclusive<u32>,
) -> Result<BcReport, ModuleError> {
    let normalization = format!(
        "|v1| = {}, |c_t zeta| = (2, 2t(p^2-1)), probe degree 6 + 2k(p-1) - c",
        2 * (p as i64 - 1)
    );
    let mut entries = vec![];
    let mut not_found = vec![];
    if c_range.is_empty() || k_range.is_empty() {
        return Ok(BcReport { p, normalization, entries, not_found });
    }
    let need_min = probe_degree(p, *c_range.end(), *k_range.start());
    let need_max = probe_degree(p, *c_range.start(), *k_range.end());
    let (have_min, have_max) = (v2_degree(p, *covered.start()), v2_degree(p, *covered.end()));
    if need_min < have_min || need_max > have_max {
        return Err(ModuleError::InsufficientWindow { need_min, need_max, have_min, have_max });
    }
    let qualifies = |d: i64, k: u32| {
        h2.free.iter().any(|g| g.internal_degree == d)
            || h2.torsion.iter().any(|g| g.internal_degree == d && g.exponent >= k as i64)
    };
    for c in c_range {
        let satisfied_k: Vec<u32> = k_range.clone().filter(|&k| qualifies(probe_degree(p, c, k), k)).collect();
        let failing_k = k_range.clone().find(|k| !satisfied_k.contains(k));
        if failing_k.is_none() {
            not_found.push(c);
        }
        entries.push(BcEntry { c, failing_k, satisfied_k });
    }
    Ok(BcReport { p, normalization, entries, not_found })
}
