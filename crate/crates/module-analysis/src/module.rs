//! A module is a list of generator families. Each family is an arithmetic
//! progression of degrees start, start + step, … (finitely or infinitely
//! many), all free or all torsion with exponents cycling through a pattern.

use crate::ModuleError;
use bockstein_engine::FpV1Module;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exponents {
    Free,
    /// the i-th generator is killed by ν^{pattern[i mod len]}
    Periodic(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub name: String,
    pub start: i64,
    pub step: i64,
    /// None for an infinite progression
    pub count: Option<u64>,
    pub exponents: Exponents,
}

impl Family {
    pub fn single(name: &str, degree: i64, exponent: Option<i64>) -> Self {
        Family {
            name: name.into(),
            start: degree,
            step: 0,
            count: Some(1),
            exponents: exponent.map_or(Exponents::Free, |e| Exponents::Periodic(vec![e])),
        }
    }

    pub fn is_free(&self) -> bool {
        self.exponents == Exponents::Free
    }

    fn exponent(&self, i: u64) -> Option<i64> {
        match &self.exponents {
            Exponents::Free => None,
            Exponents::Periodic(v) => Some(v[(i % v.len() as u64) as usize]),
        }
    }

    fn degree(&self, i: u64) -> i64 {
        self.start + i as i64 * self.step
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteFpNuModule {
    pub nu_degree: i64,
    pub families: Vec<Family>,
}

impl CompleteFpNuModule {
    /// Checks ν has positive even degree, exponents are positive and every
    /// degree holds finitely many generators.
    pub fn new(nu_degree: i64, families: Vec<Family>) -> Result<Self, ModuleError> {
        if nu_degree <= 0 || nu_degree % 2 != 0 {
            return Err(ModuleError::Contract(format!("degree of nu must be positive and even, got {nu_degree}")));
        }
        for f in &families {
            if let Exponents::Periodic(v) = &f.exponents {
                if v.is_empty() || v.iter().any(|&e| e <= 0) {
                    return Err(ModuleError::Contract(format!("family {} has a non-positive exponent", f.name)));
                }
            }
            if f.count.is_none() && f.step == 0 {
                return Err(ModuleError::Contract(format!(
                    "family {} puts infinitely many generators in degree {}",
                    f.name, f.start
                )));
            }
        }
        Ok(CompleteFpNuModule { nu_degree, families })
    }

    /// dim_{F_p} M_d, None when infinite.
    pub fn dimension(&self, d: i64) -> Option<u64> {
        let mut total = 0u64;
        for f in &self.families {
            total += family_dimension(f, self.nu_degree, d)?;
        }
        Some(total)
    }

    /// dim (M/νM)_d: the generators in degree d.
    pub fn generators_in(&self, d: i64) -> u64 {
        self.families.iter().map(|f| generator_count(f, d)).sum()
    }
}

fn generator_count(f: &Family, d: i64) -> u64 {
    if f.step == 0 {
        return if f.start == d { f.count.unwrap_or(0) } else { 0 };
    }
    let off = d - f.start;
    if off % f.step != 0 || off / f.step < 0 {
        return 0;
    }
    let i = (off / f.step) as u64;
    f.count.map_or(1, |c| (i < c) as u64)
}

fn family_dimension(f: &Family, nu: i64, d: i64) -> Option<u64> {
    let hit = |i: u64| {
        let off = d - f.degree(i);
        off >= 0 && off % nu == 0 && f.exponent(i).is_none_or(|e| off / nu < e)
    };
    let range: u64 = match f.count {
        Some(c) => c,
        None if f.step > 0 => {
            if d < f.start {
                return Some(0);
            }
            ((d - f.start) / f.step) as u64 + 1
        }
        None => {
            // degrees decrease without bound
            let period = match &f.exponents {
                Exponents::Free => {
                    // from the first generator at or below d, residues mod ν repeat with this period
                    let period = (nu / gcd(nu, -f.step)) as u64;
                    let first = if f.start <= d { 0 } else { ((f.start - d) as u64).div_ceil((-f.step) as u64) };
                    return if (first..first + period).any(hit) { None } else { Some(0) };
                }
                Exponents::Periodic(v) => v.iter().max().copied().unwrap(),
            };
            // below d − (period−1)ν nothing reaches d
            let lowest = d - (period - 1) * nu;
            if f.start < lowest {
                return Some(0);
            }
            ((f.start - lowest) / -f.step) as u64 + 1
        }
    };
    Some((0..range).filter(|&i| hit(i)).count() as u64)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub nu_degree: i64,
    /// shifts n_α of the finitely listed free summands
    pub free_shifts: Vec<i64>,
    /// (m_β, i_β): a copy of Σ^{m_β} F_p[ν]/ν^{i_β}
    pub torsion: Vec<(i64, i64)>,
    pub infinite_free: Vec<Family>,
    pub infinite_torsion: Vec<Family>,
    /// rank of M modulo the closure of its torsion, None when infinite
    pub free_rank: Option<usize>,
}

impl DecompositionResult {
    /// The module rebuilt from the summands.
    pub fn recombine(&self) -> CompleteFpNuModule {
        let mut families: Vec<Family> =
            self.free_shifts.iter().enumerate().map(|(i, &n)| Family::single(&format!("free{i}"), n, None)).collect();
        families.extend(
            self.torsion.iter().enumerate().map(|(i, &(m, e))| Family::single(&format!("tors{i}"), m, Some(e))),
        );
        families.extend(self.infinite_free.iter().cloned());
        families.extend(self.infinite_torsion.iter().cloned());
        CompleteFpNuModule { nu_degree: self.nu_degree, families }
    }
}

/// M ≅ ∏ Σ^{n_α} F_p[ν] × ∏ Σ^{m_β} F_p[ν]/ν^{i_β}; the closure of the
/// torsion is the full product of the torsion summands.
pub fn decompose(m: &CompleteFpNuModule) -> Result<DecompositionResult, ModuleError> {
    let m = CompleteFpNuModule::new(m.nu_degree, m.families.clone())?;
    let mut out = DecompositionResult {
        nu_degree: m.nu_degree,
        free_shifts: vec![],
        torsion: vec![],
        infinite_free: vec![],
        infinite_torsion: vec![],
        free_rank: Some(0),
    };
    for f in &m.families {
        match (f.count, f.is_free()) {
            (None, true) => out.infinite_free.push(f.clone()),
            (None, false) => out.infinite_torsion.push(f.clone()),
            (Some(c), true) => out.free_shifts.extend((0..c).map(|i| f.degree(i))),
            (Some(c), false) => out.torsion.extend((0..c).map(|i| (f.degree(i), f.exponent(i).unwrap()))),
        }
    }
    out.free_shifts.sort_unstable();
    out.torsion.sort_unstable();
    out.free_rank = out.infinite_free.is_empty().then_some(out.free_shifts.len());
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteRank {
    pub finite: bool,
    /// None when the free part is infinite
    pub rank: Option<usize>,
}

/// M is essentially of finite rank when M/T̄ is finitely generated, i.e.
/// the free multiset is finite.
pub fn essentially_finite_rank(m: &CompleteFpNuModule) -> Result<FiniteRank, ModuleError> {
    let d = decompose(m)?;
    Ok(FiniteRank { finite: d.free_rank.is_some(), rank: d.free_rank })
}

/// A Bockstein module with ν = v1 of degree 2(p−1), graded by internal degree.
pub fn from_fpv1(m: &FpV1Module, p: u32) -> Result<CompleteFpNuModule, ModuleError> {
    let mut families: Vec<Family> = m.free.iter().map(|g| Family::single(&g.name, g.internal_degree, None)).collect();
    families.extend(m.torsion.iter().map(|g| Family::single(&g.name, g.internal_degree, Some(g.exponent))));
    CompleteFpNuModule::new(2 * (p as i64 - 1), families)
}
