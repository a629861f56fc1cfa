//! F(x,y) = exp(log x + log y), computed over the rationals and reduced
//! mod p after a term-by-term integrality check.

use crate::bp::{bp_table, max_generator};
use crate::log::{log_coeffs, LogCoefficients};
use crate::FglError;
use ehh2_core::field::{reduce_rational, CoeffRing, PrimeField};
use ehh2_core::{Mono, Poly, QuotientContext, Rationals};
use num_rational::BigRational;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

type Fp = Poly<u32>;

#[derive(Debug, Clone)]
pub struct FormalGroupLaw {
    p: u32,
    cap: i64,
    log: LogCoefficients,
    ctx: QuotientContext<PrimeField>,
    series: Fp,
    /// (i, j, coefficient of x^i y^j) sorted by (i, j); coefficients are
    /// polynomials in v1..vm inside `ctx`.
    coeffs: Vec<(i32, i32, Fp)>,
}

fn x_part(f: &Poly<BigRational>, var: usize, n: i32) -> Poly<BigRational> {
    f.filter(|m| m.0[var] == n).map_monos(|m| {
        let mut q = *m;
        q.0[var] = 0;
        q
    })
}

impl FormalGroupLaw {
    /// The law to power-series degree `cap`, with generators v1..vm for the
    /// largest m with p^m <= cap.
    pub fn new(p: u32, cap: i64) -> Result<Self, FglError> {
        Self::build(p, cap, None)
    }

    /// The image of the law under v_k ↦ 0 for every k not in `keep`.
    pub fn specialized(p: u32, cap: i64, keep: &[usize]) -> Result<Self, FglError> {
        Self::build(p, cap, Some(keep))
    }

    fn build(p: u32, cap: i64, keep: Option<&[usize]>) -> Result<Self, FglError> {
        ehh2_core::field::check_odd_prime(p)?;
        if cap < p as i64 {
            return Err(FglError::InsufficientCap { needed: p as i64, have: cap });
        }
        let m = max_generator(p, cap);
        let log = log_coeffs(p, m)?;
        let table = bp_table(p, m, 0, &["x", "y"])?;
        let qctx = QuotientContext::builder(Rationals, table.clone()).degree_cap(cap).build()?;
        let rational = rational_law(&qctx, &log, cap, keep)?;
        let field = PrimeField::new(p)?;
        let ctx = QuotientContext::builder(field, table).degree_cap(cap).build()?;
        let mut acc = FxHashMap::default();
        for (mono, c) in rational.iter() {
            let r = reduce_rational(c, p)
                .ok_or_else(|| FglError::NonIntegral(format!("{c} on {}", mono_label(&ctx, mono))))?;
            if r != 0 {
                acc.insert(*mono, r);
            }
        }
        let series = Poly::from_map(acc);
        let (xi, yi) = (m, m + 1);
        let mut groups: FxHashMap<(i32, i32), FxHashMap<Mono, u32>> = FxHashMap::default();
        for (mono, c) in series.iter() {
            let mut q = *mono;
            let key = (q.0[xi], q.0[yi]);
            q.0[xi] = 0;
            q.0[yi] = 0;
            groups.entry(key).or_default().insert(q, *c);
        }
        let mut coeffs: Vec<(i32, i32, Fp)> =
            groups.into_iter().map(|((i, j), t)| (i, j, Poly::from_map(t))).collect();
        coeffs.sort_by_key(|c| (c.0, c.1));
        Ok(FormalGroupLaw { p, cap, log, ctx, series, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn cap(&self) -> i64 {
        self.cap
    }
    pub fn generators(&self) -> usize {
        self.log.generators()
    }
    pub fn log(&self) -> &LogCoefficients {
        &self.log
    }
    /// Context with variables v1..vm, x, y.
    pub fn ctx(&self) -> &QuotientContext<PrimeField> {
        &self.ctx
    }
    pub fn series(&self) -> &Fp {
        &self.series
    }
    pub fn coefficients(&self) -> &[(i32, i32, Fp)] {
        &self.coeffs
    }
    pub fn coefficient(&self, i: i32, j: i32) -> Fp {
        self.coeffs.iter().find(|c| c.0 == i && c.1 == j).map(|c| c.2.clone()).unwrap_or_default()
    }

    /// Prepare evaluation of the law inside another context. Generators
    /// v_k missing from `target` are sent to zero.
    pub fn adder<'a>(&'a self, target: &'a QuotientContext<PrimeField>) -> Result<FglAdder<'a>, FglError> {
        FglAdder::new(self, target)
    }
}

/// Number of nonzero terms left by each axiom; all zero for a valid law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct AxiomResiduals {
    pub unit: usize,
    pub commutativity: usize,
    pub associativity: usize,
}

impl AxiomResiduals {
    pub fn holds(&self) -> bool {
        self.unit == 0 && self.commutativity == 0 && self.associativity == 0
    }
}

impl FormalGroupLaw {
    /// F(x,0) = x, F(0,y) = y, F(x,y) = F(y,x) and
    /// F(F(x,y),z) = F(x,F(y,z)), all to the degree cap.
    pub fn axiom_residuals(&self) -> Result<AxiomResiduals, FglError> {
        let m = self.generators();
        let (xi, yi) = (m, m + 1);
        let zero_y = self.series.filter(|mm| mm.0[yi] == 0);
        let zero_x = self.series.filter(|mm| mm.0[xi] == 0);
        let x = self.ctx.var("x")?;
        let y = self.ctx.var("y")?;
        let unit = self.ctx.sub(&zero_y, &x).len() + self.ctx.sub(&zero_x, &y).len();
        let swapped = self.series.map_monos(|mm| {
            let mut q = *mm;
            q.0.swap(xi, yi);
            q
        });
        let commutativity = self.ctx.sub(&self.series, &swapped).len();
        let table = bp_table(self.p, m, 0, &["x", "y", "z"])?;
        let tri = QuotientContext::builder(*self.ctx.ring(), table).degree_cap(self.cap).build()?;
        let adder = self.adder(&tri)?;
        let (x, y, z) = (tri.var("x")?, tri.var("y")?, tri.var("z")?);
        let left = adder.add(&adder.add(&x, &y)?, &z)?;
        let right = adder.add(&x, &adder.add(&y, &z)?)?;
        let associativity = tri.sub(&left, &right).len();
        Ok(AxiomResiduals { unit, commutativity, associativity })
    }
}

fn mono_label<R: CoeffRing>(ctx: &QuotientContext<R>, m: &Mono) -> String {
    let parts: Vec<String> = (0..ctx.vars().len())
        .filter(|&i| m.0[i] != 0)
        .map(|i| format!("{}^{}", ctx.vars().name(i), m.0[i]))
        .collect();
    parts.join(" ")
}

fn rational_law(
    ctx: &QuotientContext<Rationals>,
    log: &LogCoefficients,
    cap: i64,
    keep: Option<&[usize]>,
) -> Result<Poly<BigRational>, FglError> {
    let m = log.generators();
    let (xi, yi) = (m, m + 1);
    let p = log.p() as i64;
    let one = BigRational::from_integer(1.into());
    let log_in = |var: usize| -> Result<Poly<BigRational>, FglError> {
        let mut parts = vec![];
        for k in 0..=m {
            let d = p.pow(k as u32);
            if d <= cap {
                let lk = match keep {
                    Some(keep) => log.get(k).filter(|mono| (0..m).all(|i| mono.0[i] == 0 || keep.contains(&(i + 1)))),
                    None => log.get(k).clone(),
                };
                parts.push(ctx.mul_term(&lk, &Mono::var(var, d as i32), &one)?);
            }
        }
        Ok(ctx.sum(parts.iter()))
    };
    let lx = log_in(xi)?;
    let ly = log_in(yi)?;
    let n = cap as usize;
    // exp coefficients: [x^n] Σ_k e_k L(x)^k = 0 for n >= 2
    let mut lpows = vec![ctx.one(), lx.clone()];
    for k in 2..n {
        let next = ctx.mul(&lpows[k - 1], &lx)?;
        lpows.push(next);
    }
    let mut e: Vec<Poly<BigRational>> = vec![Poly::zero(); n + 1];
    e[1] = ctx.one();
    for d in 2..=n {
        let parts: Vec<Poly<BigRational>> = (1..d)
            .into_par_iter()
            .filter(|&k| !e[k].is_zero())
            .map(|k| ctx.mul(&e[k], &x_part(&lpows[k], xi, d as i32)))
            .collect::<Result<_, _>>()?;
        e[d] = ctx.neg(&ctx.sum(parts.iter()));
    }
    drop(lpows);
    // Horner: F = S(e_1 + S(e_2 + ...)), level n only needs degree <= cap - n
    let s = ctx.add(&lx, &ly);
    let mut h = e[n].clone();
    for k in (1..n).rev() {
        let level = ctx.with_degree_cap(Some(cap - k as i64));
        let sh = par_mul(&level, &s, &h)?;
        h = ctx.add(&e[k], &sh);
    }
    Ok(ctx.mul(&s, &h)?)
}

/// f·g with g split into chunks multiplied in parallel.
pub(crate) fn par_mul<R: CoeffRing>(ctx: &QuotientContext<R>, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<Poly<R::Elem>, FglError>
where
    R: Sync,
    R::Elem: Send + Sync,
{
    const CHUNK: usize = 4096;
    if g.len() <= CHUNK {
        return Ok(ctx.mul(f, g)?);
    }
    let terms: Vec<(Mono, R::Elem)> = g.sorted_terms();
    let parts: Vec<Poly<R::Elem>> = terms
        .par_chunks(CHUNK)
        .map(|c| ctx.mul(f, &Poly::from_map(c.iter().cloned().collect())))
        .collect::<Result<_, _>>()?;
    Ok(ctx.sum(parts.iter()))
}

/// The law's coefficients transported into a target context.
pub struct FglAdder<'a> {
    target: &'a QuotientContext<PrimeField>,
    cap: i64,
    rows: Vec<(i32, Vec<(i32, Fp)>)>,
}

impl<'a> FglAdder<'a> {
    fn new(law: &'a FormalGroupLaw, target: &'a QuotientContext<PrimeField>) -> Result<Self, FglError> {
        let cap = target.degree_cap().ok_or(FglError::InsufficientCap { needed: 1, have: i64::MAX })?;
        if cap > law.cap {
            return Err(FglError::InsufficientCap { needed: cap, have: law.cap });
        }
        let m = law.generators();
        let map: Vec<Option<usize>> = (1..=m).map(|k| target.vars().index(&format!("v{k}")).ok()).collect();
        let transport = |c: &Fp| -> Result<Fp, FglError> {
            let mut acc = FxHashMap::default();
            'terms: for (mono, v) in c.iter() {
                let mut q = Mono::ONE;
                for (k, slot) in map.iter().enumerate() {
                    let e = mono.0[k];
                    if e == 0 {
                        continue;
                    }
                    match slot {
                        Some(i) => q.0[*i] = e,
                        None => continue 'terms,
                    }
                }
                acc.insert(q, *v);
            }
            Ok(target.normalize(&Poly::from_map(acc))?)
        };
        let mut rows: Vec<(i32, Vec<(i32, Fp)>)> = vec![];
        for (i, j, c) in &law.coeffs {
            if (*i + *j) as i64 > cap {
                continue;
            }
            let c = transport(c)?;
            if c.is_zero() {
                continue;
            }
            match rows.last_mut() {
                Some((ri, row)) if ri == i => row.push((*j, c)),
                _ => rows.push((*i, vec![(*j, c)])),
            }
        }
        Ok(FglAdder { target, cap, rows })
    }

    pub fn target(&self) -> &QuotientContext<PrimeField> {
        self.target
    }

    fn series_valuation(&self, a: &Fp) -> Option<i64> {
        a.iter().map(|(m, _)| self.target.vars().series_degree(m)).min()
    }

    /// a^0..a^n, using a^(qp+r) = a^r (a^q)^p.
    fn powers(&self, a: &Fp, n: usize) -> Result<Vec<Fp>, FglError> {
        let ctx = self.target;
        let p = ctx.ring().p() as usize;
        let mut pw = vec![ctx.one()];
        for i in 1..=n {
            let next = if i < p {
                ctx.mul(&pw[i - 1], a)?
            } else {
                let f = ctx.frobenius(&pw[i / p], 1)?;
                if i % p == 0 {
                    f
                } else {
                    ctx.mul(&pw[i % p], &f)?
                }
            };
            pw.push(next);
        }
        Ok(pw)
    }

    /// a +_F b.
    pub fn add(&self, a: &Fp, b: &Fp) -> Result<Fp, FglError> {
        let (va, vb) = match (self.series_valuation(a), self.series_valuation(b)) {
            (None, _) => return Ok(b.clone()),
            (_, None) => return Ok(a.clone()),
            (Some(x), Some(y)) => (x, y),
        };
        if va < 1 || vb < 1 {
            return Err(FglError::NotPositive);
        }
        let ctx = self.target;
        let pa = self.powers(a, (self.cap / va) as usize)?;
        let pb = self.powers(b, (self.cap / vb) as usize)?;
        let parts: Vec<Fp> = self
            .rows
            .par_iter()
            .filter(|(i, _)| *i as i64 * va <= self.cap)
            .map(|(i, row)| -> Result<Fp, FglError> {
                let mut inner = vec![];
                for (j, c) in row {
                    if *i as i64 * va + *j as i64 * vb <= self.cap {
                        inner.push(ctx.mul(c, &pb[*j as usize])?);
                    }
                }
                let inner = ctx.sum(inner.iter());
                Ok(ctx.mul(&pa[*i as usize], &inner)?)
            })
            .collect::<Result<_, _>>()?;
        Ok(ctx.sum(parts.iter()))
    }

    /// Left fold of +_F; zero terms are skipped.
    pub fn sum(&self, terms: &[Fp]) -> Result<Fp, FglError> {
        let mut acc = Poly::zero();
        for t in terms {
            acc = self.add(&acc, t)?;
        }
        Ok(acc)
    }
}

pub fn fgl_add(law: &FormalGroupLaw, ctx: &QuotientContext<PrimeField>, a: &Fp, b: &Fp) -> Result<Fp, FglError> {
    law.adder(ctx)?.add(a, b)
}

pub fn formal_sum(law: &FormalGroupLaw, ctx: &QuotientContext<PrimeField>, terms: &[Fp]) -> Result<Fp, FglError> {
    law.adder(ctx)?.sum(terms)
}
