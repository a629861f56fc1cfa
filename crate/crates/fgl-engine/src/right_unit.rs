//! η_R(v_j) mod p from Σ^F t_i η_R(v_j)^{p^i} = Σ^F v_i t_j^{p^i}, solved
//! one power-series degree p^m at a time.

use crate::bp::bp_table;
use crate::law::FormalGroupLaw;
use crate::FglError;
use ehh2_core::field::PrimeField;
use ehh2_core::{Mono, Poly, QuotientContext};

type Fp = Poly<u32>;

#[derive(Debug, Clone)]
pub struct RightUnits {
    p: u32,
    /// v1..vM, t1..tM, x
    series_ctx: QuotientContext<PrimeField>,
    /// v1..vM, t1..tM
    ctx: QuotientContext<PrimeField>,
    xi: usize,
    etas: Vec<Fp>,
}

fn x_coefficient(f: &Fp, xi: usize, d: i32) -> Fp {
    f.filter(|m| m.0[xi] == d).map_monos(|m| {
        let mut q = *m;
        q.0[xi] = 0;
        q
    })
}

impl RightUnits {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn count(&self) -> usize {
        self.etas.len()
    }
    /// Ring of v1..vM, t1..tM holding the solutions.
    pub fn ctx(&self) -> &QuotientContext<PrimeField> {
        &self.ctx
    }
    /// η_R(v_j) mod p.
    pub fn eta(&self, j: usize) -> Result<&Fp, FglError> {
        if j == 0 || j > self.etas.len() {
            return Err(FglError::InsufficientCap {
                needed: (self.p as i64).pow(j as u32),
                have: (self.p as i64).pow(self.etas.len() as u32),
            });
        }
        Ok(&self.etas[j - 1])
    }

    fn terms(&self, m: usize, lhs: bool, etas: &[Fp]) -> Result<Vec<Fp>, FglError> {
        let ctx = &self.series_ctx;
        let xi = self.xi;
        let p = self.p as i64;
        let t = |i: usize| -> Result<Fp, FglError> {
            Ok(if i == 0 { ctx.one() } else { ctx.mono(&[(&format!("t{i}"), 1)])? })
        };
        let mut out = vec![];
        for i in 0..=m {
            for j in 0..=m - i {
                let xm = Mono::var(xi, p.pow((i + j) as u32) as i32);
                let body = if lhs {
                    if j == 0 || j > etas.len() {
                        continue;
                    }
                    ctx.mul(&t(i)?, &ctx.frobenius(&etas[j - 1], i as u32)?)?
                } else {
                    if i == 0 {
                        continue;
                    }
                    let v = ctx.mono(&[(&format!("v{i}"), 1)])?;
                    ctx.mul(&v, &ctx.frobenius(&t(j)?, i as u32)?)?
                };
                out.push(ctx.mul_term(&body, &xm, &1)?);
            }
        }
        // lowest x-degree first keeps the fold cheap
        out.sort_by_key(|f| f.iter().map(|(m, _)| m.0[xi]).min().unwrap_or(0));
        Ok(out)
    }

    /// Both sides of the defining relation with every solved η_R inserted,
    /// to degree p^M; their difference is the residual.
    pub fn residual(&self, law: &FormalGroupLaw) -> Result<Fp, FglError> {
        let m = self.etas.len();
        let lhs = self.terms(m, true, &self.etas)?;
        let rhs = self.terms(m, false, &self.etas)?;
        let adder = law.adder(&self.series_ctx)?;
        Ok(self.series_ctx.sub(&adder.sum(&lhs)?, &adder.sum(&rhs)?))
    }
}

/// Solve η_R(v_1..v_count) mod p. Needs the law to degree p^count.
pub fn solve_right_units(law: &FormalGroupLaw, count: usize) -> Result<RightUnits, FglError> {
    let p = law.p();
    let needed = (p as i64).pow(count as u32);
    if count == 0 || needed > law.cap() {
        return Err(FglError::InsufficientCap { needed, have: law.cap() });
    }
    let field = PrimeField::new(p)?;
    let table = bp_table(p, count, count, &["x"])?;
    let series_ctx = QuotientContext::builder(field, table).degree_cap(needed).build()?;
    let ctx = QuotientContext::plain(field, bp_table(p, count, count, &[])?);
    let xi = 2 * count;
    let mut units = RightUnits { p, series_ctx: series_ctx.clone(), ctx, xi, etas: vec![] };
    for m in 1..=count {
        let stage_cap = (p as i64).pow(m as u32);
        let stage = series_ctx.with_degree_cap(Some(stage_cap));
        units.series_ctx = stage.clone();
        let lhs = units.terms(m, true, &units.etas)?;
        let rhs = units.terms(m, false, &units.etas)?;
        let adder = law.adder(&stage)?;
        let diff = stage.sub(&adder.sum(&rhs)?, &adder.sum(&lhs)?);
        let top = stage_cap as i32;
        let low: Vec<i32> = diff.iter().map(|(mm, _)| mm.0[xi]).filter(|&d| d < top).collect();
        if !low.is_empty() {
            return Err(FglError::Inconsistent(format!(
                "right unit stage {m}: nonzero coefficient below x^{top} (degree {})",
                low.iter().min().unwrap()
            )));
        }
        units.etas.push(x_coefficient(&diff, xi, top));
    }
    units.series_ctx = series_ctx;
    Ok(units)
}
