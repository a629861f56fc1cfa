//! A truncated model of Σ̄₂ = Σ_2/p in internal degree bookkeeping:
//! F_p[v1, v2^±, t2, r2] with t2^{p²} = v2^{p²−1}(t2 + r2), where r2 stands
//! for v2^{1−p²}t2^{p²} − t2 and carries weight p+1 (it is divisible by
//! v1^{p+1}). Terms of weight ≥ N vanish. t1 is eliminated through the
//! relation η_R(v3) = 0, solved as a fixed point.

use crate::bp::gen_degree;
use crate::right_unit::RightUnits;
use crate::FglError;
use ehh2_core::field::PrimeField;
use ehh2_core::{Poly, QuotientContext, Variable, VariableTable};

type Fp = Poly<u32>;

pub fn sigma_table(p: u32) -> Result<VariableTable, FglError> {
    Ok(VariableTable::new(vec![
        Variable::new("v1", gen_degree(p, 1)),
        Variable::laurent("v2", gen_degree(p, 2)),
        Variable::new("t2", gen_degree(p, 2)),
        Variable::new("r2", gen_degree(p, 2)),
    ])?)
}

/// The model ring truncated at weight `n`.
pub fn sigma_context(p: u32, n: i64) -> Result<QuotientContext<PrimeField>, FglError> {
    let field = PrimeField::new(p)?;
    let plain = QuotientContext::plain(field, sigma_table(p)?);
    let q = (p * p) as i32;
    let rhs = plain.add(&plain.mono(&[("v2", q - 1), ("t2", 1)])?, &plain.mono(&[("v2", q - 1), ("r2", 1)])?);
    Ok(QuotientContext::builder(field, sigma_table(p)?)
        .rule("t2", q, rhs)
        .weight("r2", p as i32 + 1)
        .truncation(n)
        .build()?)
}

#[derive(Debug, Clone)]
pub struct SigmaModel {
    p: u32,
    n: i64,
    ctx: QuotientContext<PrimeField>,
    t1: Fp,
    eta_v2: Fp,
    iterations: usize,
}

/// Images for a map out of the right-unit ring: v1, v2 fixed, higher v's
/// zero, t1 ↦ `t1`, t2 fixed, higher t's absent.
fn images_from_units(units: &RightUnits, ctx: &QuotientContext<PrimeField>, t1: &Fp) -> Result<Vec<Option<Fp>>, FglError> {
    let src = units.ctx().vars();
    let mut out = vec![];
    for i in 0..src.len() {
        let name = src.name(i);
        out.push(match name {
            "v1" | "v2" | "t2" => Some(ctx.var(name)?),
            "t1" => Some(t1.clone()),
            _ if name.starts_with('v') => Some(Poly::zero()),
            _ => None,
        });
    }
    Ok(out)
}

impl SigmaModel {
    /// Needs η_R(v3), so at least three solved right units.
    pub fn new(units: &RightUnits, n: i64) -> Result<Self, FglError> {
        let p = units.p();
        if n < 2 {
            return Err(FglError::InsufficientTruncation { needed: 2, have: n });
        }
        let r3 = units.eta(3)?;
        let full = sigma_context(p, n)?;
        let v2_inv_p = full.mono(&[("v2", -(p as i32))])?;
        // t1 = t1 + v2^{-p} R3(t1); each pass fixes at least one more weight
        let mut t1 = Poly::zero();
        let mut iterations = 0;
        let mut level = 2.min(n);
        loop {
            let ctx = full.with_truncation(Some(level));
            t1 = ctx.normalize(&t1)?;
            loop {
                let imgs = images_from_units(units, &ctx, &t1)?;
                let r = ctx.hom(units.ctx(), r3, &imgs, 0)?;
                let next = ctx.add(&t1, &ctx.mul(&v2_inv_p, &r)?);
                iterations += 1;
                if next == t1 {
                    break;
                }
                if iterations > 8 * n as usize + 16 {
                    return Err(FglError::NoFixedPoint(iterations));
                }
                t1 = next;
            }
            if level == n {
                break;
            }
            level = (level + p as i64 + 1).min(n);
        }
        if full.valuation(&t1).is_some_and(|v| v < 1) {
            return Err(FglError::Inconsistent("image of t1 is not divisible by v1".into()));
        }
        let imgs = images_from_units(units, &full, &t1)?;
        let eta_v2 = full.hom(units.ctx(), units.eta(2)?, &imgs, 0)?;
        Ok(SigmaModel { p, n, ctx: full, t1, eta_v2, iterations })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn truncation(&self) -> i64 {
        self.n
    }
    pub fn ctx(&self) -> &QuotientContext<PrimeField> {
        &self.ctx
    }
    /// The image of t1.
    pub fn t1(&self) -> &Fp {
        &self.t1
    }
    pub fn eta_v2(&self) -> &Fp {
        &self.eta_v2
    }
    pub fn iterations(&self) -> usize {
        self.iterations
    }
    /// g = v2^{-1} t2.
    pub fn g(&self) -> Fp {
        self.ctx.mono(&[("v2", -1), ("t2", 1)]).expect("model variables")
    }

    /// η_R on F_p[v1, v2^±].
    pub fn right_unit(&self, z: &Fp) -> Result<Fp, FglError> {
        let imgs = vec![Some(self.ctx.var("v1")?), Some(self.eta_v2.clone()), None, None];
        Ok(self.ctx.hom(&self.ctx, z, &imgs, 0)?)
    }

    /// dz = η_R(z) − z for z in F_p[v1, v2^±].
    pub fn d(&self, z: &Fp) -> Result<Fp, FglError> {
        Ok(self.ctx.sub(&self.right_unit(z)?, z))
    }
}
