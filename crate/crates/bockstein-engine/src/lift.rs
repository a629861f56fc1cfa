//! Lifts z_{sp^k} of v2^{sp^k} with controlled differential, and the
//! extraction of leading differentials dz = η_R(z) − z.

use crate::formulas::{required_truncation, split_exponent};
use crate::BocksteinError;
use ehh2_core::field::{CoeffRing, Field, PrimeField};
use ehh2_core::ring::to_text;
use ehh2_core::{Poly, QuotientContext};
use fgl_engine::SigmaModel;
use serde::{Deserialize, Serialize};

type Fp = Poly<u32>;

/// d_r(v2^{sp^k}) = c v1^r v2^b (g^p − g).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRecord {
    pub s: i64,
    pub k: u32,
    pub source_exponent: i64,
    pub page: i64,
    pub target_exponent: i64,
    pub unit: u32,
}

impl DifferentialRecord {
    /// Whether page and target agree with (p^k+⋯+1)(p+1) and b(sp^k).
    pub fn matches_formulas(&self, p: u32) -> bool {
        let b = crate::formulas::b_exponent(self.s, self.k, p);
        self.unit != 0 && self.page == crate::formulas::page(self.k, p) && b.is_ok_and(|b| b == self.target_exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeadingOutcome {
    Differential(DifferentialRecord),
    /// dz vanishes below the model truncation.
    Permanent { depth: i64 },
}

/// Matches L = u·v1^R (v2^{B−1} t2 − v2^{B−p} t2^p) = u v1^R v2^B (g − g^p);
/// returns (R, B, c) with c = −u the unit in front of g^p − g.
pub fn match_shape(ctx: &QuotientContext<PrimeField>, lead: &Fp, weight: i64) -> Result<(i64, i64, u32), BocksteinError> {
    let f = ctx.ring();
    let p = f.p() as i32;
    let (v1, v2, t2) = (ctx.vars().index("v1")?, ctx.vars().index("v2")?, ctx.vars().index("t2")?);
    let bad = || BocksteinError::Shape(to_text(ctx, lead));
    if lead.len() != 2 {
        return Err(bad());
    }
    let mut g_term = None;
    let mut gp_term = None;
    for (m, c) in lead.iter() {
        let others = (0..ctx.vars().len()).filter(|&i| i != v1 && i != v2 && i != t2).any(|i| m.0[i] != 0);
        if others || m.0[v1] as i64 != weight {
            return Err(bad());
        }
        match m.0[t2] {
            1 => g_term = Some((m.0[v2] + 1, *c)),
            e if e == p => gp_term = Some((m.0[v2] + p, *c)),
            _ => return Err(bad()),
        }
    }
    match (g_term, gp_term) {
        (Some((b1, u)), Some((b2, w))) if b1 == b2 && f.add(&u, &w) == 0 => Ok((weight, b1 as i64, f.neg(&u))),
        _ => Err(bad()),
    }
}

/// The exponent m of the weight-zero part v2^m of z.
fn base_exponent(ctx: &QuotientContext<PrimeField>, z: &Fp) -> Result<i64, BocksteinError> {
    let zero: Vec<_> = z.iter().filter(|(m, _)| ctx.weight(m) == 0).collect();
    let v2 = ctx.vars().index("v2")?;
    match zero.as_slice() {
        [(m, c)] if **c == 1 && (0..ctx.vars().len()).all(|i| i == v2 || m.0[i] == 0) => Ok(m.0[v2] as i64),
        _ => Err(BocksteinError::Shape(format!("{} does not reduce to a v2-power mod v1", to_text(ctx, z)))),
    }
}

fn outcome(ctx: &QuotientContext<PrimeField>, z: &Fp, dz: &Fp, depth: i64) -> Result<LeadingOutcome, BocksteinError> {
    let Some((w, lead)) = ctx.leading(dz) else {
        return Ok(LeadingOutcome::Permanent { depth });
    };
    let (page, target, unit) = match_shape(ctx, &lead, w)?;
    let m = base_exponent(ctx, z)?;
    let (s, k) = split_exponent(m, ctx.ring().p())?;
    Ok(LeadingOutcome::Differential(DifferentialRecord { s, k, source_exponent: m, page, target_exponent: target, unit }))
}

/// dz = η_R(z) − z in the model, reduced to its leading term.
pub fn leading_differential(model: &SigmaModel, z: &Fp) -> Result<LeadingOutcome, BocksteinError> {
    let dz = model.d(z)?;
    outcome(model.ctx(), z, &dz, model.truncation())
}

#[derive(Debug, Clone)]
pub struct ZLift {
    pub s: i64,
    pub k: u32,
    /// truncation used
    pub n: i64,
    pub z: Fp,
    /// η_R(z)
    pub eta: Fp,
    /// (e, m, c): z ← z^p − c v1^e v2^m at each step
    pub corrections: Vec<(i64, i64, u32)>,
    pub record: DifferentialRecord,
}

impl ZLift {
    pub fn to_text(&self, model: &SigmaModel) -> String {
        to_text(model.ctx(), &self.z)
    }
}

/// z_s = v2^s, z_{sp^k} = z_{sp^{k−1}}^p − c v1^e v2^m with c, e, m chosen
/// to cancel the leading term of d(z^p) = (dz)^p.
pub fn build_z_lift(model: &SigmaModel, s: i64, k: u32) -> Result<ZLift, BocksteinError> {
    let p = model.p();
    if s.rem_euclid(p as i64) == 0 {
        return Err(BocksteinError::Parameter(format!("p = {p} divides s = {s}")));
    }
    let need = required_truncation(k, p);
    if model.truncation() < need {
        return Err(BocksteinError::InsufficientTruncation { needed: need, have: model.truncation() });
    }
    let ctx = model.ctx().with_truncation(Some(need));
    let f = *ctx.ring();
    let ev2 = ctx.normalize(model.eta_v2())?;
    let v2_pow = |m: i64| ctx.mono(&[("v2", m as i32)]);
    let mut z = v2_pow(s)?;
    let mut eta = ctx.pow(&ev2, s)?;
    let mut corrections = vec![];
    for _ in 0..k {
        let zp = ctx.frobenius(&z, 1)?;
        let etap = ctx.frobenius(&eta, 1)?;
        let d = ctx.sub(&etap, &zp);
        let (w, lead) = ctx.leading(&d).ok_or_else(|| BocksteinError::Structural("d(z^p) vanished".into()))?;
        let (_, b, c_lead) = match_shape(&ctx, &lead, w)?;
        // d(v2^m) = m v1^{p+1} v2^{m−1}(g − g^p) + …, so m = b + 1 and c m = u = −c_lead
        let m = b + 1;
        let e = w - (p as i64 + 1);
        let mm = f.from_i64(m);
        let inv = f.inv(&mm).ok_or_else(|| BocksteinError::Structural(format!("p divides the correcting exponent {m}")))?;
        if e < 0 {
            return Err(BocksteinError::Structural(format!("negative v1-exponent {e} in a correction")));
        }
        let c = f.mul(&f.neg(&c_lead), &inv);
        let corr = ctx.mono(&[("v1", e as i32), ("v2", m as i32)])?;
        z = ctx.sub(&zp, &ctx.scale(&corr, &c));
        let eta_corr = ctx.mul(&ctx.mono(&[("v1", e as i32)])?, &ctx.pow(&ev2, m)?)?;
        eta = ctx.sub(&etap, &ctx.scale(&eta_corr, &c));
        corrections.push((e, m, c));
    }
    let dz = ctx.sub(&eta, &z);
    match outcome(&ctx, &z, &dz, need)? {
        LeadingOutcome::Differential(record) => Ok(ZLift { s, k, n: need, z, eta, corrections, record }),
        LeadingOutcome::Permanent { depth } => {
            Err(BocksteinError::Structural(format!("lift of v2^{s}p^{k} has no differential below weight {depth}")))
        }
    }
}
