//! Named congruence checks on the right unit and the truncated Σ̄₂ model.

use crate::bp::gen_degree;
use crate::congruence::{verify_congruence, w1, CongruenceReport};
use crate::law::FormalGroupLaw;
use crate::right_unit::RightUnits;
use crate::sigma::SigmaModel;
use crate::FglError;
use ehh2_core::field::{CoeffRing, Field, PrimeField};
use ehh2_core::{Poly, QuotientContext, Variable, VariableTable};
use serde::Serialize;

type Fp = Poly<u32>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub residual: String,
    pub detail: String,
}

impl CheckOutcome {
    fn from_report(name: &str, detail: String, r: CongruenceReport) -> Self {
        CheckOutcome { name: name.to_string(), passed: r.equal, residual: r.residual, detail }
    }
    fn combine(name: &str, detail: String, parts: Vec<CongruenceReport>) -> Self {
        let passed = parts.iter().all(|r| r.equal);
        let residual = parts.iter().map(|r| r.residual.as_str()).collect::<Vec<_>>().join(" ; ");
        CheckOutcome { name: name.to_string(), passed, residual, detail }
    }
}

fn v(ctx: &QuotientContext<PrimeField>, exps: &[(&str, i32)]) -> Result<Fp, FglError> {
    Ok(ctx.mono(exps)?)
}

fn c(ctx: &QuotientContext<PrimeField>, k: i64, f: &Fp) -> Fp {
    ctx.scale(f, &ctx.ring().from_i64(k))
}

/// η_R(v1) = v1.
pub fn right_unit_v1(units: &RightUnits) -> Result<CheckOutcome, FglError> {
    let ctx = units.ctx();
    let r = verify_congruence(ctx, units.eta(1)?, &ctx.var("v1")?)?;
    Ok(CheckOutcome::from_report("right-unit-v1", "eta_R(v1) = v1 mod p".into(), r))
}

/// η_R(v2) = v2 + v1 t1^p − v1^p t1.
pub fn right_unit_v2(units: &RightUnits) -> Result<CheckOutcome, FglError> {
    let ctx = units.ctx();
    let p = units.p() as i32;
    let rhs = ctx.sum(
        [v(ctx, &[("v2", 1)])?, v(ctx, &[("v1", 1), ("t1", p)])?, c(ctx, -1, &v(ctx, &[("v1", p), ("t1", 1)])?)]
            .iter(),
    );
    let r = verify_congruence(ctx, units.eta(2)?, &rhs)?;
    Ok(CheckOutcome::from_report("right-unit-v2", "eta_R(v2) = v2 + v1 t1^p - v1^p t1 mod p".into(), r))
}

/// The closed form of η_R(v3) mod p including the w1 correction.
pub fn right_unit_v3_display(units: &RightUnits) -> Result<Fp, FglError> {
    let ctx = units.ctx();
    let p = units.p() as i32;
    let q = p * p;
    let mut parts = vec![
        v(ctx, &[("v3", 1)])?,
        v(ctx, &[("v2", 1), ("t1", q)])?,
        v(ctx, &[("v1", 1), ("t2", p)])?,
        c(ctx, -1, &v(ctx, &[("v2", p), ("t1", 1)])?),
        c(ctx, -1, &v(ctx, &[("v1", q), ("t2", 1)])?),
        c(ctx, -1, &v(ctx, &[("v1", p), ("t1", 1 + q)])?),
        v(ctx, &[("v1", q), ("t1", 1 + p)])?,
    ];
    let w = w1(
        ctx,
        &v(ctx, &[("v2", 1)])?,
        &v(ctx, &[("v1", 1), ("t1", p)])?,
        &c(ctx, -1, &v(ctx, &[("v1", p), ("t1", 1)])?),
    )?;
    parts.push(ctx.mul(&ctx.var("v1")?, &w)?);
    Ok(ctx.sum(parts.iter()))
}

pub fn right_unit_v3(units: &RightUnits) -> Result<CheckOutcome, FglError> {
    let ctx = units.ctx();
    let r = verify_congruence(ctx, units.eta(3)?, &right_unit_v3_display(units)?)?;
    Ok(CheckOutcome::from_report("right-unit-v3", "eta_R(v3) closed form with the w1 term, mod p".into(), r))
}

/// The defining relation with all solved right units substituted.
pub fn right_unit_residual(units: &RightUnits, law: &FormalGroupLaw) -> Result<CheckOutcome, FglError> {
    let r = units.residual(law)?;
    Ok(CheckOutcome {
        name: "right-unit-relation".into(),
        passed: r.is_zero(),
        residual: format!("{} terms", r.len()),
        detail: format!(
            "sum^F t_i eta_R(v_j)^(p^i) = sum^F v_i t_j^(p^i) to degree {}",
            (units.p() as i64).pow(units.count() as u32)
        ),
    })
}

/// F_p[v1, v2^±, a1, t2, a3] (plus x when `series`), where t1 = v1 a1 and
/// t3 = v1 a3 record divisibility of t1, t3 by v1.
fn divided_context(p: u32, trunc: i64, series: Option<i64>) -> Result<QuotientContext<PrimeField>, FglError> {
    let mut vars = vec![
        Variable::new("v1", gen_degree(p, 1)),
        Variable::laurent("v2", gen_degree(p, 2)),
        Variable::new("a1", gen_degree(p, 1) - gen_degree(p, 1)),
        Variable::new("t2", gen_degree(p, 2)),
        Variable::new("a3", gen_degree(p, 3) - gen_degree(p, 1)),
    ];
    if series.is_some() {
        vars.push(Variable::series("x", -2));
    }
    let mut b = QuotientContext::builder(PrimeField::new(p)?, VariableTable::new(vars)?).truncation(trunc);
    if let Some(d) = series {
        b = b.degree_cap(d);
    }
    Ok(b.build()?)
}

fn divided_images(units: &RightUnits, ctx: &QuotientContext<PrimeField>) -> Result<Vec<Option<Fp>>, FglError> {
    let src = units.ctx().vars();
    let mut out = vec![];
    for i in 0..src.len() {
        out.push(match src.name(i) {
            "v1" | "v2" | "t2" => Some(ctx.var(src.name(i))?),
            "t1" => Some(v(ctx, &[("v1", 1), ("a1", 1)])?),
            "t3" => Some(v(ctx, &[("v1", 1), ("a3", 1)])?),
            n if n.starts_with('v') => Some(Poly::zero()),
            _ => None,
        });
    }
    Ok(out)
}

/// v2^{1−p²} t2^{p²} ≡ t2 mod v1^{p+1}, read off from η_R(v4) = 0 with
/// t1, t3 divisible by v1.
pub fn t2_frobenius_congruence(units: &RightUnits) -> Result<CheckOutcome, FglError> {
    let p = units.p();
    let pi = p as i32;
    let ctx = divided_context(p, p as i64 + 1, None)?;
    let imgs = divided_images(units, &ctx)?;
    let r4 = ctx.hom(units.ctx(), units.eta(4)?, &imgs, 0)?;
    let lhs = ctx.mul(&v(&ctx, &[("v2", -pi * pi)])?, &r4)?;
    // r4 vanishes, so lhs = v2^{1-p²}t2^{p²} - t2 must be 0 as well
    let target = ctx.sub(&v(&ctx, &[("v2", 1 - pi * pi), ("t2", pi * pi)])?, &ctx.var("t2")?);
    let r = verify_congruence(&ctx, &lhs, &target)?;
    Ok(CheckOutcome::from_report(
        "t2-frobenius-congruence",
        "v2^(1-p^2) t2^(p^2) = t2 mod v1^(p+1), from eta_R(v4) = 0".into(),
        r,
    ))
}

/// Both sides of the degree-p⁴ formal-sum relation collapse mod v1^{p+1}
/// to the short forms v1 +F v2 +F v2^p t1 +F v2^{p²} t2 and
/// v1 +F v2 +F v1 t2^p +F v2 t2^{p²}.
pub fn formal_sum_reduction(law: &FormalGroupLaw, units: &RightUnits) -> Result<CheckOutcome, FglError> {
    let p = units.p();
    let pi = p as i32;
    let d4 = (p as i64).pow(4);
    let ctx = divided_context(p, p as i64 + 1, Some(d4))?;
    let adder = law.adder(&ctx)?;
    let imgs = divided_images(units, &ctx)?;
    let eta1 = ctx.hom(units.ctx(), units.eta(1)?, &imgs, 0)?;
    let eta2 = ctx.hom(units.ctx(), units.eta(2)?, &imgs, 0)?;
    let t1 = imgs[units.ctx().vars().index("t1")?].clone().unwrap();
    let t3 = imgs[units.ctx().vars().index("t3")?].clone().unwrap();
    let t2 = ctx.var("t2")?;
    let v1 = ctx.var("v1")?;
    let v2 = ctx.var("v2")?;
    let x = |k: u32| v(&ctx, &[("x", pi.pow(k))]);
    let fr = |f: &Fp, i: u32| ctx.frobenius(f, i);
    let term = |a: &Fp, b: &Fp, k: u32| -> Result<Fp, FglError> { Ok(ctx.mul(&ctx.mul(a, b)?, &x(k)?)?) };
    let one = ctx.one();
    let t3_term = term(&t3, &fr(&eta1, 3)?, 4)?;
    let lhs_rest = vec![
        term(&one, &eta1, 1)?,
        term(&t1, &fr(&eta1, 1)?, 2)?,
        term(&t2, &fr(&eta1, 2)?, 3)?,
        term(&one, &eta2, 2)?,
        term(&t1, &fr(&eta2, 1)?, 3)?,
        term(&t2, &fr(&eta2, 2)?, 4)?,
    ];
    let mut lhs_terms = lhs_rest.clone();
    lhs_terms.insert(3, t3_term);
    let rhs_terms = vec![
        term(&v1, &one, 1)?,
        term(&v1, &fr(&t1, 1)?, 2)?,
        term(&v1, &fr(&t2, 1)?, 3)?,
        term(&v1, &fr(&t3, 1)?, 4)?,
        term(&v2, &one, 2)?,
        term(&v2, &fr(&t1, 2)?, 3)?,
        term(&v2, &fr(&t2, 2)?, 4)?,
    ];
    let lhs_short = vec![
        term(&v1, &one, 1)?,
        term(&v2, &one, 2)?,
        term(&fr(&v2, 1)?, &t1, 3)?,
        term(&fr(&v2, 2)?, &t2, 4)?,
    ];
    let rhs_short =
        vec![term(&v1, &one, 1)?, term(&v2, &one, 2)?, term(&v1, &fr(&t2, 1)?, 3)?, term(&v2, &fr(&t2, 2)?, 4)?];
    let lhs = adder.sum(&lhs_terms)?;
    let parts = vec![
        verify_congruence(&ctx, &lhs, &adder.sum(&lhs_short)?)?,
        verify_congruence(&ctx, &adder.sum(&rhs_terms)?, &adder.sum(&rhs_short)?)?,
        // the t3 term never matters under this truncation
        verify_congruence(&ctx, &lhs, &adder.sum(&lhs_rest)?)?,
    ];
    Ok(CheckOutcome::combine(
        "formal-sum-reduction",
        "both sides of the degree-p^4 formal sum relation reduce mod v1^(p+1); t3 term insensitive".into(),
        parts,
    ))
}

/// 0 ≡ v1t2^p − v2^p t1 − v1²v2^{p−1}t1^p + v1^{p+1}v2^{p−1}t1.
fn t1_relation_display(ctx: &QuotientContext<PrimeField>, p: i32, t1: &Fp) -> Result<Fp, FglError> {
    let parts = [
        v(ctx, &[("v1", 1), ("t2", p)])?,
        c(ctx, -1, &ctx.mul(&v(ctx, &[("v2", p)])?, t1)?),
        c(ctx, -1, &ctx.mul(&v(ctx, &[("v1", 2), ("v2", p - 1)])?, &ctx.pow(t1, p as i64)?)?),
        ctx.mul(&v(ctx, &[("v1", p + 1), ("v2", p - 1)])?, t1)?,
    ];
    Ok(ctx.sum(parts.iter()))
}

/// The t1 relation mod v1^{2p+3}: it agrees with η_R(v3) for any t1 ∈ v1Σ̄₂,
/// and it holds for the model's image of t1.
pub fn t1_relation(units: &RightUnits, model: &SigmaModel) -> Result<CheckOutcome, FglError> {
    let p = units.p();
    let pi = p as i32;
    let w = 2 * p as i64 + 3;
    if model.truncation() < w {
        return Err(FglError::InsufficientTruncation { needed: w, have: model.truncation() });
    }
    let ctx = divided_context(p, w, None)?;
    let imgs = divided_images(units, &ctx)?;
    let r3 = ctx.hom(units.ctx(), units.eta(3)?, &imgs, 0)?;
    let t1 = v(&ctx, &[("v1", 1), ("a1", 1)])?;
    let first = verify_congruence(&ctx, &r3, &t1_relation_display(&ctx, pi, &t1)?)?;
    let mctx = model.ctx().with_truncation(Some(w));
    let second = verify_congruence(&mctx, &t1_relation_display(&mctx, pi, model.t1())?, &Poly::zero())?;
    Ok(CheckOutcome::combine(
        "t1-relation",
        "0 = v1 t2^p - v2^p t1 - v1^2 v2^(p-1) t1^p + v1^(p+1) v2^(p-1) t1 mod v1^(2p+3)".into(),
        vec![first, second],
    ))
}

/// t1 ≡ v1g^p − v1^{p+2}v2^{-1}g + v1^{p+2}v2^{-1}g^p mod v1^{2p+3}.
pub fn t1_expansion(model: &SigmaModel) -> Result<CheckOutcome, FglError> {
    let p = model.p() as i32;
    let w = 2 * p as i64 + 3;
    if model.truncation() < w {
        return Err(FglError::InsufficientTruncation { needed: w, have: model.truncation() });
    }
    let ctx = model.ctx().with_truncation(Some(w));
    let rhs = ctx.sum(
        [
            v(&ctx, &[("v1", 1), ("v2", -p), ("t2", p)])?,
            c(&ctx, -1, &v(&ctx, &[("v1", p + 2), ("v2", -2), ("t2", 1)])?),
            v(&ctx, &[("v1", p + 2), ("v2", -1 - p), ("t2", p)])?,
        ]
        .iter(),
    );
    let r = verify_congruence(&ctx, model.t1(), &rhs)?;
    Ok(CheckOutcome::from_report(
        "t1-expansion",
        "t1 = v1 g^p - v1^(p+2) v2^-1 g + v1^(p+2) v2^-1 g^p mod v1^(2p+3)".into(),
        r,
    ))
}

/// η_R(v2^s) − v2^s ≡ s v2^s[v2^{-1}v1^{1+p}(g^{p²}−g^p) + v2^{-2}v1^{2(1+p)}(g−g^p)
/// + (s−1)/2 v2^{-2}v1^{2(1+p)}(g^{p²}−g^p)²] mod v1^{3p+3}.
pub fn v2_power_expansion(model: &SigmaModel, s: i64) -> Result<CheckOutcome, FglError> {
    let p = model.p() as i32;
    let w = 3 * p as i64 + 3;
    if model.truncation() < w {
        return Err(FglError::InsufficientTruncation { needed: w, have: model.truncation() });
    }
    let ctx = model.ctx().with_truncation(Some(w));
    let s32 = i32::try_from(s).map_err(|_| FglError::Parameter("exponent out of range".into()))?;
    let lhs = ctx.normalize(&model.d(&v(&ctx, &[("v2", s32)])?)?)?;
    let g = ctx.normalize(&model.g())?;
    let gp = ctx.pow(&g, p as i64)?;
    let gpp = ctx.pow(&g, (p * p) as i64)?;
    let a = ctx.sub(&gpp, &gp);
    let b = ctx.sub(&g, &gp);
    let half = ctx.ring().inv(&ctx.ring().from_i64(2)).expect("p odd");
    let quad_coeff = ctx.ring().mul(&ctx.ring().from_i64(s - 1), &half);
    let inner = ctx.sum(
        [
            ctx.mul(&v(&ctx, &[("v1", 1 + p), ("v2", -1)])?, &a)?,
            ctx.mul(&v(&ctx, &[("v1", 2 * (1 + p)), ("v2", -2)])?, &b)?,
            ctx.scale(&ctx.mul(&v(&ctx, &[("v1", 2 * (1 + p)), ("v2", -2)])?, &ctx.mul(&a, &a)?)?, &quad_coeff),
        ]
        .iter(),
    );
    let rhs = ctx.mul(&c(&ctx, s, &v(&ctx, &[("v2", s32)])?), &inner)?;
    let r = verify_congruence(&ctx, &lhs, &rhs)?;
    Ok(CheckOutcome::from_report(
        &format!("v2-power-right-unit[s={s}]"),
        format!("eta_R(v2^{s}) - v2^{s} expansion mod v1^(3p+3)"),
        r,
    ))
}
