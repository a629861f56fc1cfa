//! The symmetric polynomial w1 and exact congruence reports.

use crate::FglError;
use ehh2_core::field::CoeffRing;
use ehh2_core::ring::to_text;
use ehh2_core::{Field, Poly, QuotientContext};
use serde::Serialize;

/// (1/p)[x^p + y^p + z^p − (x+y+z)^p], an integral polynomial, mod p.
pub fn w1<R: Field>(
    ctx: &QuotientContext<R>,
    x: &Poly<R::Elem>,
    y: &Poly<R::Elem>,
    z: &Poly<R::Elem>,
) -> Result<Poly<R::Elem>, FglError> {
    let p = ctx.ring().characteristic();
    if p == 0 {
        return Err(FglError::Parameter("w1 needs positive characteristic".into()));
    }
    let p = p as usize;
    // 31! < 2^128
    let fact = |n: usize| -> u128 { (1..=n as u128).product() };
    if p > 31 {
        return Err(FglError::Parameter("w1 is implemented for p <= 31".into()));
    }
    let pow = |f: &Poly<R::Elem>, n: usize| ctx.pow(f, n as i64);
    let (xs, ys, zs): (Vec<_>, Vec<_>, Vec<_>) = (
        (0..=p).map(|n| pow(x, n)).collect::<Result<_, _>>()?,
        (0..=p).map(|n| pow(y, n)).collect::<Result<_, _>>()?,
        (0..=p).map(|n| pow(z, n)).collect::<Result<_, _>>()?,
    );
    let mut parts = vec![];
    for a in 0..=p {
        for b in 0..=p - a {
            let c = p - a - b;
            if a == p || b == p || c == p {
                continue;
            }
            let multinomial = fact(p) / (fact(a) * fact(b) * fact(c));
            let coeff = ((multinomial / p as u128) % p as u128) as i64;
            let term = ctx.mul(&ctx.mul(&xs[a], &ys[b])?, &zs[c])?;
            parts.push(ctx.scale(&term, &ctx.ring().from_i64(-coeff)));
        }
    }
    Ok(ctx.sum(parts.iter()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CongruenceReport {
    pub equal: bool,
    /// Canonical text of normalize(lhs − rhs).
    pub residual: String,
    /// Minimal weight of the residual; `None` when it vanishes.
    pub residual_valuation: Option<i64>,
}

/// lhs ≡ rhs in the given quotient context.
pub fn verify_congruence<R: CoeffRing>(
    ctx: &QuotientContext<R>,
    lhs: &Poly<R::Elem>,
    rhs: &Poly<R::Elem>,
) -> Result<CongruenceReport, FglError> {
    let r = ctx.normalize(&ctx.sub(lhs, rhs))?;
    Ok(CongruenceReport { equal: r.is_zero(), residual: to_text(ctx, &r), residual_valuation: ctx.valuation(&r) })
}
