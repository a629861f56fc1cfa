use super::{Mono, Poly, QuotientContext, RingError};
use crate::field::CoeffRing;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn mono_text<R: CoeffRing>(ctx: &QuotientContext<R>, m: &Mono) -> String {
    let parts: Vec<String> = (0..ctx.vars().len())
        .filter(|&i| m.0[i] != 0)
        .map(|i| format!("{}^{}", ctx.vars().name(i), m.0[i]))
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// Canonical text `c * v1^a v2^b ...`, terms in canonical order.
pub fn to_text<R: CoeffRing>(ctx: &QuotientContext<R>, f: &Poly<R::Elem>) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    ctx.canonical_terms(f)
        .iter()
        .map(|(m, c)| format!("{} * {}", ctx.ring().to_text(c), mono_text(ctx, m)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn from_text<R: CoeffRing>(ctx: &QuotientContext<R>, s: &str) -> Result<Poly<R::Elem>, RingError> {
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(Poly::zero());
    }
    let mut acc = rustc_hash::FxHashMap::default();
    for term in s.split(" + ") {
        let (c, m) = match term.split_once(" * ") {
            Some((c, m)) => (ctx.ring().parse(c)?, m),
            None => (ctx.ring().one(), term),
        };
        let mut mono = Mono::ONE;
        for tok in m.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i32>().map_err(|_| RingError::Parse(tok.to_string()))?),
                None => (tok, 1),
            };
            let i = ctx.vars().index(name)?;
            mono.0[i] = mono.0[i].checked_add(e).ok_or(RingError::Overflow)?;
        }
        acc.entry(mono).and_modify(|x| *x = ctx.ring().add(x, &c)).or_insert(c);
    }
    ctx.normalize(&Poly::from_map(acc))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub m: BTreeMap<String, i32>,
}

pub fn to_json<R: CoeffRing>(ctx: &QuotientContext<R>, f: &Poly<R::Elem>) -> Vec<TermJson> {
    ctx.canonical_terms(f)
        .iter()
        .map(|(m, c)| TermJson {
            c: ctx.ring().to_text(c),
            m: (0..ctx.vars().len())
                .filter(|&i| m.0[i] != 0)
                .map(|i| (ctx.vars().name(i).to_string(), m.0[i]))
                .collect(),
        })
        .collect()
}

pub fn from_json<R: CoeffRing>(ctx: &QuotientContext<R>, terms: &[TermJson]) -> Result<Poly<R::Elem>, RingError> {
    let mut acc = rustc_hash::FxHashMap::default();
    for t in terms {
        let c = ctx.ring().parse(&t.c)?;
        let mut mono = Mono::ONE;
        for (name, e) in &t.m {
            mono.0[ctx.vars().index(name)?] = *e;
        }
        acc.entry(mono).and_modify(|x| *x = ctx.ring().add(x, &c)).or_insert(c);
    }
    ctx.normalize(&Poly::from_map(acc))
}
