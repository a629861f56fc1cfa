//! Δ(t_{2k}) modulo (p, v1) with the odd t's set to zero, solved from
//! Σ^F Δ(t_i) x^{p^i} = Σ^F t_i ⊗ t_j^{p^i} x^{p^{i+j}}.

use crate::CobarError;
use ehh2_core::field::PrimeField;
use ehh2_core::ring::{to_text, Variable};
use ehh2_core::{Mono, Poly, QuotientContext, VariableTable};
use fgl_engine::FormalGroupLaw;

type Fp = Poly<u32>;

/// Largest generator bound accepted; Δ(t_{2m}) needs the law to degree p^{2m}.
pub const MAX_BOUND: usize = 2;

pub(crate) fn t_degree(p: u32, i: usize) -> i64 {
    2 * ((p as i64).pow(i as u32) - 1)
}

/// Exponent w_k with t_{2k} = v2^{w_k} g_k in degree zero.
pub fn v2_weight(p: u32, k: usize) -> i32 {
    let q = (p as i64) * (p as i64);
    ((q.pow(k as u32) - 1) / (q - 1)) as i32
}

/// Variables v2, L2, R2, L4, R4, …, x of the two-sided tensor ring.
fn tensor_table(p: u32, bound: usize) -> Result<VariableTable, CobarError> {
    let mut vars = vec![Variable::laurent("v2", t_degree(p, 2))];
    for k in 1..=bound {
        vars.push(Variable::new(&format!("L{}", 2 * k), t_degree(p, 2 * k)));
        vars.push(Variable::new(&format!("R{}", 2 * k), t_degree(p, 2 * k)));
    }
    vars.push(Variable::series("x", -2));
    Ok(VariableTable::new(vars)?)
}

#[derive(Debug, Clone)]
pub struct TensorCoproducts {
    p: u32,
    bound: usize,
    ctx: QuotientContext<PrimeField>,
    deltas: Vec<Fp>,
}

/// Δ(t_2), …, Δ(t_{2m}) for m = `bound`.
pub fn coproducts(p: u32, bound: usize) -> Result<TensorCoproducts, CobarError> {
    ehh2_core::field::check_odd_prime(p)?;
    if bound == 0 || bound > MAX_BOUND {
        return Err(CobarError::Parameter(format!("generator bound must lie in 1..={MAX_BOUND}, got {bound}")));
    }
    let top = (p as i64).pow(2 * bound as u32);
    let law = FormalGroupLaw::specialized(p, top, &[2])?;
    let field = PrimeField::new(p)?;
    let ctx = QuotientContext::builder(field, tensor_table(p, bound)?).degree_cap(top).build()?;
    let one = ctx.one();
    let side = |s: &str, i: usize| -> Result<Fp, CobarError> {
        if i == 0 {
            Ok(one.clone())
        } else {
            Ok(ctx.var(&format!("{s}{i}"))?)
        }
    };
    let xpow = |e: i64| ctx.mono(&[("x", e as i32)]);
    let mut deltas: Vec<Fp> = vec![];
    for n in (2..=2 * bound).step_by(2) {
        let pn = (p as i64).pow(n as u32);
        let stage = ctx.with_degree_cap(Some(pn));
        let adder = law.adder(&stage)?;
        let mut rhs_terms = vec![];
        for i in (0..=n).step_by(2) {
            for j in (0..=n - i).step_by(2) {
                let pi = (p as i64).pow(i as u32);
                let rj = stage.pow(&side("R", j)?, pi)?;
                let term = stage.mul(&stage.mul(&side("L", i)?, &rj)?, &xpow((p as i64).pow((i + j) as u32))?)?;
                rhs_terms.push(term);
            }
        }
        let mut lhs_terms = vec![xpow(1)?];
        for (k, d) in deltas.iter().enumerate() {
            lhs_terms.push(stage.mul(d, &xpow((p as i64).pow(2 * (k as u32 + 1)))?)?);
        }
        let diff = stage.sub(&adder.sum(&rhs_terms)?, &adder.sum(&lhs_terms)?);
        let xi = ctx.vars().index("x")?;
        let mut acc = rustc_hash::FxHashMap::default();
        for (m, c) in diff.iter() {
            if m.0[xi] as i64 != pn {
                return Err(CobarError::Inconsistent(format!(
                    "coproduct stage {n}: unmatched term in x-degree {}",
                    m.0[xi]
                )));
            }
            let mut q = *m;
            q.0[xi] = 0;
            acc.insert(q, *c);
        }
        deltas.push(Poly::from_map(acc));
    }
    Ok(TensorCoproducts { p, bound, ctx: ctx.with_degree_cap(None), deltas })
}

impl TensorCoproducts {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn ctx(&self) -> &QuotientContext<PrimeField> {
        &self.ctx
    }
    /// Δ(t_{2k}), k ≥ 1.
    pub fn delta(&self, k: usize) -> Result<&Fp, CobarError> {
        if k == 0 || k > self.bound {
            return Err(CobarError::InsufficientBound { required: k, have: self.bound });
        }
        Ok(&self.deltas[k - 1])
    }
    pub fn to_text(&self, k: usize) -> Result<String, CobarError> {
        Ok(to_text(&self.ctx, self.delta(k)?))
    }

    /// Exponents (L2, L4, …), (R2, R4, …) and the v2 power of a monomial.
    pub(crate) fn split(&self, m: &Mono) -> (Vec<i32>, Vec<i32>, i32) {
        let left = (0..self.bound).map(|k| m.0[1 + 2 * k]).collect();
        let right = (0..self.bound).map(|k| m.0[2 + 2 * k]).collect();
        (left, right, m.0[0])
    }

    /// Counit on the left (L ↦ 0) and on the right; both must return t_{2k}.
    pub fn counit_residuals(&self, k: usize) -> Result<(usize, usize), CobarError> {
        let d = self.delta(k)?;
        let t_l = self.ctx.var(&format!("L{}", 2 * k))?;
        let t_r = self.ctx.var(&format!("R{}", 2 * k))?;
        let kill_left = d.filter(|m| self.split(m).0.iter().all(|&e| e == 0));
        let kill_right = d.filter(|m| self.split(m).1.iter().all(|&e| e == 0));
        Ok((self.ctx.sub(&kill_left, &t_r).len(), self.ctx.sub(&kill_right, &t_l).len()))
    }
}
