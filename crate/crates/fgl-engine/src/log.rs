//! Logarithm coefficients of the p-typical law in Hazewinkel generators.

use crate::bp::bp_table;
use crate::FglError;
use ehh2_core::field::CoeffRing;
use ehh2_core::{Mono, Poly, QuotientContext, Rationals};
use num_rational::BigRational;

/// ℓ_0 = 1, ℓ_1, …, ℓ_m with p·ℓ_k = Σ_{i<k} ℓ_i v_{k-i}^{p^i}.
#[derive(Debug, Clone)]
pub struct LogCoefficients {
    p: u32,
    ctx: QuotientContext<Rationals>,
    ell: Vec<Poly<BigRational>>,
}

pub fn log_coeffs(p: u32, m: usize) -> Result<LogCoefficients, FglError> {
    if m == 0 {
        return Err(FglError::Parameter("need at least one generator".into()));
    }
    ehh2_core::field::check_odd_prime(p)?;
    let ctx = QuotientContext::plain(Rationals, bp_table(p, m, 0, &[])?);
    let inv_p = BigRational::new(1.into(), (p as i64).into());
    let mut ell = vec![ctx.one()];
    for k in 1..=m {
        let rhs = recursion_rhs(&ctx, p, &ell, k)?;
        ell.push(ctx.scale(&rhs, &inv_p));
    }
    let out = LogCoefficients { p, ctx, ell };
    for k in 1..=m {
        let r = out.recursion_residual(k)?;
        if !r.is_zero() {
            return Err(FglError::Inconsistent(format!("log recursion residual at {k}")));
        }
    }
    Ok(out)
}

fn recursion_rhs(
    ctx: &QuotientContext<Rationals>,
    p: u32,
    ell: &[Poly<BigRational>],
    k: usize,
) -> Result<Poly<BigRational>, FglError> {
    let mut parts = vec![];
    for (i, li) in ell.iter().enumerate().take(k) {
        let e = (p as i64).pow(i as u32) as i32;
        let m = Mono::var(k - i - 1, e);
        parts.push(ctx.mul_term(li, &m, &ctx.ring().one())?);
    }
    Ok(ctx.sum(parts.iter()))
}

impl LogCoefficients {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn generators(&self) -> usize {
        self.ell.len() - 1
    }
    pub fn ctx(&self) -> &QuotientContext<Rationals> {
        &self.ctx
    }
    /// ℓ_k, with ℓ_0 = 1.
    pub fn get(&self, k: usize) -> &Poly<BigRational> {
        &self.ell[k]
    }

    /// p·ℓ_k − Σ_{i<k} ℓ_i v_{k-i}^{p^i}, recomputed from the stored values.
    pub fn recursion_residual(&self, k: usize) -> Result<Poly<BigRational>, FglError> {
        let lhs = self.ctx.scale(&self.ell[k], &BigRational::from_integer((self.p as i64).into()));
        let rhs = recursion_rhs(&self.ctx, self.p, &self.ell, k)?;
        Ok(self.ctx.sub(&lhs, &rhs))
    }

    pub fn to_text(&self, k: usize) -> String {
        ehh2_core::ring::to_text(&self.ctx, &self.ell[k])
    }
}
