use crate::coproduct::{t_degree, v2_weight, TensorCoproducts};
use crate::hopf::DegreeZeroHopf;
use crate::CobarError;
use ehh2_core::ring::Variable;
use ehh2_core::{ExtField, Poly, QuotientContext, VariableTable};

/// F_{p²}[u^±][t_2, …, t_{2m}] with t_{2k}^{p²} = v2^{p^{2k}−1} t_{2k},
/// v2 = u^{1−p²}, and the coproducts of the t_{2k}.
#[derive(Debug, Clone)]
pub struct AlgebroidPresentation {
    p: u32,
    bound: usize,
    ctx: QuotientContext<ExtField>,
    coproducts: TensorCoproducts,
    hopf: DegreeZeroHopf,
}

impl AlgebroidPresentation {
    pub fn new(coproducts: &TensorCoproducts) -> Result<Self, CobarError> {
        let p = coproducts.p();
        let bound = coproducts.bound();
        let field = ExtField::quadratic(p)?;
        let mut vars = vec![Variable::laurent("u", -2)];
        for k in 1..=bound {
            vars.push(Variable::new(&format!("t{}", 2 * k), t_degree(p, 2 * k)));
        }
        let table = VariableTable::new(vars)?;
        let plain = QuotientContext::plain(field.clone(), table.clone());
        let q = (p * p) as i32;
        let mut builder = QuotientContext::builder(field, table);
        for k in 1..=bound {
            let name = format!("t{}", 2 * k);
            let rhs = plain.mono(&[("u", (1 - q) * Self::v2_power(p, k)), (&name, 1)])?;
            builder = builder.rule(&name, q, rhs);
        }
        Ok(AlgebroidPresentation {
            p,
            bound,
            ctx: builder.build()?,
            coproducts: coproducts.clone(),
            hopf: DegreeZeroHopf::from_coproducts(coproducts)?,
        })
    }

    /// p^{2k} − 1.
    fn v2_power(p: u32, k: usize) -> i32 {
        (p as i32).pow(2 * k as u32) - 1
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn ctx(&self) -> &QuotientContext<ExtField> {
        &self.ctx
    }
    pub fn coproducts(&self) -> &TensorCoproducts {
        &self.coproducts
    }
    pub fn hopf(&self) -> &DegreeZeroHopf {
        &self.hopf
    }

    /// g_k = v2^{−w_k} t_{2k}, of internal degree zero.
    pub fn degree_zero_generator(&self, k: usize) -> Result<Poly<u32>, CobarError> {
        let q = (self.p * self.p) as i32;
        Ok(self.ctx.mono(&[("u", (q - 1) * v2_weight(self.p, k)), (&format!("t{}", 2 * k), 1)])?)
    }

    /// Terms left in t_{2k}^{p²} − v2^{p^{2k}−1} t_{2k} after normalizing.
    pub fn relation_residuals(&self) -> Result<Vec<usize>, CobarError> {
        let q = (self.p * self.p) as i32;
        let mut out = vec![];
        for k in 1..=self.bound {
            let name = format!("t{}", 2 * k);
            let lhs = self.ctx.pow(&self.ctx.var(&name)?, q as i64)?;
            let rhs = self.ctx.mono(&[("u", (1 - q) * Self::v2_power(self.p, k)), (&name, 1)])?;
            out.push(self.ctx.sub(&lhs, &rhs).len());
        }
        Ok(out)
    }

    /// Per generator: coassociativity defect and the two counit defects.
    pub fn axiom_defects(&self) -> Result<Vec<(usize, usize, usize)>, CobarError> {
        let mut out = vec![];
        for k in 1..=self.bound {
            let (l, r) = self.coproducts.counit_residuals(k)?;
            out.push((self.hopf.coassociativity_defect(self.hopf.generator(k)), l, r));
        }
        Ok(out)
    }
}
