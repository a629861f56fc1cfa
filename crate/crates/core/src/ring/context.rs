use super::{Mono, Poly, RingError, VarKind, VariableTable, MAX_VARS};
use crate::field::{CoeffRing, Field};
use rustc_hash::FxHashMap;
use std::borrow::Cow;
use std::collections::BTreeMap;

/// x^power -> rhs, where rhs has x-exponent below `power`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerRule<E> {
    pub var: usize,
    pub power: i32,
    pub rhs: Poly<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeReport {
    Zero,
    Homogeneous(i64),
    /// (degree, number of terms) strata.
    Inhomogeneous(Vec<(i64, usize)>),
}

impl DegreeReport {
    pub fn degree(&self) -> Option<i64> {
        match self {
            DegreeReport::Homogeneous(d) => Some(*d),
            _ => None,
        }
    }
}

/// Ambient ring plus relations: power rules, a weighted truncation
/// (terms of weight >= N vanish) and a cap on power-series degree.
#[derive(Debug, Clone)]
pub struct QuotientContext<R: CoeffRing> {
    ring: R,
    vars: VariableTable,
    rules: Vec<PowerRule<R::Elem>>,
    rule_of_var: [Option<usize>; MAX_VARS],
    weights: [i32; MAX_VARS],
    truncation: Option<i64>,
    degree_cap: Option<i64>,
    cache_max: Vec<i32>,
    cache: Vec<Vec<Poly<R::Elem>>>,
}

pub struct ContextBuilder<R: CoeffRing> {
    ring: R,
    vars: VariableTable,
    rules: Vec<(String, i32, Poly<R::Elem>)>,
    weights: Vec<(String, i32)>,
    truncation: Option<i64>,
    degree_cap: Option<i64>,
}

impl<R: CoeffRing> ContextBuilder<R> {
    pub fn rule(mut self, var: &str, power: i32, rhs: Poly<R::Elem>) -> Self {
        self.rules.push((var.to_string(), power, rhs));
        self
    }
    pub fn weight(mut self, var: &str, w: i32) -> Self {
        self.weights.push((var.to_string(), w));
        self
    }
    pub fn truncation(mut self, n: i64) -> Self {
        self.truncation = Some(n);
        self
    }
    pub fn degree_cap(mut self, d: i64) -> Self {
        self.degree_cap = Some(d);
        self
    }

    pub fn build(self) -> Result<QuotientContext<R>, RingError> {
        let mut weights = [0i32; MAX_VARS];
        if let Ok(i) = self.vars.index("v1") {
            weights[i] = 1;
        }
        for (name, w) in &self.weights {
            if *w < 0 {
                return Err(RingError::NonTerminating(format!("negative weight on {name}")));
            }
            weights[self.vars.index(name)?] = *w;
        }
        let mut rule_of_var = [None; MAX_VARS];
        let mut rules = vec![];
        for (name, power, rhs) in self.rules {
            let var = self.vars.index(&name)?;
            if power < 1 || rule_of_var[var].is_some() {
                return Err(RingError::NonTerminating(format!("bad rule head {name}^{power}")));
            }
            rule_of_var[var] = Some(rules.len());
            rules.push(PowerRule { var, power, rhs });
        }
        let mut ctx = QuotientContext {
            ring: self.ring,
            vars: self.vars,
            rules,
            rule_of_var,
            weights,
            truncation: None,
            degree_cap: None,
            cache_max: vec![],
            cache: vec![],
        };
        ctx.check_rules()?;
        // cached reductions stay valid under any later truncation
        ctx.fill_cache()?;
        ctx.truncation = self.truncation;
        ctx.degree_cap = self.degree_cap;
        Ok(ctx)
    }
}

impl<R: CoeffRing> QuotientContext<R> {
    pub fn builder(ring: R, vars: VariableTable) -> ContextBuilder<R> {
        ContextBuilder { ring, vars, rules: vec![], weights: vec![], truncation: None, degree_cap: None }
    }

    /// Polynomial ring with no relations, weights or truncation.
    pub fn plain(ring: R, vars: VariableTable) -> Self {
        Self::builder(ring, vars).build().expect("plain context")
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }
    pub fn rules(&self) -> &[PowerRule<R::Elem>] {
        &self.rules
    }
    pub fn rule_for(&self, var: usize) -> Option<&PowerRule<R::Elem>> {
        self.rule_of_var.get(var).copied().flatten().map(|i| &self.rules[i])
    }
    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }
    pub fn degree_cap(&self) -> Option<i64> {
        self.degree_cap
    }
    pub fn weights(&self) -> &[i32] {
        &self.weights[..self.vars.len()]
    }

    /// Same ring and relations with a different truncation.
    pub fn with_truncation(&self, n: Option<i64>) -> Self {
        let mut c = self.clone();
        c.truncation = n;
        c
    }
    pub fn with_degree_cap(&self, d: Option<i64>) -> Self {
        let mut c = self.clone();
        c.degree_cap = d;
        c
    }

    // termination: every rhs monomial lowers the head exponent, is in normal
    // form for its own rule, does not lower the weight, and the head-variable
    // dependency graph is acyclic
    fn check_rules(&self) -> Result<(), RingError> {
        let n = self.rules.len();
        let mut deps = vec![vec![]; n];
        for (ri, r) in self.rules.iter().enumerate() {
            let head_w = self.weights[r.var] as i64 * r.power as i64;
            let head_deg = self.vars.vars()[r.var].degree * r.power as i64;
            for (m, _) in r.rhs.iter() {
                self.check_laurent(m)?;
                if m.0[r.var] >= r.power {
                    return Err(RingError::NonTerminating(format!("rule for {} does not lower its head", self.vars.name(r.var))));
                }
                if self.weight(m) < head_w {
                    return Err(RingError::NonTerminating(format!("rule for {} lowers the weight", self.vars.name(r.var))));
                }
                if self.vars.internal_degree(m) != head_deg {
                    return Err(RingError::Inhomogeneous(self.vars.name(r.var).to_string(), vec![(self.vars.internal_degree(m), 1)]));
                }
                for (rj, s) in self.rules.iter().enumerate() {
                    if rj != ri && m.0[s.var] > 0 {
                        deps[ri].push(rj);
                    }
                }
            }
        }
        // cycle detection by repeated removal of sinks
        let mut alive = vec![true; n];
        loop {
            let sink = (0..n).find(|&i| alive[i] && deps[i].iter().all(|&j| !alive[j]));
            match sink {
                Some(i) => alive[i] = false,
                None => break,
            }
        }
        if alive.iter().any(|&a| a) {
            return Err(RingError::NonTerminating("cyclic rule dependencies".into()));
        }
        Ok(())
    }

    fn fill_cache(&mut self) -> Result<(), RingError> {
        // dependencies first; order found as in check_rules
        let n = self.rules.len();
        let mut done = vec![false; n];
        self.cache = vec![vec![]; n];
        self.cache_max = self.rules.iter().map(|r| r.power).collect();
        while done.iter().any(|d| !d) {
            let ri = (0..n)
                .find(|&i| {
                    !done[i]
                        && self.rules[i].rhs.iter().all(|(m, _)| {
                            self.rules.iter().enumerate().all(|(j, s)| j == i || done[j] || m.0[s.var] == 0)
                        })
                })
                .expect("acyclic");
            let var = self.rules[ri].var;
            let power = self.rules[ri].power;
            let top = power.saturating_mul(3).max(power + 1);
            let rhs = self.rules[ri].rhs.clone();
            let mut acc = FxHashMap::default();
            for (m, c) in rhs.iter() {
                self.push_term(&mut acc, *m, c.clone())?;
            }
            let mut cur = self.finish(acc);
            self.cache[ri].push(cur.clone());
            self.cache_max[ri] = power;
            for e in power + 1..=top {
                let mut acc = FxHashMap::default();
                for (m, c) in cur.iter() {
                    let mm = m.mul(&Mono::var(var, 1))?;
                    self.push_term(&mut acc, mm, c.clone())?;
                }
                cur = self.finish(acc);
                self.cache[ri].push(cur.clone());
                self.cache_max[ri] = e;
            }
            done[ri] = true;
        }
        Ok(())
    }

    #[inline]
    pub fn weight(&self, m: &Mono) -> i64 {
        let mut w = 0i64;
        for i in 0..self.vars.len() {
            w += self.weights[i] as i64 * m.0[i] as i64;
        }
        w
    }

    #[inline]
    fn series_degree(&self, m: &Mono) -> i64 {
        self.vars.series_degree(m)
    }

    #[inline]
    fn dropped(&self, m: &Mono) -> bool {
        if let Some(n) = self.truncation {
            if self.weight(m) >= n {
                return true;
            }
        }
        if let Some(d) = self.degree_cap {
            if self.series_degree(m) > d {
                return true;
            }
        }
        false
    }

    fn check_laurent(&self, m: &Mono) -> Result<(), RingError> {
        for (i, v) in self.vars.vars().iter().enumerate() {
            if m.0[i] < 0 && !v.laurent {
                return Err(RingError::NegativeExponent(v.name.clone()));
            }
        }
        for i in self.vars.len()..MAX_VARS {
            if m.0[i] != 0 {
                return Err(RingError::UnknownVariable(format!("slot {i}")));
            }
        }
        Ok(())
    }

    fn reduce_power(&self, ri: usize, e: i32) -> Result<Cow<'_, Poly<R::Elem>>, RingError> {
        let r = &self.rules[ri];
        let top = self.cache_max[ri];
        let idx = (e - r.power) as usize;
        if e <= top && idx < self.cache[ri].len() {
            return Ok(Cow::Borrowed(&self.cache[ri][idx]));
        }
        // x^e = x^(e - top) * reduction(x^top)
        let base = self.reduce_power(ri, top)?.into_owned();
        let shift = Mono::var(r.var, e - top);
        let mut acc = FxHashMap::default();
        for (m, c) in base.iter() {
            self.push_term(&mut acc, m.mul(&shift)?, c.clone())?;
        }
        Ok(Cow::Owned(self.finish(acc)))
    }

    /// Add c*m to acc after rewriting m to normal form.
    pub(crate) fn push_term(&self, acc: &mut FxHashMap<Mono, R::Elem>, m: Mono, c: R::Elem) -> Result<(), RingError> {
        if self.ring.is_zero(&c) || self.dropped(&m) {
            return Ok(());
        }
        let head = self.rules.iter().enumerate().find(|(_, r)| m.0[r.var] >= r.power);
        match head {
            None => {
                match acc.get_mut(&m) {
                    Some(x) => *x = self.ring.add(x, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
                Ok(())
            }
            Some((ri, r)) => {
                let e = m.0[r.var];
                let mut base = m;
                base.0[r.var] = 0;
                let red = self.reduce_power(ri, e)?;
                for (m2, c2) in red.iter() {
                    self.push_term(acc, base.mul(m2)?, self.ring.mul(&c, c2))?;
                }
                Ok(())
            }
        }
    }

    pub(crate) fn finish(&self, mut acc: FxHashMap<Mono, R::Elem>) -> Poly<R::Elem> {
        acc.retain(|_, c| !self.ring.is_zero(c));
        Poly::from_map(acc)
    }

    /// Normal form: rewrite rules applied, truncation and cap enforced.
    pub fn normalize(&self, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>, RingError> {
        let mut acc = FxHashMap::default();
        for (m, c) in f.iter() {
            self.check_laurent(m)?;
            self.push_term(&mut acc, *m, c.clone())?;
        }
        Ok(self.finish(acc))
    }

    pub fn one(&self) -> Poly<R::Elem> {
        self.constant(self.ring.one())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.monomial(Mono::ONE, c).expect("constant")
    }

    pub fn monomial(&self, m: Mono, c: R::Elem) -> Result<Poly<R::Elem>, RingError> {
        self.check_laurent(&m)?;
        let mut acc = FxHashMap::default();
        self.push_term(&mut acc, m, c)?;
        Ok(self.finish(acc))
    }

    pub fn var(&self, name: &str) -> Result<Poly<R::Elem>, RingError> {
        self.mono(&[(name, 1)])
    }

    /// Monic monomial from (name, exponent) pairs.
    pub fn mono(&self, exps: &[(&str, i32)]) -> Result<Poly<R::Elem>, RingError> {
        let m = self.mono_exps(exps)?;
        self.monomial(m, self.ring.one())
    }

    pub fn mono_exps(&self, exps: &[(&str, i32)]) -> Result<Mono, RingError> {
        let mut m = Mono::ONE;
        for (name, e) in exps {
            let i = self.vars.index(name)?;
            m.0[i] = m.0[i].checked_add(*e).ok_or(RingError::Overflow)?;
        }
        Ok(m)
    }

    pub fn add(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut acc = f.terms().clone();
        for (m, c) in g.iter() {
            match acc.get_mut(m) {
                Some(x) => *x = self.ring.add(x, c),
                None => {
                    acc.insert(*m, c.clone());
                }
            }
        }
        self.finish(acc)
    }

    pub fn neg(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly::from_map(f.iter().map(|(m, c)| (*m, self.ring.neg(c))).collect())
    }

    pub fn sub(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        let acc = f.iter().map(|(m, x)| (*m, self.ring.mul(x, c))).collect();
        self.finish(acc)
    }

    /// Sum of several polynomials in one pass.
    pub fn sum<'a, I>(&self, items: I) -> Poly<R::Elem>
    where
        I: IntoIterator<Item = &'a Poly<R::Elem>>,
        R::Elem: 'a,
    {
        let mut acc: FxHashMap<Mono, R::Elem> = FxHashMap::default();
        for f in items {
            for (m, c) in f.iter() {
                match acc.get_mut(m) {
                    Some(x) => *x = self.ring.add(x, c),
                    None => {
                        acc.insert(*m, c.clone());
                    }
                }
            }
        }
        self.finish(acc)
    }

    /// c * m * f, normalized.
    pub fn mul_term(&self, f: &Poly<R::Elem>, m: &Mono, c: &R::Elem) -> Result<Poly<R::Elem>, RingError> {
        let mut acc = FxHashMap::default();
        for (m2, c2) in f.iter() {
            self.push_term(&mut acc, m.mul(m2)?, self.ring.mul(c, c2))?;
        }
        Ok(self.finish(acc))
    }

    fn filter_key(&self) -> Option<(Box<dyn Fn(&Mono) -> i64 + '_>, i64)> {
        if let Some(n) = self.truncation {
            Some((Box::new(move |m: &Mono| self.weight(m)), n - 1))
        } else {
            self.degree_cap.map(|d| (Box::new(move |m: &Mono| self.series_degree(m)) as Box<dyn Fn(&Mono) -> i64>, d))
        }
    }

    /// Normalized product.
    pub fn mul(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<Poly<R::Elem>, RingError> {
        let (a, b) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        if a.is_zero() {
            return Ok(Poly::zero());
        }
        let mut acc: FxHashMap<Mono, R::Elem> = FxHashMap::default();
        acc.reserve(a.len().max(b.len()));
        let key = self.filter_key();
        let mut bs: Vec<(i64, Mono, R::Elem)> = b
            .iter()
            .map(|(m, c)| (key.as_ref().map(|k| (k.0)(m)).unwrap_or(0), *m, c.clone()))
            .collect();
        bs.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        let limit = key.as_ref().map(|k| k.1).unwrap_or(i64::MAX);
        let plain = self.rules.is_empty();
        for (m1, c1) in a.iter() {
            let k1 = key.as_ref().map(|k| (k.0)(m1)).unwrap_or(0);
            for (k2, m2, c2) in &bs {
                if k1 + k2 > limit {
                    break;
                }
                let m = m1.mul(m2)?;
                let c = self.ring.mul(c1, c2);
                if plain {
                    if self.dropped(&m) || self.ring.is_zero(&c) {
                        continue;
                    }
                    match acc.get_mut(&m) {
                        Some(x) => *x = self.ring.add(x, &c),
                        None => {
                            acc.insert(m, c);
                        }
                    }
                } else {
                    self.push_term(&mut acc, m, c)?;
                }
            }
        }
        Ok(self.finish(acc))
    }

    /// Minimal weight over the support; `None` for zero.
    pub fn valuation(&self, f: &Poly<R::Elem>) -> Option<i64> {
        f.iter().map(|(m, _)| self.weight(m)).min()
    }

    /// Terms of minimal weight.
    pub fn leading(&self, f: &Poly<R::Elem>) -> Option<(i64, Poly<R::Elem>)> {
        let w = self.valuation(f)?;
        Some((w, f.filter(|m| self.weight(m) == w)))
    }

    /// Keep only terms of weight below `n`.
    pub fn truncate_below(&self, f: &Poly<R::Elem>, n: i64) -> Poly<R::Elem> {
        f.filter(|m| self.weight(m) < n)
    }

    pub fn bidegree(&self, f: &Poly<R::Elem>) -> DegreeReport {
        let mut strata: BTreeMap<i64, usize> = BTreeMap::new();
        for (m, _) in f.iter() {
            *strata.entry(self.vars.internal_degree(m)).or_default() += 1;
        }
        match strata.len() {
            0 => DegreeReport::Zero,
            1 => DegreeReport::Homogeneous(*strata.keys().next().unwrap()),
            _ => DegreeReport::Inhomogeneous(strata.into_iter().collect()),
        }
    }

    /// Re-express a polynomial built in another context over the same
    /// variable table.
    pub fn import(&self, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>, RingError> {
        self.normalize(f)
    }

    /// Terms as (coefficient, monomial) sorted by the canonical order.
    pub fn canonical_terms(&self, f: &Poly<R::Elem>) -> Vec<(Mono, R::Elem)> {
        let mut v: Vec<(Vec<i64>, Mono, R::Elem)> =
            f.iter().map(|(m, c)| (self.vars.order_key(m), *m, c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    /// Maximal power of a variable occurring.
    pub fn max_exponent(&self, f: &Poly<R::Elem>, var: usize) -> i32 {
        f.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_series_var(&self, i: usize) -> bool {
        self.vars.vars()[i].kind == VarKind::PowerSeries
    }
}

impl<R: Field> QuotientContext<R> {
    fn field_pow(&self, c: &R::Elem, n: i64) -> Result<R::Elem, RingError> {
        let base = if n < 0 {
            self.ring.inv(c).ok_or_else(|| RingError::NotInvertible("zero coefficient".into()))?
        } else {
            c.clone()
        };
        let mut e = n.unsigned_abs();
        let mut r = self.ring.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = self.ring.mul(&r, &b);
            }
            b = self.ring.mul(&b, &b);
            e >>= 1;
        }
        Ok(r)
    }

    /// f^(p^i) in positive characteristic: coefficients and exponents
    /// raised termwise, then renormalized.
    pub fn frobenius(&self, f: &Poly<R::Elem>, i: u32) -> Result<Poly<R::Elem>, RingError> {
        let p = self.ring.characteristic();
        if p == 0 {
            return Err(RingError::CharacteristicZero);
        }
        let k = (p as i64).checked_pow(i).ok_or(RingError::Overflow)?;
        let mut acc = FxHashMap::default();
        for (m, c) in f.iter() {
            self.push_term(&mut acc, m.pow(k)?, self.ring.frobenius(c, i))?;
        }
        Ok(self.finish(acc))
    }

    /// Split f = c m (1 + δ) with c m the unique weight-zero term and every
    /// term of δ of positive weight.
    fn unit_split(&self, f: &Poly<R::Elem>) -> Result<(Mono, R::Elem, Poly<R::Elem>), RingError> {
        let bad = |why: &str| RingError::NotInvertible(why.to_string());
        if self.truncation.is_none() {
            return Err(bad("no truncation"));
        }
        let zero_w: Vec<(&Mono, &R::Elem)> = f.iter().filter(|(m, _)| self.weight(m) == 0).collect();
        if zero_w.len() != 1 {
            return Err(bad("weight-zero part is not a single term"));
        }
        let (m, c) = (*zero_w[0].0, zero_w[0].1.clone());
        let inv_m = Mono::ONE.div(&m)?;
        self.check_laurent(&inv_m).map_err(|_| bad("leading monomial not invertible"))?;
        let inv_c = self.ring.inv(&c).ok_or_else(|| bad("zero"))?;
        let scaled = self.mul_term(f, &inv_m, &inv_c)?;
        let delta = self.sub(&scaled, &self.one());
        if delta.iter().any(|(mm, _)| self.weight(mm) <= 0) {
            return Err(bad("remainder has non-positive weight"));
        }
        Ok((m, c, delta))
    }

    /// (1 + δ)^n for δ nilpotent modulo the truncation, any integer n.
    fn one_plus_pow(&self, delta: &Poly<R::Elem>, n: i64) -> Result<Poly<R::Elem>, RingError> {
        let p = self.ring.characteristic() as i64;
        if p == 0 {
            if n >= 0 {
                return self.pow_nonneg(&self.add(&self.one(), delta), n as u64);
            }
            // geometric series, then positive power
            let mut inv = self.one();
            let mut term = self.one();
            let minus = self.neg(delta);
            loop {
                term = self.mul(&term, &minus)?;
                if term.is_zero() {
                    break;
                }
                inv = self.add(&inv, &term);
            }
            return self.pow_nonneg(&inv, n.unsigned_abs());
        }
        // p-adic digits of n; factor j is (1 + δ^(p^j))^(d_j)
        let mut result = self.one();
        let mut d = delta.clone();
        let mut n = n;
        while !d.is_zero() && n != 0 {
            let digit = n.rem_euclid(p);
            n = (n - digit) / p;
            if digit > 0 {
                let factor = self.add(&self.one(), &d);
                for _ in 0..digit {
                    result = self.mul(&result, &factor)?;
                }
            }
            d = self.frobenius(&d, 1)?;
        }
        Ok(result)
    }

    fn pow_nonneg(&self, f: &Poly<R::Elem>, n: u64) -> Result<Poly<R::Elem>, RingError> {
        let p = self.ring.characteristic() as u64;
        if n == 0 {
            return Ok(self.one());
        }
        if p > 0 {
            let mut result = self.one();
            let mut b = f.clone();
            let mut n = n;
            while n > 0 {
                let digit = n % p;
                for _ in 0..digit {
                    result = self.mul(&result, &b)?;
                }
                n /= p;
                if n > 0 {
                    b = self.frobenius(&b, 1)?;
                }
            }
            return Ok(result);
        }
        let mut result = self.one();
        let mut b = f.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &b)?;
            }
            n >>= 1;
            if n > 0 {
                b = self.mul(&b, &b)?;
            }
        }
        Ok(result)
    }

    /// f^n; negative n requires f to be a unit modulo the truncation.
    pub fn pow(&self, f: &Poly<R::Elem>, n: i64) -> Result<Poly<R::Elem>, RingError> {
        if f.len() == 1 {
            let (m, c) = f.iter().next().unwrap();
            let mm = m.pow(n)?;
            self.check_laurent(&mm).map_err(|_| RingError::NotInvertible("monomial".into()))?;
            return self.monomial(mm, self.field_pow(c, n)?);
        }
        if n >= 0 {
            return self.pow_nonneg(f, n as u64);
        }
        let (m, c, delta) = self.unit_split(f)?;
        let u = self.monomial(m.pow(n)?, self.field_pow(&c, n)?)?;
        let rest = self.one_plus_pow(&delta, n)?;
        self.mul(&u, &rest)
    }

    pub fn inverse(&self, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>, RingError> {
        self.pow(f, -1)
    }

    /// Ring map from `src` into this context: variable i of `src` goes to
    /// `images[i]`; coefficients are twisted by Frobenius^twist.
    pub fn hom(
        &self,
        src: &QuotientContext<R>,
        f: &Poly<R::Elem>,
        images: &[Option<Poly<R::Elem>>],
        twist: u32,
    ) -> Result<Poly<R::Elem>, RingError> {
        for (i, img) in images.iter().enumerate() {
            if let Some(img) = img {
                if let DegreeReport::Inhomogeneous(s) = self.bidegree(img) {
                    return Err(RingError::Inhomogeneous(src.vars.name(i).to_string(), s));
                }
            }
        }
        let mut powers: FxHashMap<(usize, i32), Poly<R::Elem>> = FxHashMap::default();
        let mut acc: FxHashMap<Mono, R::Elem> = FxHashMap::default();
        let mut terms: Vec<(Mono, R::Elem)> = f.sorted_terms();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        for (m, c) in terms {
            let mut term = self.constant(self.ring.frobenius(&c, twist));
            for i in 0..src.vars.len() {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let img = images
                    .get(i)
                    .and_then(|x| x.as_ref())
                    .ok_or_else(|| RingError::MissingImage(src.vars.name(i).to_string()))?;
                if !powers.contains_key(&(i, e)) {
                    let pw = self.pow(img, e as i64)?;
                    powers.insert((i, e), pw);
                }
                term = self.mul(&term, &powers[&(i, e)])?;
                if term.is_zero() {
                    break;
                }
            }
            for (mm, cc) in term.into_terms() {
                match acc.get_mut(&mm) {
                    Some(x) => *x = self.ring.add(x, &cc),
                    None => {
                        acc.insert(mm, cc);
                    }
                }
            }
        }
        Ok(self.finish(acc))
    }

    /// Endomorphism given by named images; unnamed variables are fixed.
    pub fn apply_hom(
        &self,
        f: &Poly<R::Elem>,
        images: &[(&str, Poly<R::Elem>)],
        twist: u32,
    ) -> Result<Poly<R::Elem>, RingError> {
        let mut imgs: Vec<Option<Poly<R::Elem>>> = (0..self.vars.len())
            .map(|i| self.monomial(Mono::var(i, 1), self.ring.one()).ok())
            .collect();
        for (name, img) in images {
            imgs[self.vars.index(name)?] = Some(img.clone());
        }
        self.hom(self, f, &imgs, twist)
    }
}
