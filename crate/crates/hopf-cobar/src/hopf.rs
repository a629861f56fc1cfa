//! The degree-zero Hopf algebra F_p[g_1, …, g_m]/(g_k^{p²} − g_k) with
//! g_k = v2^{-w_k} t_{2k}. Over F_{p²}[u^±] the full algebroid is u-power
//! multiples of this, u being primitive modulo (p, v1).

use crate::coproduct::{v2_weight, TensorCoproducts};
use crate::CobarError;
use rustc_hash::FxHashMap;
use std::sync::OnceLock;

/// Sparse element of A ⊗ A: (left basis, right basis) ↦ coefficient.
pub type Tensor = FxHashMap<(u32, u32), u32>;

#[derive(Debug, Clone)]
pub struct DegreeZeroHopf {
    p: u32,
    bound: usize,
    q: u32,
    dim: usize,
    /// Δ(g_k^e) for each generator k and exponent e < p²
    powers: Vec<Vec<Tensor>>,
    delta: Vec<OnceLock<Vec<(u32, u32, u32)>>>,
}

const NAMES: [&str; 4] = ["g", "h", "j", "k"];

impl DegreeZeroHopf {
    pub fn from_coproducts(cp: &TensorCoproducts) -> Result<Self, CobarError> {
        let p = cp.p();
        let bound = cp.bound();
        let q = p * p;
        let dim = (q as usize).pow(bound as u32);
        let mut h = DegreeZeroHopf { p, bound, q, dim, powers: vec![], delta: (0..dim).map(|_| OnceLock::new()).collect() };
        let mut gens: Vec<Tensor> = vec![];
        for k in 1..=bound {
            let mut t: Tensor = FxHashMap::default();
            for (m, c) in cp.delta(k)?.iter() {
                let (l, r, v) = cp.split(m);
                let weight: i32 = v
                    + (0..bound).map(|j| v2_weight(p, j + 1) * (l[j] + r[j])).sum::<i32>();
                if weight != v2_weight(p, k) {
                    return Err(CobarError::Inconsistent(format!("Δ(t{}) is not of degree zero after rescaling", 2 * k)));
                }
                let li = h.index_of_raw(&l);
                let ri = h.index_of_raw(&r);
                let e = t.entry((li, ri)).or_insert(0);
                *e = (*e + c) % p;
            }
            t.retain(|_, c| *c != 0);
            gens.push(t);
        }
        for g in &gens {
            let mut pw: Vec<Tensor> = vec![[((0, 0), 1)].into_iter().collect()];
            for e in 1..q as usize {
                let next = h.tensor_mul(&pw[e - 1], g);
                pw.push(next);
            }
            h.powers.push(pw);
        }
        Ok(h)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce_exp(&self, e: i64) -> u32 {
        if e <= 0 {
            0
        } else {
            ((e - 1) % (self.q as i64 - 1)) as u32 + 1
        }
    }

    fn index_of_raw(&self, e: &[i32]) -> u32 {
        let r: Vec<u32> = e.iter().map(|&x| self.reduce_exp(x as i64)).collect();
        self.index(&r)
    }

    pub fn index(&self, e: &[u32]) -> u32 {
        e.iter().rev().fold(0, |acc, &x| acc * self.q + x)
    }

    pub fn exponents(&self, b: u32) -> Vec<u32> {
        let mut b = b;
        (0..self.bound)
            .map(|_| {
                let e = b % self.q;
                b /= self.q;
                e
            })
            .collect()
    }

    /// Basis index of g_k.
    pub fn generator(&self, k: usize) -> u32 {
        (self.q).pow(k as u32 - 1)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (ea, eb) = (self.exponents(a), self.exponents(b));
        let e: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| self.reduce_exp((*x + *y) as i64)).collect();
        self.index(&e)
    }

    /// x ↦ x^p, a Hopf algebra endomorphism since Δ is defined over F_p.
    pub fn frobenius(&self, b: u32) -> u32 {
        let e: Vec<u32> = self.exponents(b).iter().map(|&x| self.reduce_exp(x as i64 * self.p as i64)).collect();
        self.index(&e)
    }

    pub fn name(&self, b: u32) -> String {
        let parts: Vec<String> = self
            .exponents(b)
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let n = NAMES.get(k).map(|s| s.to_string()).unwrap_or(format!("g{}", k + 1));
                if e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Δ(b), computed on first use as the product of generator powers.
    pub fn delta(&self, b: u32) -> &[(u32, u32, u32)] {
        self.delta[b as usize].get_or_init(|| {
            let e = self.exponents(b);
            let mut acc: Tensor = [((0, 0), 1)].into_iter().collect();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    acc = self.tensor_mul(&acc, &self.powers[k][x as usize]);
                }
            }
            let mut v: Vec<(u32, u32, u32)> = acc.into_iter().map(|((l, r), c)| (l, r, c)).collect();
            v.sort_unstable();
            v
        })
    }

    /// Δ(b) − b⊗1 − 1⊗b.
    pub fn reduced_delta(&self, b: u32) -> impl Iterator<Item = &(u32, u32, u32)> {
        self.delta(b).iter().filter(|(l, r, _)| *l != 0 && *r != 0)
    }

    pub fn is_primitive(&self, b: u32) -> bool {
        self.reduced_delta(b).next().is_none()
    }

    pub fn tensor_mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let p = self.p as u64;
        let mut out: Tensor = FxHashMap::default();
        for ((a, b), c) in x {
            for ((e, f), d) in y {
                let key = (self.mul(*a, *e), self.mul(*b, *f));
                let v = out.entry(key).or_insert(0);
                *v = ((*v as u64 + *c as u64 * *d as u64) % p) as u32;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Number of terms in (Δ⊗1)Δ(b) − (1⊗Δ)Δ(b).
    pub fn coassociativity_defect(&self, b: u32) -> usize {
        let p = self.p as u64;
        let mut acc: FxHashMap<(u32, u32, u32), u64> = FxHashMap::default();
        for (l, r, c) in self.delta(b) {
            for (ll, lr, d) in self.delta(*l) {
                *acc.entry((*ll, *lr, *r)).or_insert(0) += *c as u64 * *d as u64;
            }
            for (rl, rr, d) in self.delta(*r) {
                *acc.entry((*l, *rl, *rr)).or_insert(0) += (p - 1) * *c as u64 * *d as u64;
            }
        }
        acc.values().filter(|v| **v % p != 0).count()
    }

    /// Terms by which (ε⊗1)Δ(b) and (1⊗ε)Δ(b) differ from b.
    pub fn counit_defect(&self, b: u32) -> usize {
        let left: Vec<_> = self.delta(b).iter().filter(|(l, _, _)| *l == 0).collect();
        let right: Vec<_> = self.delta(b).iter().filter(|(_, r, _)| *r == 0).collect();
        let ok = |v: &[&(u32, u32, u32)], want: (u32, u32)| v.len() == 1 && (v[0].0, v[0].1) == want && v[0].2 == 1;
        (!ok(&left, (0, b)) as usize) + (!ok(&right, (b, 0)) as usize)
    }

    /// Basis indices of the sub-Hopf algebra on g_1, …, g_k.
    pub fn sub_basis(&self, k: usize) -> Vec<u32> {
        (0..self.dim as u32).filter(|&b| self.exponents(b)[k..].iter().all(|&e| e == 0)).collect()
    }
}
