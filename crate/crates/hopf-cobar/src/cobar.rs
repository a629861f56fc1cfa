//! Normalized cobar complex of the degree-zero Hopf algebra, tensored with
//! F_{p²}[u^±]. Letters are non-unit basis elements.

use crate::hopf::DegreeZeroHopf;
use ehh2_core::linalg::SparseVec;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum SignConvention {
    /// d[a_1|…|a_s] = Σ_i (−1)^i [a_1|…|Δ̄a_i|…|a_s]
    #[default]
    Standard,
    /// the same sum with (−1)^{i+1}
    Opposite,
}

/// u^k [a_1|…|a_s] in cohomological degree s and internal degree −2k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CobarWord {
    pub u_power: i64,
    pub letters: Vec<u32>,
}

impl CobarWord {
    pub fn new(u_power: i64, letters: Vec<u32>) -> Self {
        CobarWord { u_power, letters }
    }
    pub fn s(&self) -> usize {
        self.letters.len()
    }
    pub fn internal_degree(&self) -> i64 {
        -2 * self.u_power
    }
    pub fn is_normalized(&self) -> bool {
        self.letters.iter().all(|&a| a != 0)
    }
    pub fn to_text(&self, hopf: &DegreeZeroHopf) -> String {
        let body: Vec<String> = self.letters.iter().map(|&a| hopf.name(a)).collect();
        let u = if self.u_power == 0 { String::new() } else { format!("u^{} ", self.u_power) };
        format!("{u}[{}]", body.join("|"))
    }
}

/// The cobar complex on the letters of the sub-algebra generated by
/// g_1, …, g_k; words are encoded as integers in base (#letters).
#[derive(Debug, Clone)]
pub struct CobarComplex<'a> {
    hopf: &'a DegreeZeroHopf,
    letters: Vec<u32>,
    pos: FxHashMap<u32, usize>,
    sign: SignConvention,
}

impl<'a> CobarComplex<'a> {
    pub fn new(hopf: &'a DegreeZeroHopf, generators: usize, sign: SignConvention) -> Self {
        let letters: Vec<u32> = hopf.sub_basis(generators).into_iter().filter(|&b| b != 0).collect();
        let pos = letters.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        CobarComplex { hopf, letters, pos, sign }
    }

    pub fn hopf(&self) -> &DegreeZeroHopf {
        self.hopf
    }
    pub fn letters(&self) -> &[u32] {
        &self.letters
    }
    pub fn sign(&self) -> SignConvention {
        self.sign
    }

    /// Number of words of length s.
    pub fn dim(&self, s: usize) -> usize {
        self.letters.len().pow(s as u32)
    }

    pub fn encode(&self, word: &[u32]) -> usize {
        let n = self.letters.len();
        word.iter().fold(0, |acc, a| acc * n + self.pos[a])
    }

    pub fn decode(&self, mut idx: usize, s: usize) -> Vec<u32> {
        let n = self.letters.len();
        let mut out = vec![0; s];
        for slot in out.iter_mut().rev() {
            *slot = self.letters[idx % n];
            idx /= n;
        }
        out
    }

    pub fn contains_letter(&self, b: u32) -> bool {
        self.pos.contains_key(&b)
    }

    /// d of a single word, as a sorted sparse vector of (s+1)-words.
    pub fn d_word(&self, word: &[u32]) -> SparseVec<u32> {
        let p = self.hopf.p() as u64;
        let mut acc: FxHashMap<usize, u64> = FxHashMap::default();
        let mut buf: Vec<u32> = Vec::with_capacity(word.len() + 1);
        for i in 0..word.len() {
            // i is 0-based; the sign is (−1)^{i+1}
            let negative = match self.sign {
                SignConvention::Standard => i % 2 == 0,
                SignConvention::Opposite => i % 2 == 1,
            };
            for (l, r, c) in self.hopf.reduced_delta(word[i]) {
                buf.clear();
                buf.extend_from_slice(&word[..i]);
                buf.push(*l);
                buf.push(*r);
                buf.extend_from_slice(&word[i + 1..]);
                let c = if negative { (p - *c as u64) % p } else { *c as u64 };
                *acc.entry(self.encode(&buf)).or_insert(0) += c;
            }
        }
        let mut out: SparseVec<u32> =
            acc.into_iter().filter_map(|(k, v)| if v % p != 0 { Some((k, (v % p) as u32)) } else { None }).collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// d of a chain of s-words.
    pub fn d(&self, chain: &SparseVec<u32>, s: usize) -> SparseVec<u32> {
        let p = self.hopf.p() as u64;
        let mut acc: FxHashMap<usize, u64> = FxHashMap::default();
        for (idx, c) in chain {
            for (k, v) in self.d_word(&self.decode(*idx, s)) {
                *acc.entry(k).or_insert(0) += *c as u64 * v as u64;
            }
        }
        let mut out: SparseVec<u32> =
            acc.into_iter().filter_map(|(k, v)| if v % p != 0 { Some((k, (v % p) as u32)) } else { None }).collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Whether d(d(word)) vanishes.
    pub fn dd_vanishes(&self, word: &[u32]) -> bool {
        self.d(&self.d_word(word), word.len() + 1).is_empty()
    }

    pub fn chain_text(&self, chain: &SparseVec<u32>, s: usize, u_power: i64) -> String {
        if chain.is_empty() {
            return "0".into();
        }
        chain
            .iter()
            .map(|(idx, c)| format!("{c} * {}", CobarWord::new(u_power, self.decode(*idx, s)).to_text(self.hopf)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// d of u^k [a_1|…|a_s]. The coefficient term η_R(u^k) − u^k vanishes
/// modulo (p, v1), so only the coproduct insertions contribute. d∘d = 0 is
/// asserted on the input.
pub fn cobar_d(hopf: &DegreeZeroHopf, w: &CobarWord, sign: SignConvention) -> Vec<(CobarWord, u32)> {
    assert!(w.is_normalized(), "cobar words have no unit letters");
    let c = CobarComplex::new(hopf, hopf.bound(), sign);
    let dw = c.d_word(&w.letters);
    assert!(c.d(&dw, w.s() + 1).is_empty(), "d∘d ≠ 0 on {}", w.to_text(hopf));
    dw.into_iter().map(|(idx, v)| (CobarWord::new(w.u_power, c.decode(idx, w.s() + 1)), v)).collect()
}
