//! Window cohomology. Classes are computed in the cobar complex of the
//! sub-algebra on g and pushed into the complex on g_1..g_m, where the
//! classes that die against coboundaries are discarded. The surviving
//! image is what the continuous cohomology sees of H(F_p[g]/(g^{p²}−g)).

use crate::cobar::{CobarComplex, SignConvention};
use crate::coproduct::{coproducts, TensorCoproducts};
use crate::hopf::DegreeZeroHopf;
use crate::CobarError;
use ehh2_core::field::{CoeffRing, ExtField, PrimeField};
use ehh2_core::linalg::{SparseEchelon, SparseVec};
use serde::{Deserialize, Serialize};

/// Largest number of (s−1)-words whose coboundaries are eliminated.
pub const COLUMN_LIMIT: usize = 10_000;

#[derive(Debug, Clone)]
pub struct CobarContext {
    p: u32,
    bound: usize,
    coproducts: TensorCoproducts,
    hopf: DegreeZeroHopf,
    sign: SignConvention,
}

impl CobarContext {
    pub fn new(p: u32, bound: usize, sign: SignConvention) -> Result<Self, CobarError> {
        let coproducts = coproducts(p, bound)?;
        let hopf = DegreeZeroHopf::from_coproducts(&coproducts)?;
        for k in 1..=bound {
            let g = hopf.generator(k);
            if hopf.counit_defect(g) != 0 || hopf.coassociativity_defect(g) != 0 {
                return Err(CobarError::Inconsistent(format!("Hopf axioms fail on {}", hopf.name(g))));
            }
        }
        Ok(CobarContext { p, bound, coproducts, hopf, sign })
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn coproducts(&self) -> &TensorCoproducts {
        &self.coproducts
    }
    pub fn hopf(&self) -> &DegreeZeroHopf {
        &self.hopf
    }
    pub fn sign(&self) -> SignConvention {
        self.sign
    }
    pub fn with_sign(&self, sign: SignConvention) -> Self {
        CobarContext { sign, ..self.clone() }
    }
}

/// How the coboundaries of the large complex were searched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub s: usize,
    /// dimension of H^s of the one-generator complex
    pub truncated_dim: usize,
    /// number of those classes that survive
    pub stable_dim: usize,
    /// (s−1)-words of the large complex whose coboundaries were used
    pub columns: usize,
    pub total_columns: usize,
    /// words on which d∘d = 0 was checked
    pub dd_checked: usize,
}

#[derive(Debug, Clone)]
pub struct StableClasses {
    s: usize,
    reps: Vec<SparseVec<u32>>,
    echelon: SparseEchelon<PrimeField>,
    ids: Vec<usize>,
    report: SearchReport,
}

impl StableClasses {
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
    /// Cocycle representatives in the large complex.
    pub fn reps(&self) -> &[SparseVec<u32>] {
        &self.reps
    }
    pub fn report(&self) -> &SearchReport {
        &self.report
    }

    /// Coordinates of a cocycle modulo coboundaries in the basis `reps`,
    /// or None if it is not in their span.
    pub fn coordinates(&self, z: &SparseVec<u32>) -> Option<Vec<u32>> {
        let combo = self.echelon.express(z)?;
        let mut out = vec![0u32; self.ids.len()];
        for (id, c) in combo {
            if let Some(i) = self.ids.iter().position(|&x| x == id) {
                out[i] = c;
            }
        }
        Some(out)
    }
}

fn kernel_basis(c: &CobarComplex, s: usize, dd: &mut usize) -> Result<Vec<SparseVec<u32>>, CobarError> {
    let field = PrimeField::new(c.hopf().p())?;
    let mut ech = SparseEchelon::new(field);
    let mut out = vec![];
    for w in 0..c.dim(s) {
        let word = c.decode(w, s);
        let col = c.d_word(&word);
        if !c.d(&col, s + 1).is_empty() {
            return Err(CobarError::Inconsistent(format!("d∘d ≠ 0 on a word of length {s}")));
        }
        *dd += 1;
        if let Some(combo) = ech.express(&col) {
            let mut v: SparseVec<u32> = combo.into_iter().map(|(i, x)| (i, field.neg(&x))).collect();
            v.push((w, 1));
            v.sort_unstable_by_key(|e| e.0);
            out.push(v);
        }
        ech.insert(&col);
    }
    Ok(out)
}

fn coboundary_echelon(c: &CobarComplex, s: usize) -> Result<SparseEchelon<PrimeField>, CobarError> {
    let mut ech = SparseEchelon::new(PrimeField::new(c.hopf().p())?);
    if s > 1 {
        for w in 0..c.dim(s - 1) {
            ech.insert(&c.d_word(&c.decode(w, s - 1)));
        }
    }
    Ok(ech)
}

/// Basis of H^s of the one-generator complex, as cocycles.
fn truncated_classes(c1: &CobarComplex, s: usize, dd: &mut usize) -> Result<Vec<SparseVec<u32>>, CobarError> {
    if s == 0 {
        return Ok(vec![vec![(0, 1)]]);
    }
    let z = kernel_basis(c1, s, dd)?;
    let mut b = coboundary_echelon(c1, s)?;
    Ok(z.into_iter().filter(|v| b.insert(v)).collect())
}

/// Search tiers over (s−1)-words of the large complex: words with at most
/// one letter outside the one-generator algebra, that letter first with
/// higher exponents in {0, 1, p}, then arbitrary; finally every word.
fn tier_words(ctx: &CobarContext, c1: &CobarComplex, top: &CobarComplex, len: usize, tier: usize) -> Vec<usize> {
    let outer: Vec<u32> = top.letters().iter().copied().filter(|a| !c1.contains_letter(*a)).collect();
    let small = |a: u32| ctx.hopf.exponents(a)[1..].iter().all(|&x| x == 0 || x == 1 || x == ctx.p);
    let special: Vec<u32> = match tier {
        0 => outer.iter().copied().filter(|&a| small(a)).collect(),
        1 => outer.iter().copied().filter(|&a| !small(a)).collect(),
        _ => {
            let mut out = vec![];
            for w in 0..top.dim(len) {
                let word = top.decode(w, len);
                if word.iter().filter(|a| !c1.contains_letter(**a)).count() > 1 {
                    out.push(w);
                }
            }
            return out;
        }
    };
    let mut out = vec![];
    if tier == 0 {
        out.extend((0..c1.dim(len)).map(|w| top.encode(&c1.decode(w, len))));
    }
    for pos in 0..len {
        for &a in &special {
            for w in 0..c1.dim(len - 1) {
                let mut word = c1.decode(w, len - 1);
                word.insert(pos, a);
                out.push(top.encode(&word));
            }
        }
    }
    out
}

pub fn stable_classes(ctx: &CobarContext, s: usize) -> Result<StableClasses, CobarError> {
    let c1 = CobarComplex::new(&ctx.hopf, 1, ctx.sign);
    let top = CobarComplex::new(&ctx.hopf, ctx.bound, ctx.sign);
    let field = PrimeField::new(ctx.p)?;
    let mut dd = 0usize;
    let truncated = truncated_classes(&c1, s, &mut dd)?;
    let inflated: Vec<SparseVec<u32>> = truncated
        .iter()
        .map(|v| {
            let mut w: SparseVec<u32> =
                v.iter().map(|(i, c)| (if s == 0 { 0 } else { top.encode(&c1.decode(*i, s)) }, *c)).collect();
            w.sort_unstable_by_key(|e| e.0);
            w
        })
        .collect();
    let total = if s == 0 { 0 } else { top.dim(s - 1) };
    let mut ech = SparseEchelon::new(field);
    let mut used = 0usize;
    let survivors_against = |e: &SparseEchelon<PrimeField>| -> usize {
        let mut e = e.clone();
        inflated.iter().filter(|v| e.insert(v)).count()
    };
    if s > 1 && ctx.bound > 1 {
        for tier in 0..3 {
            if tier == 2 && total > COLUMN_LIMIT {
                return Err(CobarError::Unresolved(s, format!("{total} coboundary columns exceed the limit {COLUMN_LIMIT}")));
            }
            for w in tier_words(ctx, &c1, &top, s - 1, tier) {
                let col = top.d_word(&top.decode(w, s - 1));
                // d∘d on the columns of the cheaper tiers
                if tier < 2 {
                    if !top.d(&col, s).is_empty() {
                        return Err(CobarError::Inconsistent(format!("d∘d ≠ 0 on a word of length {}", s - 1)));
                    }
                    dd += 1;
                }
                ech.insert(&col);
                used += 1;
            }
            if survivors_against(&ech) == 0 {
                break;
            }
        }
    }
    for v in &inflated {
        if !top.d(v, s).is_empty() {
            return Err(CobarError::Inconsistent("an inflated class is not a cocycle".into()));
        }
    }
    let first_id = used;
    let mut ids = vec![];
    let mut reps = vec![];
    for (i, v) in inflated.iter().enumerate() {
        if ech.insert(v) {
            ids.push(first_id + i);
            reps.push(v.clone());
        }
    }
    let report = SearchReport {
        s,
        truncated_dim: truncated.len(),
        stable_dim: reps.len(),
        columns: used,
        total_columns: total,
        dd_checked: dd,
    };
    Ok(StableClasses { s, reps, echelon: ech, ids, report })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub bidegree: (usize, i64),
    pub dimension: usize,
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub p: u32,
    /// "F_{p^2}" for the raw table, "F_p" after descent
    pub field: String,
    pub s_max: usize,
    pub t_min: i64,
    pub t_max: i64,
    pub entries: Vec<TableEntry>,
    pub searches: Vec<SearchReport>,
    #[serde(skip)]
    classes: Vec<StableClasses>,
}

impl CohomologyTable {
    pub fn get(&self, s: usize, t: i64) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.bidegree == (s, t))
    }
    pub fn dimension(&self, s: usize, t: i64) -> usize {
        self.get(s, t).map_or(0, |e| e.dimension)
    }
    pub fn classes(&self, s: usize) -> Option<&StableClasses> {
        self.classes.get(s)
    }
}

/// Cohomology over F_{p²}[u^±] in the window s ≤ s_max, t ∈ [t_min, t_max].
pub fn cohomology_window(ctx: &CobarContext, s_max: usize, t_min: i64, t_max: i64) -> Result<CohomologyTable, CobarError> {
    if t_min > t_max {
        return Err(CobarError::Parameter(format!("empty degree interval [{t_min}, {t_max}]")));
    }
    // Bocksteins of the one-generator classes only die once t_4 is present
    if s_max >= 2 && ctx.bound < 2 {
        return Err(CobarError::InsufficientBound { required: 2, have: ctx.bound });
    }
    let top = CobarComplex::new(&ctx.hopf, ctx.bound, ctx.sign);
    let mut classes = vec![];
    for s in 0..=s_max {
        classes.push(stable_classes(ctx, s)?);
    }
    let mut entries = vec![];
    for s in 0..=s_max {
        for t in t_min..=t_max {
            let (dimension, representatives) = if t % 2 == 0 {
                let k = -t / 2;
                let cl = &classes[s];
                (cl.dim(), cl.reps.iter().map(|r| top.chain_text(r, s, k)).collect())
            } else {
                (0, vec![])
            };
            entries.push(TableEntry { bidegree: (s, t), dimension, representatives });
        }
    }
    Ok(CohomologyTable {
        p: ctx.p,
        field: "F_{p^2}".into(),
        s_max,
        t_min,
        t_max,
        entries,
        searches: classes.iter().map(|c| c.report.clone()).collect(),
        classes,
    })
}

/// How the Galois group acts on cobar letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum GaloisConvention {
    /// Frobenius on coefficients only; letters fixed.
    #[default]
    Coefficients,
    /// Frobenius on coefficients and x ↦ x^p on letters (g ↔ g^p).
    Swap,
}

/// F^×_{p²}-weight of u^k is k mod (p²−1): only t with 2(p²−1) | t survive.
pub fn weight_zero(p: u32, t: i64) -> bool {
    let q1 = (p as i64) * (p as i64) - 1;
    t.rem_euclid(2 * q1) == 0
}

/// F_p-basis of the Galois-fixed classes in degree s, as F_{p²}
/// coordinate vectors in the basis of `StableClasses::reps`.
pub fn galois_fixed_classes(
    ctx: &CobarContext,
    classes: &StableClasses,
    galois: GaloisConvention,
) -> Result<Vec<Vec<u32>>, CobarError> {
    let d = classes.dim();
    if d == 0 {
        return Ok(vec![]);
    }
    let fq = ExtField::quadratic(ctx.p)?;
    let top = CobarComplex::new(&ctx.hopf, ctx.bound, ctx.sign);
    let s = classes.s;
    // σ(r_i) = Σ_j m[j][i] r_j
    let mut m = vec![vec![0u32; d]; d];
    for (i, r) in classes.reps.iter().enumerate() {
        let image: SparseVec<u32> = match galois {
            GaloisConvention::Coefficients => r.clone(),
            GaloisConvention::Swap => {
                let mut v: SparseVec<u32> = r
                    .iter()
                    .map(|(w, c)| {
                        let letters: Vec<u32> = top.decode(*w, s).iter().map(|&a| ctx.hopf.frobenius(a)).collect();
                        (if s == 0 { 0 } else { top.encode(&letters) }, *c)
                    })
                    .collect();
                v.sort_unstable_by_key(|e| e.0);
                v
            }
        };
        let coords = classes
            .coordinates(&image)
            .ok_or_else(|| CobarError::Inconsistent(format!("Galois image of a class in degree {s} left the span")))?;
        for (j, c) in coords.into_iter().enumerate() {
            m[j][i] = fq.embed(c);
        }
    }
    let basis: Vec<Vec<u32>> = (0..d).map(|i| (0..d).map(|j| if i == j { 1 } else { 0 }).collect()).collect();
    let action = |v: &[u32]| -> Vec<u32> {
        let fv: Vec<u32> = v.iter().map(|c| fq.frobenius(c, 1)).collect();
        (0..d)
            .map(|j| (0..d).fold(fq.zero(), |acc, i| fq.add(&acc, &fq.mul(&m[j][i], &fv[i]))))
            .collect()
    };
    Ok(ehh2_core::field::galois_fixed_subspace(&fq, &basis, action)?)
}

/// The F^×_{p²} ⋊ Gal-invariant subtable over F_p.
pub fn group_action_invariants(
    table: &CohomologyTable,
    ctx: &CobarContext,
    galois: GaloisConvention,
) -> Result<CohomologyTable, CobarError> {
    if table.field != "F_{p^2}" {
        return Err(CobarError::Parameter("invariants need the table over F_{p^2}".into()));
    }
    let fq = ExtField::quadratic(ctx.p)?;
    let top = CobarComplex::new(&ctx.hopf, ctx.bound, ctx.sign);
    let q1 = (ctx.p as i64) * (ctx.p as i64) - 1;
    let mut fixed = vec![];
    for cl in &table.classes {
        fixed.push(galois_fixed_classes(ctx, cl, galois)?);
    }
    let mut entries = vec![];
    for e in &table.entries {
        let (s, t) = e.bidegree;
        let (dimension, representatives) = if weight_zero(ctx.p, t) && e.dimension > 0 {
            let m = t / (2 * q1);
            let cl = &table.classes[s];
            let texts = fixed[s]
                .iter()
                .map(|v| {
                    let parts: Vec<String> = v
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .map(|(i, c)| format!("({}) * ({})", fq.to_text(c), top.chain_text(&cl.reps[i], s, 0)))
                        .collect();
                    let v2 = if m == 0 { String::new() } else { format!("v2^{m} ") };
                    format!("{v2}{}", parts.join(" + "))
                })
                .collect();
            (fixed[s].len(), texts)
        } else {
            (0, vec![])
        };
        entries.push(TableEntry { bidegree: (s, t), dimension, representatives });
    }
    Ok(CohomologyTable {
        p: table.p,
        field: "F_p".into(),
        s_max: table.s_max,
        t_min: table.t_min,
        t_max: table.t_max,
        entries,
        searches: table.searches.clone(),
        classes: table.classes.clone(),
    })
}
