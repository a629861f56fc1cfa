//! Gaussian elimination over an exact field, dense and incremental sparse.

use crate::field::Field;
use rustc_hash::FxHashMap;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut m = m.to_vec();
    rref(f, &mut m).len()
}

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
pub fn kernel<F: Field>(f: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = m.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&m[r][fc]);
            }
            v
        })
        .collect()
}

/// Nonzero rows of the echelon form: a basis of the row span.
pub fn row_basis<F: Field>(f: &F, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut m = vectors.to_vec();
    let k = rref(f, &mut m).len();
    m.truncate(k);
    m
}

/// Some x with m x = b, if one exists.
pub fn solve<F: Field>(f: &F, m: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut aug: Vec<Vec<F::Elem>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

pub type SparseVec<E> = Vec<(usize, E)>;

/// Incrementally built echelon basis of sparse vectors. Each stored vector
/// is monic at its pivot (its smallest index) and remembers the combination
/// of inserted vectors that produced it.
#[derive(Debug, Clone)]
pub struct SparseEchelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    combos: Vec<SparseVec<F::Elem>>,
    pivot_of: FxHashMap<usize, usize>,
    inserted: usize,
}

fn axpy<F: Field>(f: &F, x: &SparseVec<F::Elem>, a: &F::Elem, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    // x + a*y, both sorted by index
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, f.mul(a, &y[j].1)));
            j += 1;
        } else {
            let v = f.add(&x[i].1, &f.mul(a, &y[j].1));
            if !f.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: F) -> Self {
        SparseEchelon { field, rows: vec![], combos: vec![], pivot_of: FxHashMap::default(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the basis; returns the remainder and the
    /// combination of inserted vectors subtracted.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut v = v.clone();
        v.sort_by_key(|e| e.0);
        let mut combo: SparseVec<F::Elem> = vec![];
        let mut pos = 0;
        while pos < v.len() {
            let (idx, c) = v[pos].clone();
            if let Some(&r) = self.pivot_of.get(&idx) {
                let a = f.neg(&c);
                v = axpy(f, &v, &a, &self.rows[r]);
                combo = axpy(f, &combo, &a, &self.combos[r]);
                // entries before pos are unchanged since rows start at their pivot
            } else {
                pos += 1;
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Insert; returns true if v was independent of the current span.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let f = self.field.clone();
        let id = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(v);
        if rem.is_empty() {
            return false;
        }
        let mut combo = combo;
        combo = axpy(&f, &combo, &f.one(), &vec![(id, f.one())]);
        let inv = f.inv(&rem[0].1).unwrap();
        let rem: SparseVec<F::Elem> = rem.into_iter().map(|(i, c)| (i, f.mul(&c, &inv))).collect();
        let combo = combo.into_iter().map(|(i, c)| (i, f.mul(&c, &inv))).collect();
        self.pivot_of.insert(rem[0].0, self.rows.len());
        self.rows.push(rem);
        self.combos.push(combo);
        true
    }

    /// Express v as a combination of the inserted vectors, if it lies in
    /// their span.
    pub fn express(&self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let (rem, combo) = self.reduce(v);
        if !rem.is_empty() {
            return None;
        }
        let f = &self.field;
        Some(combo.into_iter().map(|(i, c)| (i, f.neg(&c))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn kernel_of_small_matrix() {
        let f = PrimeField::new(3).unwrap();
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let k = kernel(&f, &m, 3);
        assert_eq!(k, vec![vec![1, 2, 1]]);
        assert_eq!(solve(&f, &m, &[1, 1]), Some(vec![0, 1, 0]));
    }

    #[test]
    fn sparse_echelon_expresses() {
        let f = PrimeField::new(5).unwrap();
        let mut e = SparseEchelon::new(f);
        assert!(e.insert(&vec![(0, 1), (2, 3)]));
        assert!(e.insert(&vec![(2, 1), (4, 1)]));
        assert!(!e.insert(&vec![(0, 1), (2, 4), (4, 1)]));
        let target = vec![(0, 2), (4, 4)];
        let c = e.express(&target).unwrap();
        assert_eq!(c, vec![(0, 2), (1, 4)]);
        assert!(e.express(&vec![(3, 1)]).is_none());
    }
}
