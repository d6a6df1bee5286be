//! Sparse matrices over ℚ and exact Gaussian elimination.
//!
//! Elimination always pivots on the leftmost remaining column and, within that
//! column, on the row with the smallest index. Every choice the solver makes
//! (particular solutions, kernel bases) follows from that rule.

use std::collections::BTreeMap;

use super::Scalar;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `y += c * x` on sparse vectors.
pub fn axpy(y: &SparseVec, c: &Scalar, x: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return y.clone();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, c * &x[j].1));
            j += 1;
        } else {
            let v = &y[i].1 + &(c * &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec(x: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, v * c)).collect()
}

/// Converts a dense column to sparse form.
pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds a matrix from sparse columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    /// Stores `v` at `(r, c)`; storing zero removes the entry.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows
    }

    pub fn column_vectors(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.cols];
        for ((r, c), v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        cols
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for ((r, c), v) in &self.entries {
            if !x[*c].is_zero() {
                out[*r] += v * &x[*c];
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let other_rows = other.row_vectors();
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.row_vectors().into_iter().enumerate() {
            let mut acc: SparseVec = Vec::new();
            for (k, v) in row {
                acc = axpy(&acc, &v, &other_rows[k]);
            }
            for (c, v) in acc {
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank(&self) -> usize {
        RowEchelon::of(self).pivots.len()
    }

    /// Kernel basis, one vector per non-pivot column (set to 1) in increasing
    /// column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let ech = RowEchelon::of(self);
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|(c, _)| *c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (pc, row) in &ech.pivots {
                if let Ok(k) = row.binary_search_by_key(&free, |e| e.0) {
                    v[*pc] = -&row[k].1;
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Reduced row echelon form of a matrix. `pivots[k] = (column, row)` with the
/// row normalised to have 1 in its pivot column and zeros in all other pivot
/// columns.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub pivots: Vec<(usize, SparseVec)>,
}

impl RowEchelon {
    pub fn of(m: &SparseMatrix) -> Self {
        Self::from_rows(m.row_vectors(), m.cols)
    }

    fn from_rows(mut rows: Vec<SparseVec>, cols: usize) -> Self {
        let mut used = vec![false; rows.len()];
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        for col in 0..cols {
            let chosen = (0..rows.len()).find(|&r| {
                !used[r] && rows[r].first().map_or(false, |e| e.0 == col)
            });
            let Some(p) = chosen else { continue };
            used[p] = true;
            let inv = rows[p][0].1.recip();
            rows[p] = scale_vec(&rows[p], &inv);
            let prow = rows[p].clone();
            for r in 0..rows.len() {
                if r == p {
                    continue;
                }
                if let Ok(k) = rows[r].binary_search_by_key(&col, |e| e.0) {
                    let c = -&rows[r][k].1;
                    rows[r] = axpy(&rows[r], &c, &prow);
                }
            }
            pivots.push((col, p));
        }
        RowEchelon { pivots: pivots.into_iter().map(|(c, r)| (c, rows[r].clone())).collect() }
    }
}

/// Solves `m x = b` exactly. Free variables are set to zero, so the answer is
/// the particular solution determined by the pivot rule. `Ok(None)` means the
/// system is inconsistent.
pub fn solve_linear(m: &SparseMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: b.len() });
    }
    let n = m.cols;
    let mut rows = m.row_vectors();
    for (r, row) in rows.iter_mut().enumerate() {
        if !b[r].is_zero() {
            row.push((n, b[r].clone()));
        }
    }
    let ech = RowEchelon::from_rows(rows, n + 1);
    let mut x = vec![Scalar::zero(); n];
    for (col, row) in &ech.pivots {
        if *col == n {
            return Ok(None);
        }
        if let Some((c, v)) = row.last() {
            if *c == n {
                x[*col] = v.clone();
            }
        }
    }
    Ok(Some(x))
}

/// An incrementally built echelon basis of a subspace, remembering how each
/// echelon vector is written in terms of the inserted vectors. Used to test
/// membership and to read off coordinates.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    // (pivot index, vector normalised at pivot, combination of inserted vectors)
    rows: Vec<(usize, SparseVec, SparseVec)>,
    inserted: usize,
}

impl SpanBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered so far (independent or not).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_with_history(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut hist: SparseVec = Vec::new();
        for (pivot, row, comb) in &self.rows {
            if let Ok(k) = rem.binary_search_by_key(pivot, |e| e.0) {
                let c = -&rem[k].1;
                rem = axpy(&rem, &c, row);
                hist = axpy(&hist, &c, comb);
            }
        }
        (rem, hist)
    }

    /// Offers a vector; returns `true` when it enlarges the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, hist) = self.reduce_with_history(v);
        if rem.is_empty() {
            return false;
        }
        let mut comb = hist;
        comb = axpy(&comb, &Scalar::one(), &vec![(id, Scalar::one())]);
        let pivot = rem[0].0;
        let inv = rem[0].1.recip();
        let row = scale_vec(&rem, &inv);
        let comb = scale_vec(&comb, &inv);
        // keep fully reduced so later reductions see each pivot once
        for (_, other, other_comb) in self.rows.iter_mut() {
            if let Ok(k) = other.binary_search_by_key(&pivot, |e| e.0) {
                let c = -&other[k].1;
                *other = axpy(other, &c, &row);
                *other_comb = axpy(other_comb, &c, &comb);
            }
        }
        self.rows.push((pivot, row, comb));
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_with_history(v).0.is_empty()
    }

    /// Writes `v` as a combination of the inserted vectors (indexed by insertion
    /// order), or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, hist) = self.reduce_with_history(v);
        if rem.is_empty() {
            Some(scale_vec(&hist, &Scalar::from_int(-1)))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_solve() {
        let m = SparseMatrix::identity(2);
        let b = vec![q(3), Scalar::new(-1, 2)];
        assert_eq!(solve_linear(&m, &b).unwrap(), Some(b.clone()));
    }

    #[test]
    fn inconsistent_system() {
        let m = SparseMatrix::zeros(1, 1);
        assert_eq!(solve_linear(&m, &[q(1)]).unwrap(), None);
    }

    #[test]
    fn pivot_rule_particular_solution() {
        let m = SparseMatrix::from_dense(&[vec![q(2), q(4)], vec![q(1), q(2)]]);
        let x = solve_linear(&m, &[q(2), q(1)]).unwrap().unwrap();
        assert_eq!(x, vec![q(1), q(0)]);
        assert_eq!(m.mul_vec(&x).unwrap(), vec![q(2), q(1)]);
    }

    #[test]
    fn dimension_mismatch() {
        let m = SparseMatrix::zeros(2, 3);
        assert!(matches!(solve_linear(&m, &[q(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = SparseMatrix::from_dense(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn span_coordinates() {
        let mut s = SpanBasis::new();
        assert!(s.insert(&vec![(0, q(1)), (1, q(1))]));
        assert!(s.insert(&vec![(1, q(1)), (2, q(1))]));
        assert!(!s.insert(&vec![(0, q(1)), (2, q(-1))]));
        let c = s.coordinates(&vec![(0, q(2)), (1, q(5)), (2, q(3))]).unwrap();
        assert_eq!(c, vec![(0, q(2)), (1, q(3))]);
        assert!(s.coordinates(&vec![(0, q(1))]).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            (
                proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r),
                proptest::collection::vec(-5i64..6, c),
            )
        })
    }

    proptest! {
        // b is built as M x0, so a solution exists; the returned x must satisfy M x = b.
        #[test]
        fn solve_substitutes_back((rows, x0) in small_matrix()) {
            let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
            let m = SparseMatrix::from_dense(&dense);
            let x0: Vec<Scalar> = x0.iter().map(|&v| q(v)).collect();
            let b = m.mul_vec(&x0).unwrap();
            let x = solve_linear(&m, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }

        #[test]
        fn rank_nullity((rows, _x) in small_matrix()) {
            let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
            let m = SparseMatrix::from_dense(&dense);
            prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
        }
    }
}
