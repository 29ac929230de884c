//! Sparse matrices over exact scalars or sparse polynomials, with exact
//! Gaussian elimination (rank, kernel, reduced echelon form, solving) for
//! the scalar case.
//!
//! Elimination works on a dense copy; pivots prefer sparse rows so that the
//! larger desk-scale instances stay cheap. Reduced row echelon form is
//! unique, which the oracle relies on for canonical subspace deduplication.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::scalar::{FieldKind, Scalar};

/// Entry types a sparse matrix can hold.
pub trait MatEntry: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl MatEntry for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
}

impl MatEntry for SparsePoly {
    fn is_zero(&self) -> bool {
        SparsePoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        SparsePoly::add(self, other).expect("variable count mismatch in matrix entry")
    }
    fn mul(&self, other: &Self) -> Self {
        SparsePoly::mul(self, other).expect("variable count mismatch in matrix entry")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: MatEntry> SparseMatrix<T> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.entries.get(&(r, c))
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: T) {
        let cur = self.entries.get(&(r, c));
        let next = match cur {
            None => v,
            Some(old) => old.add(&v),
        };
        self.set(r, c, next);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = SparseMatrix::new(nrows, ncols);
        for r in 0..nrows {
            for c in 0..ncols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = SparseMatrix::new(self.ncols, self.nrows);
        for (r, c, v) in self.iter() {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        // index rhs rows for sparse traversal
        let mut rhs_rows: BTreeMap<usize, Vec<(usize, &T)>> = BTreeMap::new();
        for (r, c, v) in other.iter() {
            rhs_rows.entry(r).or_default().push((c, v));
        }
        let mut out = SparseMatrix::new(self.nrows, other.ncols);
        for (r, k, a) in self.iter() {
            if let Some(row) = rhs_rows.get(&k) {
                for (c, b) in row {
                    out.add_to(r, *c, a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn map<U: MatEntry>(&self, mut f: impl FnMut(&T) -> U) -> SparseMatrix<U> {
        let mut m = SparseMatrix::new(self.nrows, self.ncols);
        for (r, c, v) in self.iter() {
            m.set(r, c, f(v));
        }
        m
    }

    pub fn try_map<U: MatEntry>(
        &self,
        mut f: impl FnMut(&T) -> Result<U>,
    ) -> Result<SparseMatrix<U>> {
        let mut m = SparseMatrix::new(self.nrows, self.ncols);
        for (r, c, v) in self.iter() {
            m.set(r, c, f(v)?);
        }
        Ok(m)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.ncols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.ncols, other.ncols
            )));
        }
        let mut m = SparseMatrix::new(self.nrows + other.nrows, self.ncols);
        for (r, c, v) in self.iter() {
            m.entries.insert((r, c), v.clone());
        }
        for (r, c, v) in other.iter() {
            m.entries.insert((self.nrows + r, c), v.clone());
        }
        Ok(m)
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.nrows != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.nrows, other.nrows
            )));
        }
        let mut m = SparseMatrix::new(self.nrows, self.ncols + other.ncols);
        for (r, c, v) in self.iter() {
            m.entries.insert((r, c), v.clone());
        }
        for (r, c, v) in other.iter() {
            m.entries.insert((r, self.ncols + c), v.clone());
        }
        Ok(m)
    }
}

impl SparseMatrix<Scalar> {
    pub fn identity(n: usize, field: &FieldKind) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = SparseMatrix::new(nrows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn column(&self, c: usize, field: &FieldKind) -> Vec<Scalar> {
        (0..self.nrows)
            .map(|r| self.get(r, c).cloned().unwrap_or_else(|| field.zero()))
            .collect()
    }

    pub fn to_dense(&self, field: &FieldKind) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![field.zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.iter() {
            rows[r][c] = v.clone();
        }
        rows
    }

    pub fn from_dense(rows: &[Vec<Scalar>], ncols: usize) -> Self {
        let mut m = SparseMatrix::new(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rank(&self, field: &FieldKind) -> usize {
        rref_dense(&mut self.to_dense(field), field).len()
    }

    /// Reduced row echelon form along with the pivot columns.
    pub fn rref(&self, field: &FieldKind) -> (SparseMatrix<Scalar>, Vec<usize>) {
        let mut rows = self.to_dense(field);
        let pivots = rref_dense(&mut rows, field);
        (SparseMatrix::from_dense(&rows, self.ncols), pivots)
    }

    /// Canonical column-space basis: columns of the result are the transposed
    /// reduced echelon rows of the transpose. Two matrices have the same
    /// column space iff this output is equal.
    pub fn column_space_basis(&self, field: &FieldKind) -> SparseMatrix<Scalar> {
        let t = self.transpose();
        let mut rows = t.to_dense(field);
        let pivots = rref_dense(&mut rows, field);
        let basis: Vec<Vec<Scalar>> = rows.into_iter().take(pivots.len()).collect();
        SparseMatrix::from_columns(self.nrows, &basis)
    }

    /// Basis of the right kernel {x : Mx = 0}.
    pub fn kernel_basis(&self, field: &FieldKind) -> Vec<Vec<Scalar>> {
        let mut rows = self.to_dense(field);
        let pivots = rref_dense(&mut rows, field);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vecx = vec![field.zero(); self.ncols];
            vecx[free] = field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                vecx[pc] = rows[i][free].neg();
            }
            basis.push(vecx);
        }
        basis
    }

    /// Solves Mx = v exactly; `None` when v is outside the column space.
    pub fn solve_in_column_space(
        &self,
        v: &[Scalar],
        field: &FieldKind,
    ) -> Result<Option<Vec<Scalar>>> {
        if v.len() != self.nrows {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} against {} rows",
                v.len(),
                self.nrows
            )));
        }
        let mut rows = self.to_dense(field);
        for (r, row) in rows.iter_mut().enumerate() {
            row.push(v[r].clone());
        }
        let pivots = rref_dense(&mut rows, field);
        if pivots.contains(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![field.zero(); self.ncols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = rows[i][self.ncols].clone();
        }
        Ok(Some(x))
    }
}

/// In-place reduced row echelon form. Returns the pivot columns; the first
/// `pivots.len()` rows of the output form the canonical basis of the row
/// space, remaining rows are zero.
pub fn rref_dense(rows: &mut Vec<Vec<Scalar>>, _field: &FieldKind) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..ncols {
        if next_row >= nrows {
            break;
        }
        // pick the sparsest row with a nonzero in this column
        let mut best: Option<(usize, usize)> = None;
        for r in next_row..nrows {
            if !rows[r][col].is_zero() {
                let nz = rows[r].iter().filter(|v| !v.is_zero()).count();
                if best.map(|(_, b)| nz < b).unwrap_or(true) {
                    best = Some((r, nz));
                }
            }
        }
        let Some((prow, _)) = best else { continue };
        rows.swap(next_row, prow);
        let inv = rows[next_row][col].inv();
        for v in rows[next_row].iter_mut() {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        for r in 0..nrows {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..ncols {
                if !rows[next_row][c].is_zero() {
                    let delta = rows[next_row][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldKind {
        FieldKind::Rational
    }

    fn mat(field: &FieldKind, rows: &[&[i64]]) -> SparseMatrix<Scalar> {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = SparseMatrix::new(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, field.from_i64(v));
            }
        }
        m
    }

    #[test]
    fn rank_zero_and_identity() {
        let f = q();
        assert_eq!(SparseMatrix::new(3, 3).rank(&f), 0);
        assert_eq!(SparseMatrix::identity(4, &f).rank(&f), 4);
    }

    #[test]
    fn rank_dependent_rows() {
        let f = q();
        let m = mat(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(&f), 1);
    }

    #[test]
    fn rank_transpose_matches() {
        let f = FieldKind::Fp(5);
        let m = mat(&f, &[&[1, 2, 3], &[4, 0, 1], &[0, 2, 4]]);
        assert_eq!(m.rank(&f), m.transpose().rank(&f));
    }

    #[test]
    fn solve_identity() {
        let f = q();
        let id = SparseMatrix::identity(3, &f);
        let v = vec![f.from_i64(4), f.from_i64(-1), f.from_i64(7)];
        assert_eq!(id.solve_in_column_space(&v, &f).unwrap().unwrap(), v);
    }

    #[test]
    fn solve_zero_matrix_rejects() {
        let f = q();
        let z: SparseMatrix<Scalar> = SparseMatrix::new(2, 2);
        let v = vec![f.from_i64(1), f.from_i64(0)];
        assert!(z.solve_in_column_space(&v, &f).unwrap().is_none());
    }

    #[test]
    fn solve_single_column() {
        let f = q();
        let m = mat(&f, &[&[1], &[2]]);
        let v = vec![f.from_i64(2), f.from_i64(4)];
        assert_eq!(
            m.solve_in_column_space(&v, &f).unwrap().unwrap(),
            vec![f.from_i64(2)]
        );
        let w = vec![f.from_i64(2), f.from_i64(5)];
        assert!(m.solve_in_column_space(&w, &f).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_error() {
        let f = q();
        let m = mat(&f, &[&[1], &[2]]);
        assert!(m.solve_in_column_space(&[f.from_i64(1)], &f).is_err());
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = q();
        let m = mat(&f, &[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis(&f);
        assert_eq!(k.len(), 1);
        // Mx = 0 for the kernel vector
        for row in m.to_dense(&f) {
            let mut acc = f.zero();
            for (a, b) in row.iter().zip(&k[0]) {
                acc = acc.add(&a.mul(b));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn rref_canonical_over_gf2() {
        let f = FieldKind::Fp(2);
        let a = mat(&f, &[&[1, 1, 0], &[0, 1, 1]]);
        let b = mat(&f, &[&[1, 0, 1], &[0, 1, 1]]);
        // same row space, same rref
        assert_eq!(a.rref(&f).0, b.rref(&f).0);
    }

    #[test]
    fn matmul_poly_scalar_shapes() {
        let f = q();
        let a = mat(&f, &[&[1, 0], &[0, 1], &[1, 1]]);
        let b = mat(&f, &[&[2], &[3]]);
        let c = a.mul(&b).unwrap();
        assert_eq!((c.nrows(), c.ncols()), (3, 1));
        assert_eq!(c.get(2, 0).unwrap(), &f.from_i64(5));
    }

    #[test]
    fn q_vs_fp_rank_agreement() {
        // entries <= 4 in a 4x4: every minor is below the Hadamard bound 1024,
        // so rank over Q equals rank over GF(10007)
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let fq = q();
        let fp = FieldKind::Fp(10007);
        for _ in 0..40 {
            let rows: Vec<Vec<i64>> = (0..4)
                .map(|_| (0..4).map(|_| rng.gen_range(0..5)).collect())
                .collect();
            let rq = SparseMatrix::from_fn(4, 4, |r, c| fq.from_i64(rows[r][c]));
            let rp = SparseMatrix::from_fn(4, 4, |r, c| fp.from_i64(rows[r][c]));
            assert_eq!(rq.rank(&fq), rp.rank(&fp));
        }
    }
}
