//! Exact linear algebra: kernels, images, solving, and basis completion.
//!
//! Matrices are stored as sparse rows but the storage is an internal concern;
//! every public result is canonical. Elimination produces the reduced row
//! echelon form, which is unique, so kernels and representatives are
//! reproducible byte-for-byte regardless of insertion order — the same output
//! leftmost-pivot Gauss-Jordan with first-nonzero row choice would give.

use crate::error::{EngineError, Result};
use crate::scalar::{GroundField, Scalar};

/// Sparse row: strictly increasing column indices, no explicit zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `dst - coeff * src`, merging sorted sparse rows.
fn axpy(dst: &SparseRow, coeff: &Scalar, src: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((ci, v)), Some((cj, w))) if ci == cj => {
                let val = v.sub(&coeff.mul(w));
                if !val.is_zero() {
                    out.push((*ci, val));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, v)), Some((cj, _))) if ci < cj => {
                out.push((*ci, v.clone()));
                i += 1;
            }
            (Some(_), Some((cj, w))) => {
                let val = coeff.mul(w).neg();
                if !val.is_zero() {
                    out.push((*cj, val));
                }
                j += 1;
            }
            (Some((ci, v)), None) => {
                out.push((*ci, v.clone()));
                i += 1;
            }
            (None, Some((cj, w))) => {
                let val = coeff.mul(w).neg();
                if !val.is_zero() {
                    out.push((*cj, val));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn row_get(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone())).collect()
}

fn sparse_to_dense(row: &SparseRow, len: usize, field: GroundField) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(field); len];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

/// Exact matrix over ℚ or F_p. All entries share one field tag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: GroundField,
    data: Vec<SparseRow>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: GroundField) -> Matrix {
        Matrix { rows, cols, field, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize, field: GroundField) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.data[i].push((i, Scalar::one(field)));
        }
        m
    }

    /// Builds from a dense grid, checking that every entry carries `field`.
    pub fn from_dense(field: GroundField, grid: &[Vec<Scalar>]) -> Result<Matrix> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows);
        for (i, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(EngineError::Malformed(format!(
                    "ragged matrix: row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(EngineError::Malformed(format!(
                        "field mismatch in matrix entry: {} vs {}",
                        s.field(),
                        field
                    )));
                }
            }
            data.push(dense_to_sparse(row));
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: GroundField,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows);
        for i in 0..rows {
            let mut row = Vec::new();
            for j in 0..cols {
                let v = f(i, j);
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
            data.push(row);
        }
        Matrix { rows, cols, field, data }
    }

    /// Builds from (row, col, value) triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: GroundField,
        mut triplets: Vec<(usize, usize, Scalar)>,
    ) -> Matrix {
        triplets.sort_by_key(|(r, c, _)| (*r, *c));
        let mut data = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            debug_assert!(r < rows && c < cols);
            let row: &mut SparseRow = &mut data[r];
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
                _ => row.push((c, v)),
            }
        }
        for row in &mut data {
            row.retain(|(_, v)| !v.is_zero());
        }
        Matrix { rows, cols, field, data }
    }

    /// Matrix whose columns are the given dense vectors.
    pub fn from_columns(len: usize, field: GroundField, cols: &[Vec<Scalar>]) -> Matrix {
        let mut triplets = Vec::new();
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    triplets.push((i, j, v.clone()));
                }
            }
        }
        Matrix::from_triplets(len, cols.len(), field, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        row_get(&self.data[r], c).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn row_sparse(&self, r: usize) -> &SparseRow {
        &self.data[r]
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data.iter().map(|row| sparse_to_dense(row, self.cols, self.field)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> Matrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                triplets.push((*j, i, v.clone()));
            }
        }
        Matrix::from_triplets(self.cols, self.rows, self.field, triplets)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(EngineError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            // out_row = sum_k row[k] * other.row(k)
            let mut acc: SparseRow = Vec::new();
            for (k, v) in row {
                let neg = v.neg();
                acc = axpy(&acc, &neg, &other.data[*k]);
            }
            data.push(acc);
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, field: self.field, data })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc = Scalar::zero(self.field);
            for (c, w) in row {
                if !v[*c].is_zero() {
                    acc = acc.add(&w.mul(&v[*c]));
                }
            }
            out.push(acc);
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(EngineError::DimensionMismatch("matrix add".into()));
        }
        let minus_one = Scalar::one(self.field).neg();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(a, &minus_one, b))
            .collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(EngineError::DimensionMismatch("matrix sub".into()));
        }
        let one = Scalar::one(self.field);
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, &one, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, data })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut m = self.clone();
        for row in &mut m.data {
            for (_, v) in row.iter_mut() {
                *v = v.mul(c);
            }
            row.retain(|(_, v)| !v.is_zero());
        }
        m
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(EngineError::DimensionMismatch("stack".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, data })
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for (i, row) in self.data.iter().enumerate() {
            if let Some(v) = row_get(row, j) {
                out[i] = v.clone();
            }
        }
        out
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }
}

/// Reduced row echelon form. Pivot rows are normalized (leading 1), mutually
/// reduced, and sorted by pivot column, so the result is the canonical RREF.
pub struct Rref {
    cols: usize,
    field: GroundField,
    /// (pivot column, row) sorted by pivot column.
    pivots: Vec<(usize, SparseRow)>,
}

impl Rref {
    pub fn new(cols: usize, field: GroundField) -> Rref {
        Rref { cols, field, pivots: Vec::new() }
    }

    pub fn from_matrix(m: &Matrix) -> Rref {
        let mut r = Rref::new(m.cols(), m.field());
        for row in &m.data {
            r.insert(row.clone());
        }
        r
    }

    /// Reduces `row` against the current pivots; if a nonzero residual is left
    /// it becomes a new pivot row. Returns true when the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].0;
        let inv = row[0].1.inv().expect("nonzero leading coefficient");
        let norm: SparseRow = row.iter().map(|(c, v)| (*c, v.mul(&inv))).collect();
        // keep existing pivot rows reduced against the new one
        for (_, prow) in self.pivots.iter_mut() {
            if let Some(c) = row_get(prow, lead).cloned() {
                *prow = axpy(prow, &c, &norm);
            }
        }
        let pos = self.pivots.partition_point(|(c, _)| *c < lead);
        self.pivots.insert(pos, (lead, norm));
        true
    }

    /// Fully reduces a row against the pivots (single pass, pivots are RREF).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        for (pcol, prow) in &self.pivots {
            if let Some(c) = row_get(&row, *pcol).cloned() {
                row = axpy(&row, &c, prow);
            }
        }
        row
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    /// Canonical kernel basis: one vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let pivot_cols = self.pivot_columns();
        let mut is_pivot = vec![false; self.cols];
        for c in &pivot_cols {
            is_pivot[*c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (pcol, prow) in &self.pivots {
                if let Some(entry) = row_get(prow, free) {
                    v[*pcol] = entry.neg();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Incremental span membership: insert generating vectors, then express
/// queries as combinations of the independent ones.
pub struct SpanSolver {
    len: usize,
    field: GroundField,
    /// Echelon rows sorted by leading column; each carries the combination of
    /// inserted vectors (by tag) that produced it.
    rows: Vec<(usize, SparseRow, SparseRow)>,
    inserted: usize,
}

impl SpanSolver {
    pub fn new(len: usize, field: GroundField) -> SpanSolver {
        SpanSolver { len, field, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a vector with the next tag; returns true if independent.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.len, "span solver length mismatch");
        let tag = self.inserted;
        self.inserted += 1;
        let mut row = dense_to_sparse(v);
        let mut combo: SparseRow = vec![(tag, Scalar::one(self.field))];
        for (lead, erow, ecombo) in &self.rows {
            if let Some(c) = row_get(&row, *lead).cloned() {
                row = axpy(&row, &c, erow);
                combo = axpy(&combo, &c, ecombo);
            }
        }
        if row.is_empty() {
            return false;
        }
        let inv = row[0].1.inv().unwrap();
        let lead = row[0].0;
        let row: SparseRow = row.iter().map(|(c, v)| (*c, v.mul(&inv))).collect();
        let combo: SparseRow = combo.iter().map(|(c, v)| (*c, v.mul(&inv))).collect();
        let pos = self.rows.partition_point(|(c, _, _)| *c < lead);
        self.rows.insert(pos, (lead, row, combo));
        true
    }

    /// If `v` lies in the span, returns coefficients over inserted tags.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vec<(usize, Scalar)>> {
        assert_eq!(v.len(), self.len);
        let mut row = dense_to_sparse(v);
        let mut combo: SparseRow = Vec::new();
        for (lead, erow, ecombo) in &self.rows {
            if let Some(c) = row_get(&row, *lead).cloned() {
                row = axpy(&row, &c, erow);
                combo = axpy(&combo, &c, ecombo);
            }
        }
        if row.is_empty() {
            // v - sum(combo_i * gen_i) = 0 after reductions, combo holds -coeffs
            Some(combo.iter().map(|(t, c)| (*t, c.neg())).collect())
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.solve(v).is_some()
    }
}

/// Basis of the nullspace `{v : m v = 0}`. Canonical: the reduced-echelon
/// kernel with one vector per free column, ordered by free column index.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    Rref::from_matrix(m).kernel_basis()
}

pub fn rank(m: &Matrix) -> usize {
    Rref::from_matrix(m).rank()
}

/// Some `x` with `m x = b` iff `b` lies in the column space (free
/// coordinates zero), otherwise `None`.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows() {
        return Err(EngineError::DimensionMismatch(format!(
            "solve: matrix has {} rows, rhs has {}",
            m.rows(),
            b.len()
        )));
    }
    let mut solver = SpanSolver::new(m.rows(), m.field());
    for col in m.columns() {
        solver.insert(&col);
    }
    // tags are insertion indices, i.e. column indices here
    match solver.solve(b) {
        None => Ok(None),
        Some(combo) => {
            let mut x = vec![Scalar::zero(m.field()); m.cols()];
            for (tag, c) in combo {
                x[tag] = c;
            }
            Ok(Some(x))
        }
    }
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let n = m.rows();
    let mut solver = SpanSolver::new(n, m.field());
    for col in m.columns() {
        if !solver.insert(&col) {
            return None;
        }
    }
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Scalar::zero(m.field()); n];
        e[i] = Scalar::one(m.field());
        let combo = solver.solve(&e)?;
        let mut x = vec![Scalar::zero(m.field()); n];
        for (tag, c) in combo {
            x[tag] = c;
        }
        cols.push(x);
    }
    Some(Matrix::from_columns(n, m.field(), &cols))
}

/// Deterministic basis of the column space: the independent columns of `m`,
/// leftmost first.
pub fn image_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut solver = SpanSolver::new(m.rows(), m.field());
    let mut basis = Vec::new();
    for col in m.columns() {
        if solver.insert(&col) {
            basis.push(col);
        }
    }
    basis
}

/// Extends a basis of `span(im)` to a basis of `span(ker)`; the returned
/// vectors are the first members of `ker` independent modulo `span(im)`.
/// Errors when `span(im)` is not contained in `span(ker)` (a broken complex).
pub fn image_complement(
    ker: &[Vec<Scalar>],
    im: &[Vec<Scalar>],
    len: usize,
    field: GroundField,
) -> Result<Vec<Vec<Scalar>>> {
    let mut ker_span = SpanSolver::new(len, field);
    for v in ker {
        ker_span.insert(v);
    }
    for (i, v) in im.iter().enumerate() {
        if !ker_span.contains(v) {
            return Err(EngineError::InconsistentComplex(format!(
                "image vector {i} lies outside the kernel span"
            )));
        }
    }
    let mut span = SpanSolver::new(len, field);
    for v in im {
        span.insert(v);
    }
    let mut complement = Vec::new();
    for v in ker {
        if span.insert(v) {
            complement.push(v.clone());
        }
    }
    Ok(complement)
}
