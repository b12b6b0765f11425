//! Dense matrices over GF(q).
//!
//! Row-major storage. `rref` normalizes pivots to 1 and picks the first
//! nonzero entry scanning left to right, so the reduced form is unique and
//! row-space equality is a plain comparison. Over GF(2) `rank` runs on
//! bit-packed rows.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

/// Largest number of entries a matrix may hold.
pub const MAX_ENTRIES: usize = 1 << 24;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_size(rows: usize, cols: usize) -> Result<()> {
    match rows.checked_mul(cols) {
        Some(n) if n <= MAX_ENTRIES => Ok(()),
        _ => Err(Error::MatrixTooLarge { rows, cols }),
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Result<Matrix> {
        check_size(rows, cols)?;
        Ok(Matrix { field: field.clone(), rows, cols, data: vec![FieldElem::ZERO; rows * cols] })
    }

    pub fn identity(field: &Field, n: usize) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, n, n)?;
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        Ok(m)
    }

    pub fn from_elems(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Matrix> {
        check_size(rows, cols)?;
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|x| x.value() >= field.q()) {
            return Err(Error::ElementOutOfRange { value: bad.value() as u64, q: field.q() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from canonical integer entries, row-major.
    pub fn from_values(field: &Field, rows: usize, cols: usize, values: &[u32]) -> Result<Matrix> {
        let data = values.iter().map(|&v| field.elem(v as u64)).collect::<Result<Vec<_>>>()?;
        Matrix::from_elems(field, rows, cols, data)
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(field: &Field, rows: &[Vec<FieldElem>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::from_elems(field, rows.len(), cols, rows.concat())
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data: vec![FieldElem::ZERO; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols)?;
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                let neg_a = f.neg(a);
                let (src_start, src_end) = (t * other.cols, (t + 1) * other.cols);
                let dst = out.row_mut(i);
                f.sub_scaled(dst, &other.data[src_start..src_end], neg_a);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("stacking {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_elems(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// Selects the given columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            data.extend(cols.iter().map(|&j| self.get(i, j)));
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: cols.len(), data }
    }

    pub fn rank(&self) -> usize {
        if self.field.is_binary() {
            gf2_rank(self)
        } else {
            self.rank_generic()
        }
    }

    /// Rank by forward elimination with field arithmetic; no bit packing.
    pub fn rank_generic(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Reduced row echelon form, same shape, zero rows at the bottom.
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        m.eliminate(true);
        m
    }

    /// Pivot columns of the reduced form.
    pub fn pivots(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.eliminate(true)
    }

    /// Nonzero rows of the reduced row echelon form: the canonical basis of
    /// the row space.
    pub fn row_basis(&self) -> Matrix {
        let mut m = self.clone();
        let r = m.eliminate(true).len();
        m.data.truncate(r * m.cols);
        m.rows = r;
        m
    }

    /// Basis of the right kernel `{x : M x = 0}`, as rows, in reduced form.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut data = vec![FieldElem::ZERO; free.len() * self.cols];
        for (t, &fc) in free.iter().enumerate() {
            let row = &mut data[t * self.cols..(t + 1) * self.cols];
            row[fc] = FieldElem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                row[pc] = f.neg(m.get(i, fc));
            }
        }
        let k = Matrix { field: f.clone(), rows: free.len(), cols: self.cols, data };
        k.row_basis()
    }

    pub fn row_space_equal(&self, other: &Matrix) -> Result<bool> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "comparing row spaces in {} and {} columns",
                self.cols, other.cols
            )));
        }
        Ok(self.row_basis() == other.row_basis())
    }

    /// Row-major flattening into a single row vector.
    pub fn vec(&self) -> Vec<FieldElem> {
        self.data.clone()
    }

    /// Inverse of [`Matrix::vec`].
    pub fn unvec(field: &Field, rows: usize, cols: usize, v: &[FieldElem]) -> Result<Matrix> {
        Matrix::from_elems(field, rows, cols, v.to_vec())
    }

    /// Outer product `p q^T`.
    pub fn outer(field: &Field, p: &[FieldElem], q: &[FieldElem]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, p.len(), q.len())?;
        for (i, &a) in p.iter().enumerate() {
            for (j, &b) in q.iter().enumerate() {
                m.set(i, j, field.mul(a, b));
            }
        }
        Ok(m)
    }

    /// `tr(B^T u)`, the linear form attached to `B` evaluated at `u`.
    pub fn bilinear_form_eval(b: &Matrix, u: &Matrix) -> Result<FieldElem> {
        b.same_shape(u)?;
        let f = &b.field;
        Ok(b.data.iter().zip(&u.data).fold(FieldElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// In-place Gaussian elimination. With `reduced`, pivots are scaled to 1
    /// and cleared above as well as below. Returns the pivot columns.
    fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(r * cols + j, pr * cols + j);
                }
            }
            if reduced {
                let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
                f.scale(self.row_mut(r), inv);
            }
            let pivot_row: Vec<FieldElem> = self.row(r)[c..].to_vec();
            let lead_inv = if reduced { FieldElem::ONE } else { f.inv(pivot_row[0]).expect("pivot is nonzero") };
            let start = if reduced { 0 } else { r + 1 };
            for i in start..self.rows {
                if i == r {
                    continue;
                }
                let x = self.get(i, c);
                if x.is_zero() {
                    continue;
                }
                let factor = f.mul(x, lead_inv);
                let row = &mut self.data[i * cols + c..(i + 1) * cols];
                f.sub_scaled(row, &pivot_row, factor);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Rows packed 64 entries per word.
fn pack_gf2(m: &Matrix) -> (Vec<u64>, usize) {
    let words = m.cols.div_ceil(64).max(1);
    let mut packed = vec![0u64; m.rows * words];
    for i in 0..m.rows {
        for (j, x) in m.row(i).iter().enumerate() {
            if x.0 & 1 == 1 {
                packed[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    (packed, words)
}

/// Rank over GF(2) with word-wise XOR elimination.
pub fn gf2_rank(m: &Matrix) -> usize {
    let (mut rows, words) = pack_gf2(m);
    let nrows = m.rows;
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == nrows {
            break;
        }
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (rank..nrows).find(|&i| rows[i * words + w] & bit != 0) else {
            continue;
        };
        if pr != rank {
            for t in 0..words {
                rows.swap(rank * words + t, pr * words + t);
            }
        }
        for i in rank + 1..nrows {
            if rows[i * words + w] & bit != 0 {
                for t in w..words {
                    let v = rows[rank * words + t];
                    rows[i * words + t] ^= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Incrementally maintained echelon basis; used by enumerators that add one
/// vector at a time and need the rank after each step.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    dim: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &Field, dim: usize) -> Self {
        EchelonBasis { field: field.clone(), dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[FieldElem]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let x = v[pc];
            if !x.is_zero() {
                f.sub_scaled(&mut v, row, x);
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[pc]).expect("nonzero");
        f.scale(&mut v, inv);
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }
}
