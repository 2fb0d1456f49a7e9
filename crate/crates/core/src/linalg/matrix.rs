use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::index::MultiIndex;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Row-major data; every entry must be an encoded element of `field`.
    pub fn from_vec(field: Arc<Field>, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|&&v| v >= field.order()) {
            return Err(Error::OutOfRange(format!("{bad} is not an element of {field}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[u32]>>(field: Arc<Field>, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::from_vec(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || *self.field != *other.field {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0;
                for t in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(r, t), other.get(t, c)));
                }
                out.data[r * other.cols + c] = acc;
            }
        }
        Ok(out)
    }

    /// Stacks the rows of `other` under `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Keeps the first `rows` rows.
    pub fn truncate_rows(&mut self, rows: usize) {
        self.rows = self.rows.min(rows);
        self.data.truncate(self.rows * self.cols);
    }

    /// Reduces in place; returns the pivot column of each nonzero row.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if p != row {
                for c in 0..cols {
                    self.data.swap(p * cols + c, row * cols + c);
                }
            }
            let inv = f.inv_nonzero(self.get(row, col));
            for c in col..cols {
                self.data[row * cols + c] = f.mul(self.data[row * cols + c], inv);
            }
            for r in 0..self.rows {
                let factor = self.get(r, col);
                if r == row || factor == 0 {
                    continue;
                }
                for c in col..cols {
                    let sub = f.mul(factor, self.data[row * cols + c]);
                    self.data[r * cols + c] = f.sub(self.data[r * cols + c], sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Reduced row echelon form and rank. Zero rows stay at the bottom.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place().len();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn is_rref(&self) -> bool {
        self.rref().0 == *self
    }

    /// Basis of the row space, as the nonzero rows of the rref.
    pub fn row_basis(&self) -> Matrix {
        let (mut m, rank) = self.rref();
        m.truncate_rows(rank);
        m
    }

    pub fn same_row_space(&self, other: &Matrix) -> bool {
        self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    /// Basis (as rows) of the right kernel `{x : M x = 0}`.
    pub fn nullspace(&self) -> Matrix {
        let mut rr = self.clone();
        let pivots = rr.rref_in_place();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field.clone(), free.len(), self.cols);
        for (t, &fc) in free.iter().enumerate() {
            out.data[t * self.cols + fc] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                out.data[t * self.cols + pc] = f.neg(rr.get(pr, fc));
            }
        }
        out
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let mut scratch = self.data.clone();
        Ok(det_in_place(&self.field, &mut scratch, self.rows))
    }

    /// The `k x k` minor on the 1-based columns `cols` of a `k x n` matrix.
    pub fn minor(&self, cols: &MultiIndex) -> Result<u32> {
        if cols.n() != self.cols || cols.len() != self.rows {
            return Err(Error::BadIndex(format!(
                "{cols} does not select {} of {} columns",
                self.rows, self.cols
            )));
        }
        let mut scratch = Vec::with_capacity(self.rows * self.rows);
        Ok(minor_of_rows(&self.field, &self.data, self.cols, cols.mask(), &mut scratch))
    }
}

/// Minor of a `k x n` row-major slice on the columns in `mask`.
#[inline]
pub(crate) fn minor_of_rows(field: &Field, data: &[u32], n: usize, mask: u32, scratch: &mut Vec<u32>) -> u32 {
    let k = data.len() / n.max(1);
    scratch.clear();
    for r in 0..k {
        let row = &data[r * n..(r + 1) * n];
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            scratch.push(row[c]);
        }
    }
    det_in_place(field, scratch, k)
}

/// Determinant of an `s x s` row-major slice; clobbers it for `s > 3`.
#[inline]
pub fn det_in_place(f: &Field, a: &mut [u32], s: usize) -> u32 {
    match s {
        0 => 1,
        1 => a[0],
        2 => f.sub(f.mul(a[0], a[3]), f.mul(a[1], a[2])),
        3 => {
            let t0 = f.mul(a[0], f.sub(f.mul(a[4], a[8]), f.mul(a[5], a[7])));
            let t1 = f.mul(a[1], f.sub(f.mul(a[3], a[8]), f.mul(a[5], a[6])));
            let t2 = f.mul(a[2], f.sub(f.mul(a[3], a[7]), f.mul(a[4], a[6])));
            f.add(f.sub(t0, t1), t2)
        }
        _ => det_by_elimination(f, a, s),
    }
}

/// Gaussian elimination with the sign of each row swap tracked.
pub(crate) fn det_by_elimination(f: &Field, a: &mut [u32], s: usize) -> u32 {
    let mut det = 1;
    for col in 0..s {
        let Some(p) = (col..s).find(|&r| a[r * s + col] != 0) else {
            return 0;
        };
        if p != col {
            for c in 0..s {
                a.swap(p * s + c, col * s + c);
            }
            det = f.neg(det);
        }
        let pivot = a[col * s + col];
        det = f.mul(det, pivot);
        let inv = f.inv_nonzero(pivot);
        for r in col + 1..s {
            let factor = f.mul(a[r * s + col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..s {
                let sub = f.mul(factor, a[col * s + c]);
                a[r * s + c] = f.sub(a[r * s + c], sub);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    fn idx(i: &[usize], n: usize) -> MultiIndex {
        MultiIndex::new(i, n).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f3 = gf(3);
        let id = Matrix::identity(f3, 2);
        assert_eq!(id.rref(), (id.clone(), 2));

        let f2 = gf(2);
        let m = Matrix::from_rows(f2.clone(), &[[1, 1], [1, 1]]).unwrap();
        let expect = Matrix::from_rows(f2.clone(), &[[1, 1], [0, 0]]).unwrap();
        assert_eq!(m.rref(), (expect, 1));

        let m = Matrix::from_rows(f2.clone(), &[[0, 1, 1], [1, 0, 1]]).unwrap();
        let expect = Matrix::from_rows(f2, &[[1, 0, 1], [0, 1, 1]]).unwrap();
        assert_eq!(m.rref(), (expect, 2));
    }

    #[test]
    fn minor_examples() {
        let f2 = gf(2);
        let m = Matrix::from_rows(f2.clone(), &[[1, 0, 1], [0, 1, 1]]).unwrap();
        assert_eq!(m.minor(&idx(&[1, 2], 3)).unwrap(), 1);
        assert_eq!(m.minor(&idx(&[2, 3], 3)).unwrap(), 1);
        let f5 = gf(5);
        // columns 2 and 3 are equal
        let m = Matrix::from_rows(f5, &[[1, 2, 2], [0, 3, 3]]).unwrap();
        assert_eq!(m.minor(&idx(&[2, 3], 3)).unwrap(), 0);
        assert!(matches!(m.minor(&idx(&[1], 3)), Err(Error::BadIndex(_))));
        assert!(matches!(m.minor(&idx(&[1, 2], 4)), Err(Error::BadIndex(_))));
    }

    #[test]
    fn closed_forms_match_elimination() {
        let f = gf(7);
        let mut seed = 12345u64;
        for s in 1..=3 {
            for _ in 0..200 {
                let a: Vec<u32> = (0..s * s)
                    .map(|_| {
                        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((seed >> 33) % 7) as u32
                    })
                    .collect();
                let mut b = a.clone();
                let mut c = a.clone();
                assert_eq!(det_in_place(&f, &mut b, s), det_by_elimination(&f, &mut c, s));
            }
        }
    }

    #[test]
    fn nullspace_is_kernel() {
        let f = gf(3);
        let m = Matrix::from_rows(f.clone(), &[[1, 2, 0, 1], [2, 1, 1, 0]]).unwrap();
        let ker = m.nullspace();
        assert_eq!(ker.rows(), 2);
        let prod = m.mul(&ker.transpose()).unwrap();
        assert!(prod.data().iter().all(|&v| v == 0));
        assert_eq!(ker.rank(), 2);
        let full = Matrix::identity(f.clone(), 3);
        assert_eq!(full.nullspace().rows(), 0);
        let zero = Matrix::zeros(f, 1, 3);
        assert_eq!(zero.nullspace().rows(), 3);
    }
}
