//! Enumeration of `G(k, n)` over GF(q), one reduced echelon representative
//! per subspace.
//!
//! Points are grouped by Schubert cell (the pivot set of the echelon form).
//! Cells are visited in lexicographic order of their pivot sets and, within a
//! cell, the free entries run as an odometer over the field elements, with the
//! first free entry (in row-major order) most significant. A cell can be cut
//! into contiguous [`GrassmannChunk`]s by fixing a prefix of its free entries;
//! walking the chunks in order reproduces the full order exactly.

use std::sync::Arc;

use crate::combinatorics::gaussian_binomial;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fields::Field;
use crate::index::{subsets, MultiIndex, MAX_N};
use crate::linalg::Matrix;

/// A `k`-subspace of `GF(q)^n` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannPoint {
    matrix: Matrix,
    pivots: MultiIndex,
}

impl GrassmannPoint {
    /// Reduces a full-rank `k x n` matrix to its unique representative.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let mut r = m.clone();
        let pivots = r.rref_in_place();
        if pivots.len() != m.rows() {
            return Err(Error::RankDeficient { rank: pivots.len(), expected: m.rows() });
        }
        let mask = pivots.iter().fold(0u32, |acc, &c| acc | 1 << c);
        Ok(GrassmannPoint { matrix: r, pivots: MultiIndex::from_mask(mask, m.cols()) })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn pivots(&self) -> MultiIndex {
        self.pivots
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn ambient(&self) -> usize {
        self.matrix.cols()
    }

    /// `true` when `self` is a subspace of `other`.
    pub fn is_subspace_of(&self, other: &GrassmannPoint) -> bool {
        let joined = other.matrix.stack(&self.matrix).expect("same ambient space");
        joined.rank() == other.dim()
    }

    /// Dimension of `self ∩ other`.
    pub fn meet_dim(&self, other: &GrassmannPoint) -> usize {
        self.dim() + other.dim() - self.join_dim(other)
    }

    /// Dimension of `self + other`.
    pub fn join_dim(&self, other: &GrassmannPoint) -> usize {
        self.matrix.stack(&other.matrix).expect("same ambient space").rank()
    }
}

/// The echelon shape shared by all points with a given pivot set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertCell {
    k: usize,
    n: usize,
    pivots: Vec<usize>,
    /// Row-major positions `(row, col)` of the free entries.
    free: Vec<(usize, usize)>,
}

impl SchubertCell {
    pub fn new(pivot_mask: u32, n: usize) -> Self {
        let pivots: Vec<usize> = (0..n).filter(|&c| pivot_mask >> c & 1 == 1).collect();
        let k = pivots.len();
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if pivot_mask >> c & 1 == 0 {
                    free.push((r, c));
                }
            }
        }
        SchubertCell { k, n, pivots, free }
    }

    pub fn pivots(&self) -> MultiIndex {
        MultiIndex::from_mask(self.pivots.iter().fold(0, |m, &c| m | 1 << c), self.n)
    }

    /// Number of free entries; the cell has `q^free_len` points.
    pub fn free_len(&self) -> usize {
        self.free.len()
    }

    /// Echelon matrix with identity on the pivot columns and zero free entries.
    fn skeleton(&self) -> Vec<u32> {
        let mut data = vec![0u32; self.k * self.n];
        for (r, &c) in self.pivots.iter().enumerate() {
            data[r * self.n + c] = 1;
        }
        data
    }
}

/// All Schubert cells of `G(k, n)` in lexicographic order of pivot sets.
pub fn schubert_cells(k: usize, n: usize) -> Vec<SchubertCell> {
    subsets(k, n).into_iter().map(|m| SchubertCell::new(m, n)).collect()
}

/// A contiguous slice of one cell: the first `prefix.len()` free entries fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannChunk {
    pub cell: usize,
    pub prefix: Vec<u32>,
}

/// Cuts every cell into contiguous chunks, aiming for about `target` chunks in
/// total. Deterministic in `(k, n, q, target)`.
pub fn grassmannian_chunks(cells: &[SchubertCell], q: u32, target: usize) -> Vec<GrassmannChunk> {
    let per_cell = target.div_ceil(cells.len().max(1)).max(1) as u64;
    let mut out = Vec::new();
    for (ci, cell) in cells.iter().enumerate() {
        let mut t = 0;
        let mut pieces = 1u64;
        while t < cell.free.len() && pieces < per_cell {
            t += 1;
            pieces *= q as u64;
        }
        let mut prefix = vec![0u32; t];
        loop {
            out.push(GrassmannChunk { cell: ci, prefix: prefix.clone() });
            if !odometer_step(&mut prefix, q) {
                break;
            }
        }
    }
    out
}

/// Advances the odometer (last digit fastest). Returns `false` after wrapping.
#[inline]
pub(crate) fn odometer_step(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Calls `f` with the row-major `k x n` echelon matrix of every point in the
/// chunk, in enumeration order.
pub fn for_each_in_chunk(cell: &SchubertCell, prefix: &[u32], q: u32, mut f: impl FnMut(&[u32])) {
    let mut data = cell.skeleton();
    let n = cell.n;
    for (&(r, c), &v) in cell.free.iter().zip(prefix) {
        data[r * n + c] = v;
    }
    let rest = &cell.free[prefix.len()..];
    let mut digits = vec![0u32; rest.len()];
    loop {
        for (&(r, c), &v) in rest.iter().zip(&digits) {
            data[r * n + c] = v;
        }
        f(&data);
        if !odometer_step(&mut digits, q) {
            break;
        }
    }
}

/// Calls `f` with every normalized nonzero vector of `GF(q)^dim` (first
/// nonzero coordinate equal to 1), one per projective point.
pub fn for_each_projective_point(q: u32, dim: usize, mut f: impl FnMut(&[u32])) {
    let mut v = vec![0u32; dim];
    for lead in 0..dim {
        v.iter_mut().for_each(|x| *x = 0);
        v[lead] = 1;
        loop {
            f(&v);
            if !odometer_step(&mut v[lead + 1..], q) {
                break;
            }
        }
    }
}

/// Checks `1 <= k <= n <= 16` and the point count against the budget.
pub(crate) fn check_grassmannian(k: usize, n: usize, q: u32, exec: &Exec) -> Result<()> {
    if k == 0 || k > n || n > MAX_N {
        return Err(Error::OutOfRange(format!("G({k},{n}) needs 1 <= k <= n <= {MAX_N}")));
    }
    exec.check("Grassmannian enumeration", &gaussian_binomial(k as u64, n as u64, q as u64))
}

/// Streams every point of `G(k, n)` exactly once, in the deterministic order
/// described in the module docs.
pub fn enumerate_grassmannian(field: &Arc<Field>, k: usize, n: usize, exec: &Exec) -> Result<GrassmannIter> {
    check_grassmannian(k, n, field.order(), exec)?;
    let cells = schubert_cells(k, n);
    let state = cells.first().map(|c| (c.skeleton(), vec![0u32; c.free.len()]));
    Ok(GrassmannIter { field: field.clone(), n, cells, cell: 0, state })
}

pub struct GrassmannIter {
    field: Arc<Field>,
    n: usize,
    cells: Vec<SchubertCell>,
    cell: usize,
    state: Option<(Vec<u32>, Vec<u32>)>,
}

impl Iterator for GrassmannIter {
    type Item = GrassmannPoint;

    fn next(&mut self) -> Option<GrassmannPoint> {
        let (data, digits) = self.state.as_mut()?;
        let cell = &self.cells[self.cell];
        for (&(r, c), &v) in cell.free.iter().zip(digits.iter()) {
            data[r * self.n + c] = v;
        }
        let point = GrassmannPoint {
            matrix: Matrix::from_vec(self.field.clone(), cell.k, self.n, data.clone()).expect("valid entries"),
            pivots: cell.pivots(),
        };
        if !odometer_step(digits, self.field.order()) {
            self.cell += 1;
            self.state = self.cells.get(self.cell).map(|c| (c.skeleton(), vec![0u32; c.free.len()]));
        }
        Some(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::collections::HashSet;

    fn gf(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    #[test]
    fn counts_match_examples() {
        let exec = Exec::default();
        assert_eq!(enumerate_grassmannian(&gf(2), 2, 4, &exec).unwrap().count(), 35);
        assert_eq!(enumerate_grassmannian(&gf(3), 2, 4, &exec).unwrap().count(), 130);
        assert_eq!(enumerate_grassmannian(&gf(2), 1, 2, &exec).unwrap().count(), 3);
    }

    #[test]
    fn counts_match_gaussian_binomial_and_no_duplicates() {
        let exec = Exec::default();
        for q in [2u64, 3, 4] {
            let f = gf(q);
            for n in 1..=6usize {
                for k in 1..=n {
                    let expected = gaussian_binomial(k as u64, n as u64, q).to_usize().unwrap();
                    if expected > 40_000 {
                        continue;
                    }
                    let pts: Vec<_> = enumerate_grassmannian(&f, k, n, &exec).unwrap().collect();
                    assert_eq!(pts.len(), expected, "G({k},{n}) over GF({q})");
                    let distinct: HashSet<Vec<u32>> = pts.iter().map(|p| p.matrix().data().to_vec()).collect();
                    assert_eq!(distinct.len(), expected);
                    assert!(pts.iter().all(|p| p.matrix().is_rref()));
                }
            }
        }
    }

    #[test]
    fn row_spaces_pairwise_distinct() {
        let f = gf(2);
        let pts: Vec<_> = enumerate_grassmannian(&f, 2, 4, &Exec::default()).unwrap().collect();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                assert!(!a.matrix().same_row_space(b.matrix()));
            }
        }
    }

    #[test]
    fn chunks_reproduce_iteration_order() {
        let f = gf(3);
        let cells = schubert_cells(2, 5);
        let all: Vec<Vec<u32>> = enumerate_grassmannian(&f, 2, 5, &Exec::default())
            .unwrap()
            .map(|p| p.matrix().data().to_vec())
            .collect();
        for target in [1, 7, 64, 1000] {
            let mut chunked = Vec::new();
            for ch in grassmannian_chunks(&cells, 3, target) {
                for_each_in_chunk(&cells[ch.cell], &ch.prefix, 3, |d| chunked.push(d.to_vec()));
            }
            assert_eq!(chunked, all);
        }
    }

    #[test]
    fn budget_and_range() {
        let f = gf(2);
        let tight = Exec::default().with_budget(10);
        assert!(matches!(enumerate_grassmannian(&f, 2, 4, &tight), Err(Error::BudgetExceeded { .. })));
        assert!(enumerate_grassmannian(&f, 0, 4, &Exec::default()).is_err());
        assert!(enumerate_grassmannian(&f, 5, 4, &Exec::default()).is_err());
    }
}
