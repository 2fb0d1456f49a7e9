//! Exact counts of `[n, k]` MDS codes over GF(q).
//!
//! Every MDS code has `p_{1..k} != 0`, so it has a unique generator matrix
//! `[I_k | A]`, and that matrix is MDS exactly when every square submatrix of
//! `A` is nonsingular. The matrix scan walks `A` entry by entry in row-major
//! order. A square submatrix is complete once its bottom-right entry is
//! placed, and its determinant is `x * c + r`, where `x` is that entry and `c`
//! is the (already nonzero) minor above-left of it. Each such submatrix rules
//! out exactly one value of `x`, so whole subtrees are discarded early and the
//! last entry is counted without being enumerated.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fields::Field;
use crate::index::{masks, MAX_N};
use crate::linalg::{check_grassmannian, det_in_place, for_each_in_chunk, grassmannian_chunks, minor_of_rows, schubert_cells};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMethod {
    MatrixScan,
    GrassmannianFilter,
}

impl CensusMethod {
    pub fn name(self) -> &'static str {
        match self {
            CensusMethod::MatrixScan => "matrix-scan",
            CensusMethod::GrassmannianFilter => "grassmannian-filter",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusResult {
    pub k: usize,
    pub n: usize,
    pub q: u32,
    /// `γ(k, n)`, the number of MDS codes.
    pub gamma: BigUint,
    /// `γ / (q-1)^{n-1}`, the number of `n`-arcs in `PG(k-1, q)`.
    pub gamma_tilde: BigUint,
    pub method: CensusMethod,
    pub elapsed: Duration,
    pub workers: usize,
}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n || n > MAX_N {
        return Err(Error::OutOfRange(format!("census needs 1 <= k < n <= {MAX_N}, got k={k}, n={n}")));
    }
    Ok(())
}

fn arcs(gamma: &BigUint, n: usize, q: u32) -> Result<BigUint> {
    let unit = BigUint::from(q - 1).pow(n as u32 - 1);
    if !(gamma % &unit).is_zero() {
        return Err(Error::DivisibilityViolation(format!("gamma = {gamma} is not a multiple of (q-1)^(n-1) = {unit}")));
    }
    Ok(gamma / unit)
}

fn finish(k: usize, n: usize, field: &Field, gamma: u128, method: CensusMethod, start: Instant, exec: &Exec) -> Result<CensusResult> {
    let gamma = BigUint::from(gamma);
    let gamma_tilde = arcs(&gamma, n, field.order())?;
    Ok(CensusResult {
        k,
        n,
        q: field.order(),
        gamma,
        gamma_tilde,
        method,
        elapsed: start.elapsed(),
        workers: exec.threads,
    })
}

/// One square submatrix of `A`, finished at a given entry.
struct Corner {
    /// Rows and columns other than the corner's own.
    rows: Vec<usize>,
    cols: Vec<usize>,
}

/// The `k x m` superregular-matrix search.
struct Scan<'a> {
    f: &'a Field,
    m: usize,
    /// Per row-major position, the submatrices whose bottom-right entry it is.
    corners: Vec<Vec<Corner>>,
}

fn subsets_below(limit: usize, size: usize) -> Vec<Vec<usize>> {
    if size > limit {
        return Vec::new();
    }
    if size == 0 {
        return vec![Vec::new()];
    }
    masks(size, limit).iter().map(|&m| (0..limit).filter(|b| m >> b & 1 == 1).collect()).collect()
}

impl<'a> Scan<'a> {
    fn new(f: &'a Field, k: usize, m: usize) -> Self {
        let mut corners = Vec::with_capacity(k * m);
        for i in 0..k {
            for j in 0..m {
                let mut here = Vec::new();
                for s in 1..=i.min(j) {
                    for rows in subsets_below(i, s) {
                        for cols in subsets_below(j, s) {
                            here.push(Corner { rows: rows.clone(), cols });
                        }
                    }
                }
                corners.push(here);
            }
        }
        Scan { f, m, corners }
    }

    /// Nonzero values of the entry at `pos` that would make some completed
    /// submatrix singular. `None` if a completed submatrix is singular for
    /// every value (impossible while the prefix is superregular).
    fn forbidden(&self, a: &[u32], pos: usize, scratch: &mut Vec<u32>, out: &mut Vec<u32>) -> Option<()> {
        let f = self.f;
        let (i, j) = (pos / self.m, pos % self.m);
        out.clear();
        for c in &self.corners[pos] {
            let s = c.rows.len();
            scratch.clear();
            for &r in &c.rows {
                scratch.extend(c.cols.iter().map(|&cc| a[r * self.m + cc]));
            }
            let cof = det_in_place(f, scratch, s);
            // determinant with the corner entry set to zero
            scratch.clear();
            for &r in c.rows.iter().chain([&i]) {
                scratch.extend(c.cols.iter().chain([&j]).map(|&cc| a[r * self.m + cc]));
            }
            let last = scratch.len() - 1;
            scratch[last] = 0;
            let rest = det_in_place(f, scratch, s + 1);
            if cof == 0 {
                if rest == 0 {
                    return None;
                }
                continue;
            }
            let x = f.neg(f.mul(rest, f.inv_nonzero(cof)));
            if x != 0 {
                out.push(x);
            }
        }
        out.sort_unstable();
        out.dedup();
        Some(())
    }

    /// Number of superregular completions of `a[..pos]`.
    fn count_from(&self, a: &mut [u32], pos: usize, scratch: &mut Vec<u32>) -> u128 {
        let mut bad = Vec::new();
        if self.forbidden(a, pos, scratch, &mut bad).is_none() {
            return 0;
        }
        let q = self.f.order();
        if pos + 1 == a.len() {
            return (q - 1) as u128 - bad.len() as u128;
        }
        let mut total = 0u128;
        let mut skip = bad.iter().peekable();
        for x in 1..q {
            if skip.next_if_eq(&&x).is_some() {
                continue;
            }
            a[pos] = x;
            total += self.count_from(a, pos + 1, scratch);
        }
        a[pos] = 0;
        total
    }

    /// All superregular assignments of the first `depth` entries, in odometer
    /// order.
    fn prefixes(&self, a: &mut Vec<u32>, pos: usize, depth: usize, scratch: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == depth {
            out.push(a[..depth].to_vec());
            return;
        }
        let mut bad = Vec::new();
        if self.forbidden(a, pos, scratch, &mut bad).is_none() {
            return;
        }
        let mut skip = bad.iter().peekable();
        for x in 1..self.f.order() {
            if skip.next_if_eq(&&x).is_some() {
                continue;
            }
            a[pos] = x;
            self.prefixes(a, pos + 1, depth, scratch, out);
        }
        a[pos] = 0;
    }
}

/// `γ(k, n)` by scanning the matrices `[I_k | A]`.
///
/// The budget is checked against `q^{k(n-k)}`, the number of candidates before
/// pruning.
pub fn count_mds_matrix_scan(k: usize, n: usize, field: &Arc<Field>, exec: &Exec) -> Result<CensusResult> {
    check_shape(k, n)?;
    let q = field.order();
    exec.check("matrix scan", &BigUint::from(q).pow((k * (n - k)) as u32))?;
    let start = Instant::now();
    let m = n - k;
    let cells = k * m;
    let scan = Scan::new(field, k, m);
    let mut depth = 0;
    let mut pieces = 1u128;
    while depth + 1 < cells && pieces < exec.target_chunks() as u128 {
        depth += 1;
        pieces *= q as u128;
    }
    let mut prefixes = Vec::new();
    scan.prefixes(&mut vec![0; cells], 0, depth, &mut Vec::new(), &mut prefixes);
    let gamma: u128 = exec.install(|| {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut a = vec![0u32; cells];
                a[..depth].copy_from_slice(prefix);
                scan.count_from(&mut a, depth, &mut Vec::new())
            })
            .sum()
    });
    finish(k, n, field, gamma, CensusMethod::MatrixScan, start, exec)
}

/// `γ(k, n)` by scanning all of `G(k, n)` for points with every Plücker
/// coordinate nonzero.
pub fn count_mds_grassmannian_filter(k: usize, n: usize, field: &Arc<Field>, exec: &Exec) -> Result<CensusResult> {
    check_shape(k, n)?;
    check_grassmannian(k, n, field.order(), exec)?;
    let start = Instant::now();
    let q = field.order();
    let cells = schubert_cells(k, n);
    let chunks = grassmannian_chunks(&cells, q, exec.target_chunks());
    let coords = masks(k, n);
    let gamma: u128 = exec.install(|| {
        chunks
            .par_iter()
            .map(|ch| {
                let mut scratch = Vec::new();
                let mut count = 0u128;
                for_each_in_chunk(&cells[ch.cell], &ch.prefix, q, |rows| {
                    if coords.iter().all(|&mask| minor_of_rows(field, rows, n, mask, &mut scratch) != 0) {
                        count += 1;
                    }
                });
                count
            })
            .sum()
    });
    finish(k, n, field, gamma, CensusMethod::GrassmannianFilter, start, exec)
}

/// `γ̃(k, n)`, the number of `n`-arcs in `PG(k-1, q)`.
pub fn arc_count(k: usize, n: usize, field: &Arc<Field>, exec: &Exec) -> Result<BigUint> {
    Ok(count_mds_matrix_scan(k, n, field, exec)?.gamma_tilde)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;
    use crate::linalg::Matrix;

    fn gf(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    /// Every `[I_k | A]`, every `k x k` minor, no pruning.
    fn brute_force(k: usize, n: usize, f: &Arc<Field>) -> u64 {
        let m = n - k;
        let mut digits = vec![0u32; k * m];
        let mut count = 0;
        loop {
            let mut data = vec![0u32; k * n];
            for r in 0..k {
                data[r * n + r] = 1;
                data[r * n + k..(r + 1) * n].copy_from_slice(&digits[r * m..(r + 1) * m]);
            }
            let g = Matrix::from_vec(f.clone(), k, n, data).unwrap();
            if MultiIndex::all(k, n).iter().all(|i| g.minor(i).unwrap() != 0) {
                count += 1;
            }
            if !crate::linalg::odometer_step(&mut digits, f.order()) {
                return count;
            }
        }
    }

    #[test]
    fn census_examples() {
        let exec = Exec::default();
        let r = count_mds_matrix_scan(2, 3, &gf(2), &exec).unwrap();
        assert_eq!(r.gamma, BigUint::from(1u32));
        let r = count_mds_matrix_scan(2, 4, &gf(3), &exec).unwrap();
        assert_eq!((r.gamma.clone(), r.gamma_tilde.clone()), (BigUint::from(8u32), BigUint::from(1u32)));
        assert_eq!(count_mds_matrix_scan(3, 6, &gf(2), &exec).unwrap().gamma, BigUint::zero());
        assert_eq!(count_mds_grassmannian_filter(2, 4, &gf(3), &exec).unwrap().gamma, BigUint::from(8u32));
        assert_eq!(count_mds_grassmannian_filter(1, 3, &gf(3), &exec).unwrap().gamma, BigUint::from(4u32));
        assert_eq!(count_mds_grassmannian_filter(2, 4, &gf(2), &exec).unwrap().gamma, BigUint::zero());
        assert_eq!(arc_count(2, 4, &gf(3), &exec).unwrap(), BigUint::from(1u32));
        // PG(1,4) has 5! / |PGL_2(4)| = 120 / 60 = 2 ordered 5-arcs up to projectivity
        assert_eq!(arc_count(2, 5, &gf(4), &exec).unwrap(), BigUint::from(2u32));
        assert_eq!(count_mds_matrix_scan(2, 5, &gf(4), &exec).unwrap().gamma, BigUint::from(162u32));
    }

    #[test]
    fn matches_unpruned_brute_force() {
        let exec = Exec::default();
        for (k, n, q) in [(2, 4, 3), (2, 5, 4), (3, 5, 4), (3, 6, 3), (2, 6, 5), (4, 6, 3), (3, 6, 4)] {
            let f = gf(q);
            let expected = brute_force(k, n, &f);
            assert_eq!(count_mds_matrix_scan(k, n, &f, &exec).unwrap().gamma, BigUint::from(expected), "({k},{n},{q})");
        }
    }

    #[test]
    fn closed_forms_and_duality() {
        let exec = Exec::default();
        for q in [2u64, 3, 4, 5] {
            let f = gf(q);
            for n in 2..=6usize {
                let unit = BigUint::from(q - 1).pow(n as u32 - 1);
                assert_eq!(count_mds_matrix_scan(1, n, &f, &exec).unwrap().gamma, unit);
                if n > 2 {
                    // ordered n-tuples of distinct points of PG(1,q) modulo PGL_2(q)
                    let arcs: u64 = (2..n as u64 - 1).map(|j| q.saturating_sub(j)).product();
                    let two = count_mds_matrix_scan(2, n, &f, &exec).unwrap().gamma;
                    assert_eq!(two, BigUint::from(arcs) * &unit);
                }
            }
            for (k, n) in [(1, 3), (2, 4), (2, 5)] {
                let a = count_mds_matrix_scan(k, n, &f, &exec).unwrap().gamma;
                let b = count_mds_matrix_scan(n - k, n, &f, &exec).unwrap().gamma;
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let f = gf(4);
        let counts: Vec<_> = [1, 3, 8]
            .iter()
            .map(|&t| {
                let exec = Exec::default().with_threads(t);
                let a = count_mds_matrix_scan(3, 6, &f, &exec).unwrap();
                let b = count_mds_grassmannian_filter(3, 6, &f, &exec).unwrap();
                assert_eq!(a.workers, t);
                (a.gamma, b.gamma)
            })
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(counts[0].0, counts[0].1);
    }

    #[test]
    fn shape_and_budget_errors() {
        let f = gf(3);
        let exec = Exec::default();
        assert!(matches!(count_mds_matrix_scan(0, 3, &f, &exec), Err(Error::OutOfRange(_))));
        assert!(matches!(count_mds_matrix_scan(3, 3, &f, &exec), Err(Error::OutOfRange(_))));
        let tight = exec.with_budget(80);
        assert!(matches!(count_mds_matrix_scan(2, 4, &f, &tight), Err(Error::BudgetExceeded { .. })));
        assert!(count_mds_matrix_scan(2, 4, &f, &exec.with_budget(81)).is_ok());
        assert!(matches!(count_mds_grassmannian_filter(2, 4, &f, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
