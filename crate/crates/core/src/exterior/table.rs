use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::combinatorics::gaussian_binomial;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::algebra::{dot, plucker_of_rows, DualForm, MultiVector};
use crate::fields::Field;
use crate::index::small_binomial;
use crate::linalg::{check_grassmannian, for_each_in_chunk, grassmannian_chunks, schubert_cells};

/// Plücker vectors of every point of `G(k, n)`, in enumeration order.
///
/// Row `j` holds the `N = C(n, k)` coordinates of the `j`-th point. The rows
/// are the columns of the Grassmann code generator matrix, so weights and
/// section norms reduce to scans over this table.
pub struct PluckerTable {
    field: Arc<Field>,
    k: usize,
    n: usize,
    coords: usize,
    data: Vec<u32>,
}

impl PluckerTable {
    pub fn build(field: &Arc<Field>, k: usize, n: usize, exec: &Exec) -> Result<Self> {
        check_grassmannian(k, n, field.order(), exec)?;
        let coords = small_binomial(n, k);
        let cells_needed = gaussian_binomial(k as u64, n as u64, field.order() as u64) * BigUint::from(coords);
        exec.check("Plücker table", &cells_needed)?;
        let cells = schubert_cells(k, n);
        let chunks = grassmannian_chunks(&cells, field.order(), exec.target_chunks());
        let q = field.order();
        let parts: Vec<Vec<u32>> = exec.install(|| {
            chunks
                .par_iter()
                .map(|ch| {
                    let mut out = Vec::new();
                    for_each_in_chunk(&cells[ch.cell], &ch.prefix, q, |rows| {
                        out.extend_from_slice(plucker_of_rows(field, rows, k, n).coeffs());
                    });
                    out
                })
                .collect()
        });
        Ok(PluckerTable { field: field.clone(), k, n, coords, data: parts.concat() })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of Plücker coordinates `N`.
    pub fn coords(&self) -> usize {
        self.coords
    }

    /// Number of Grassmannian points.
    pub fn len(&self) -> usize {
        self.data.len() / self.coords
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, j: usize) -> &[u32] {
        &self.data[j * self.coords..(j + 1) * self.coords]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.data.chunks_exact(self.coords)
    }

    pub fn point(&self, j: usize) -> MultiVector {
        MultiVector::from_coeffs(&self.field, self.k, self.n, self.row(j).to_vec()).expect("table row")
    }

    pub(crate) fn check_form(&self, w: &DualForm) -> Result<()> {
        if w.degree() != self.k || w.dim() != self.n || **w.field() != *self.field {
            return Err(Error::ShapeMismatch(format!(
                "degree-{} form on dimension {} against G({},{})",
                w.degree(),
                w.dim(),
                self.k,
                self.n
            )));
        }
        Ok(())
    }

    /// `||ω||`: number of points where `ω` does not vanish.
    pub fn weight(&self, w: &DualForm) -> Result<u64> {
        self.check_form(w)?;
        Ok(self.weight_unchecked(w.coeffs()))
    }

    pub(crate) fn weight_unchecked(&self, coeffs: &[u32]) -> u64 {
        let support: Vec<(usize, u32)> =
            coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        let f = &*self.field;
        self.rows()
            .filter(|row| support.iter().fold(0, |acc, &(i, c)| f.add(acc, f.mul(c, row[i]))) != 0)
            .count() as u64
    }

    /// Parallel version of [`weight`](Self::weight); same result for any
    /// worker count.
    pub fn weight_par(&self, w: &DualForm, exec: &Exec) -> Result<u64> {
        self.check_form(w)?;
        let f = &*self.field;
        let coeffs = w.coeffs();
        let chunk = (self.len() / exec.target_chunks()).max(256) * self.coords;
        Ok(exec.install(|| {
            self.data
                .par_chunks(chunk)
                .map(|block| block.chunks_exact(self.coords).filter(|row| dot(f, coeffs, row) != 0).count() as u64)
                .sum()
        }))
    }

    /// Number of points where at least one of the forms is nonzero.
    pub fn union_weight(&self, forms: &[&[u32]]) -> u64 {
        let f = &*self.field;
        self.rows().filter(|row| forms.iter().any(|w| dot(f, w, row) != 0)).count() as u64
    }

    /// Bitmask of the nonzero coordinates of row `j`; requires `N <= 64`.
    pub fn support_mask(&self, j: usize) -> u64 {
        debug_assert!(self.coords <= 64);
        self.row(j).iter().enumerate().fold(0, |m, (i, &c)| if c != 0 { m | 1 << i } else { m })
    }
}
