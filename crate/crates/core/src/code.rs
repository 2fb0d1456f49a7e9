//! The Grassmann code `C(k, n)`: evaluate every `k`-form at every point of
//! `G(k, n)`.
//!
//! Codewords are kept as forms. The generator columns are the rows of a
//! [`PluckerTable`], so weights are computed by streaming over the table.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinatorics::gaussian_binomial;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{dot, DualForm, PluckerTable};
use crate::fields::Field;
use crate::index::{MultiIndex, MAX_N};
use crate::linalg::{enumerate_grassmannian, odometer_step, Matrix};

pub struct GrassmannCode {
    table: PluckerTable,
}

impl GrassmannCode {
    /// Builds the code and checks that the generator has full row rank.
    pub fn build(field: &Arc<Field>, k: usize, n: usize, exec: &Exec) -> Result<Self> {
        let table = PluckerTable::build(field, k, n, exec)?;
        let code = GrassmannCode { table };
        let rank = code.generator().rank();
        if rank != code.dimension() {
            return Err(Error::RankDeficient { rank, expected: code.dimension() });
        }
        Ok(code)
    }

    pub fn field(&self) -> &Arc<Field> {
        self.table.field()
    }

    pub fn k(&self) -> usize {
        self.table.k()
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    /// `ñ = |G(k, n)|`.
    pub fn length(&self) -> usize {
        self.table.len()
    }

    /// `k̃ = C(n, k)`.
    pub fn dimension(&self) -> usize {
        self.table.coords()
    }

    pub fn table(&self) -> &PluckerTable {
        &self.table
    }

    /// The `k̃ x ñ` generator matrix: entry `(i, j)` is the `i`-th Plücker
    /// coordinate of the `j`-th point.
    pub fn generator(&self) -> Matrix {
        let (rows, cols) = (self.dimension(), self.length());
        let mut data = vec![0u32; rows * cols];
        for (j, col) in self.table.rows().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                data[i * cols + j] = v;
            }
        }
        Matrix::from_vec(self.field().clone(), rows, cols, data).expect("table entries")
    }

    fn check_form(&self, w: &DualForm) -> Result<()> {
        if w.degree() != self.k() || w.dim() != self.n() || **w.field() != **self.field() {
            return Err(Error::ShapeMismatch(format!(
                "degree-{} form on dimension {} for the code C({},{})",
                w.degree(),
                w.dim(),
                self.k(),
                self.n()
            )));
        }
        Ok(())
    }

    /// Hamming weight of the codeword of `w`, which is `||w||`.
    pub fn codeword_weight(&self, w: &DualForm) -> Result<u64> {
        self.check_form(w)?;
        self.table.weight(w)
    }

    /// Support size of the subcode spanned by `forms`.
    pub fn subcode_weight(&self, forms: &[DualForm]) -> Result<u64> {
        for w in forms {
            self.check_form(w)?;
        }
        let rows: Vec<&[u32]> = forms.iter().map(|w| w.coeffs()).collect();
        Ok(self.table.union_weight(&rows))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMode {
    /// Every nonzero codeword.
    Exhaustive,
    /// `count` nonzero codewords drawn uniformly with a ChaCha8 stream seeded
    /// by `seed`.
    Sample { count: usize, seed: u64 },
}

/// Weight → number of codewords with that weight.
pub type Spectrum = BTreeMap<u64, u64>;

fn merge(mut a: Spectrum, b: Spectrum) -> Spectrum {
    for (w, c) in b {
        *a.entry(w).or_default() += c;
    }
    a
}

pub fn weight_spectrum(code: &GrassmannCode, mode: SpectrumMode, exec: &Exec) -> Result<Spectrum> {
    let f = &**code.field();
    let q = f.order();
    let dim = code.dimension();
    let table = code.table();
    let weight = |coeffs: &[u32]| table.rows().filter(|row| dot(f, coeffs, row) != 0).count() as u64;
    match mode {
        SpectrumMode::Exhaustive => {
            let words = BigUint::from(q).pow(dim as u32);
            exec.check("exhaustive spectrum", &(words * BigUint::from(code.length())))?;
            // split on the leading coordinates, odometer over the rest
            let mut head = 0;
            let mut pieces = 1usize;
            while head < dim && pieces < exec.target_chunks() {
                head += 1;
                pieces *= q as usize;
            }
            let mut prefixes = Vec::with_capacity(pieces);
            let mut prefix = vec![0u32; head];
            loop {
                prefixes.push(prefix.clone());
                if !odometer_step(&mut prefix, q) {
                    break;
                }
            }
            let spectrum = exec.install(|| {
                prefixes
                    .par_iter()
                    .map(|prefix| {
                        let mut local = Spectrum::new();
                        let mut coeffs = prefix.clone();
                        coeffs.resize(dim, 0);
                        loop {
                            if coeffs.iter().any(|&c| c != 0) {
                                *local.entry(weight(&coeffs)).or_default() += 1;
                            }
                            if !odometer_step(&mut coeffs[head..], q) {
                                break;
                            }
                        }
                        local
                    })
                    .reduce(Spectrum::new, merge)
            });
            Ok(spectrum)
        }
        SpectrumMode::Sample { count, seed } => {
            exec.check("sampled spectrum", &(BigUint::from(count) * BigUint::from(code.length())))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut forms = Vec::with_capacity(count);
            while forms.len() < count {
                let w = DualForm::random(code.field(), code.k(), code.n(), &mut rng)?;
                if !w.is_zero() {
                    forms.push(w);
                }
            }
            Ok(exec.install(|| {
                forms
                    .par_iter()
                    .map(|w| Spectrum::from([(weight(w.coeffs()), 1)]))
                    .reduce(Spectrum::new, merge)
            }))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HigherWeightMode {
    /// Every `r`-dimensional subcode.
    Exhaustive,
    /// Subcodes spanned by coordinate forms `e^I` lying in one maximal linear
    /// subspace of the dual Grassmannian: all `I ⊃ J` for a fixed
    /// `(k-1)`-set `J`, or all `I ⊂ J̃` for a fixed `(k+1)`-set `J̃`.
    Structured,
}

/// Smallest support of an `r`-dimensional subcode over the searched family.
pub fn higher_weight_search(code: &GrassmannCode, r: usize, mode: HigherWeightMode, exec: &Exec) -> Result<u64> {
    let (k, n, dim) = (code.k(), code.n(), code.dimension());
    if r == 0 || r > dim {
        return Err(Error::OutOfRange(format!("subcode dimension {r} of a code of dimension {dim}")));
    }
    let table = code.table();
    match mode {
        HigherWeightMode::Exhaustive => {
            if dim > MAX_N {
                return Err(Error::OutOfRange(format!("exhaustive subcode search needs dimension <= {MAX_N}")));
            }
            let q = code.field().order();
            let subspaces = gaussian_binomial(r as u64, dim as u64, q as u64);
            exec.check("subcode search", &(subspaces * BigUint::from(code.length())))?;
            let all: Vec<_> = enumerate_grassmannian(code.field(), r, dim, exec)?.collect();
            let best = exec.install(|| {
                all.par_iter()
                    .map(|d| {
                        let rows: Vec<&[u32]> = (0..r).map(|i| d.matrix().row(i)).collect();
                        table.union_weight(&rows)
                    })
                    .min()
            });
            Ok(best.expect("at least one subspace"))
        }
        HigherWeightMode::Structured => {
            let all = MultiIndex::all(k, n);
            let mut families: Vec<Vec<usize>> = Vec::new();
            for size in [k.wrapping_sub(1), k + 1] {
                if size == usize::MAX || size > n {
                    continue;
                }
                for j in crate::index::subsets(size, n) {
                    let members: Vec<usize> = (0..all.len())
                        .filter(|&i| {
                            let m = all[i].mask();
                            if size < k { m & j == j } else { m & j == m }
                        })
                        .collect();
                    if members.len() >= r {
                        families.push(members);
                    }
                }
            }
            if families.is_empty() {
                return Err(Error::OutOfRange(format!("no maximal linear subspace of G({k},{n}) holds {r} coordinate forms")));
            }
            let mut best = u64::MAX;
            for family in families {
                let mut pick: Vec<usize> = (0..r).collect();
                loop {
                    let forms: Vec<Vec<u32>> = pick
                        .iter()
                        .map(|&p| {
                            let mut v = vec![0u32; dim];
                            v[family[p]] = 1;
                            v
                        })
                        .collect();
                    let rows: Vec<&[u32]> = forms.iter().map(|v| v.as_slice()).collect();
                    best = best.min(table.union_weight(&rows));
                    if !next_combination(&mut pick, family.len()) {
                        break;
                    }
                }
            }
            Ok(best)
        }
    }
}

/// Advances a strictly increasing selection out of `0..m`.
fn next_combination(pick: &mut [usize], m: usize) -> bool {
    let r = pick.len();
    for i in (0..r).rev() {
        if pick[i] < m - r + i {
            pick[i] += 1;
            for j in i + 1..r {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{form_weight, satisfies_plucker, WeightMethod};
    use rand::Rng;

    fn gf(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    fn ix(i: &[usize], n: usize) -> MultiIndex {
        MultiIndex::new(i, n).unwrap()
    }

    #[test]
    fn code_parameters() {
        let exec = Exec::default();
        let c = GrassmannCode::build(&gf(2), 2, 4, &exec).unwrap();
        assert_eq!((c.length(), c.dimension()), (35, 6));
        let c = GrassmannCode::build(&gf(2), 2, 5, &exec).unwrap();
        assert_eq!((c.length(), c.dimension()), (155, 10));
        let c = GrassmannCode::build(&gf(3), 1, 4, &exec).unwrap();
        assert_eq!((c.length(), c.dimension()), (40, 4));
        let g = c.generator();
        assert_eq!(g.rank(), 4);
        // column j is the j-th point
        assert_eq!(g.transpose().row(7), c.table().row(7));
    }

    #[test]
    fn codeword_weights() {
        let exec = Exec::default();
        let f = gf(2);
        let c = GrassmannCode::build(&f, 2, 4, &exec).unwrap();
        assert_eq!(c.codeword_weight(&DualForm::basis(&f, ix(&[1, 2], 4))).unwrap(), 16);
        let w = DualForm::from_terms(&f, 2, 4, &[(ix(&[1, 2], 4), 1), (ix(&[3, 4], 4), 1)]).unwrap();
        assert_eq!(c.codeword_weight(&w).unwrap(), 20);
        assert_eq!(c.codeword_weight(&DualForm::zero(&f, 2, 4).unwrap()).unwrap(), 0);
        let wrong = DualForm::basis(&f, ix(&[1, 2], 5));
        assert!(matches!(c.codeword_weight(&wrong), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn codeword_weight_matches_form_weight() {
        let exec = Exec::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (k, n, q) in [(2, 4, 2), (2, 4, 3), (2, 5, 2)] {
            let f = gf(q);
            let c = GrassmannCode::build(&f, k, n, &exec).unwrap();
            for _ in 0..500 {
                let w = DualForm::random(&f, k, n, &mut rng).unwrap();
                if w.is_zero() {
                    continue;
                }
                assert_eq!(c.codeword_weight(&w).unwrap(), form_weight(&w, WeightMethod::Direct, &exec).unwrap());
            }
        }
    }

    #[test]
    fn exhaustive_spectra() {
        let exec = Exec::default();
        let c = GrassmannCode::build(&gf(2), 2, 4, &exec).unwrap();
        let s = weight_spectrum(&c, SpectrumMode::Exhaustive, &exec).unwrap();
        assert_eq!(s, Spectrum::from([(16, 35), (20, 28)]));
        let c = GrassmannCode::build(&gf(2), 2, 5, &exec).unwrap();
        let s = weight_spectrum(&c, SpectrumMode::Exhaustive, &exec).unwrap();
        assert_eq!(s.keys().copied().collect::<Vec<_>>(), vec![64, 80]);
        assert_eq!(s.values().sum::<u64>(), 1023);
        // k = 2 support: q^δ + q^{δ-2} + ... over r <= n/2, at q = 3
        let c = GrassmannCode::build(&gf(3), 2, 4, &exec).unwrap();
        let s = weight_spectrum(&c, SpectrumMode::Exhaustive, &exec).unwrap();
        assert_eq!(s.keys().copied().collect::<Vec<_>>(), vec![81, 90]);
    }

    #[test]
    fn minimum_weight_words_are_decomposable() {
        let exec = Exec::default();
        let f = gf(2);
        for (k, n) in [(2, 4), (2, 5)] {
            let c = GrassmannCode::build(&f, k, n, &exec).unwrap();
            let delta = (k * (n - k)) as u32;
            let dim = c.dimension();
            for bits in 1u32..1 << dim {
                let w = DualForm::from_coeffs(&f, k, n, (0..dim).map(|i| bits >> i & 1).collect()).unwrap();
                let minimal = c.codeword_weight(&w).unwrap() == 2u64.pow(delta);
                assert_eq!(minimal, satisfies_plucker(&w).unwrap());
            }
        }
    }

    #[test]
    fn sampled_spectrum_is_reproducible() {
        let exec = Exec::default();
        let c = GrassmannCode::build(&gf(2), 3, 6, &exec).unwrap();
        let mode = SpectrumMode::Sample { count: 2000, seed: 42 };
        let a = weight_spectrum(&c, mode, &exec).unwrap();
        let b = weight_spectrum(&c, mode, &exec.with_threads(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values().sum::<u64>(), 2000);
        assert!(*a.keys().next().unwrap() >= 512);
    }

    #[test]
    fn higher_weights() {
        let exec = Exec::default();
        let c = GrassmannCode::build(&gf(2), 2, 4, &exec).unwrap();
        assert_eq!(higher_weight_search(&c, 2, HigherWeightMode::Exhaustive, &exec).unwrap(), 24);
        assert_eq!(higher_weight_search(&c, 1, HigherWeightMode::Exhaustive, &exec).unwrap(), 16);
        assert_eq!(higher_weight_search(&c, 3, HigherWeightMode::Structured, &exec).unwrap(), 28);
        assert_eq!(higher_weight_search(&c, 1, HigherWeightMode::Structured, &exec).unwrap(), 16);
        assert!(higher_weight_search(&c, 4, HigherWeightMode::Structured, &exec).is_err());
        let c = GrassmannCode::build(&gf(3), 2, 5, &exec).unwrap();
        // q^6 + q^5 + q^4 + q^3 at r = 4 = n - k + 1
        assert_eq!(higher_weight_search(&c, 4, HigherWeightMode::Structured, &exec).unwrap(), 729 + 243 + 81 + 27);
    }

    #[test]
    fn subcode_weight_identity() {
        // ||D|| (q^r - q^{r-1}) = Σ_{c ∈ D} ||c||
        let exec = Exec::default();
        let f = gf(2);
        let q = 2u64;
        let c = GrassmannCode::build(&f, 2, 4, &exec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let r = rng.gen_range(1..=4);
            let basis: Vec<DualForm> = loop {
                let b: Vec<_> = (0..r).map(|_| DualForm::random(&f, 2, 4, &mut rng).unwrap()).collect();
                let rows: Vec<&[u32]> = b.iter().map(|w| w.coeffs()).collect();
                if Matrix::from_rows(f.clone(), &rows).unwrap().rank() == r {
                    break b;
                }
            };
            let mut total = 0;
            let mut coeffs = vec![0u32; r];
            loop {
                let mut w = DualForm::zero(&f, 2, 4).unwrap();
                for (b, &x) in basis.iter().zip(&coeffs) {
                    w = w.add_scaled(b, x).unwrap();
                }
                total += c.codeword_weight(&w).unwrap();
                if !odometer_step(&mut coeffs, 2) {
                    break;
                }
            }
            let support = c.subcode_weight(&basis).unwrap();
            assert_eq!(support * (q.pow(r as u32) - q.pow(r as u32 - 1)), total);
        }
    }
}
