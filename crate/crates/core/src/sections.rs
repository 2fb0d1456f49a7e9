//! Linear sections of the Grassmannian and the inclusion–exclusion count of
//! MDS codes.
//!
//! A section is a codimension-`r` subspace `L` of `P(∧^k V)`, stored through a
//! basis of its annihilator `Ann(L) ⊂ ∧^k V*`. Its norm `||L||` is the number
//! of points of `G(k, n)` outside `L`.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::combinatorics::{binomial_u64, gaussian_binomial};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{satisfies_plucker, DualForm, MultiVector, PluckerTable};
use crate::fields::Field;
use crate::index::{small_binomial, MultiIndex};
use crate::linalg::{for_each_projective_point, Matrix};

/// Largest `N` for which [`inclusion_exclusion`] walks all `2^N` subsets.
pub const MAX_INCLUSION_EXCLUSION_COORDS: usize = 12;

#[derive(Clone, Debug)]
pub struct LinearSection {
    field: Arc<Field>,
    k: usize,
    n: usize,
    ann: Vec<DualForm>,
}

impl LinearSection {
    /// The section cut out by an independent family of `k`-forms.
    pub fn new(ann: Vec<DualForm>) -> Result<Self> {
        let first = ann.first().ok_or(Error::ZeroInput)?;
        let (field, k, n) = (first.field().clone(), first.degree(), first.dim());
        if ann.iter().any(|w| w.degree() != k || w.dim() != n || **w.field() != *field) {
            return Err(Error::ShapeMismatch("annihilator forms of different shapes".into()));
        }
        let rows: Vec<&[u32]> = ann.iter().map(|w| w.coeffs()).collect();
        if Matrix::from_rows(field.clone(), &rows)?.rank() != ann.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(LinearSection { field, k, n, ann })
    }

    /// `Ann(L) = span(e^{I_1}, ..., e^{I_r})`.
    pub fn coordinate(field: &Arc<Field>, k: usize, n: usize, indices: &[MultiIndex]) -> Result<Self> {
        if indices.iter().any(|i| i.len() != k || i.n() != n) {
            return Err(Error::BadIndex(format!("coordinate section of G({k},{n}) needs {k}-indices out of {n}")));
        }
        Self::new(indices.iter().map(|&i| DualForm::basis(field, i)).collect())
    }

    /// A uniformly random independent `r`-tuple of forms.
    pub fn random<R: Rng + ?Sized>(field: &Arc<Field>, k: usize, n: usize, r: usize, rng: &mut R) -> Result<Self> {
        let big_n = small_binomial(n, k);
        if r == 0 || r > big_n {
            return Err(Error::OutOfRange(format!("codimension {r} in a space of {big_n} coordinates")));
        }
        loop {
            let ann = (0..r).map(|_| DualForm::random(field, k, n, rng)).collect::<Result<Vec<_>>>()?;
            match Self::new(ann) {
                Err(Error::LinearlyDependent) => continue,
                other => return other,
            }
        }
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

    pub fn codim(&self) -> usize {
        self.ann.len()
    }

    /// Projective dimension `N - 1 - r` of `L`.
    pub fn dim(&self) -> usize {
        small_binomial(self.n, self.k) - 1 - self.codim()
    }

    pub fn ann_basis(&self) -> &[DualForm] {
        &self.ann
    }

    /// Calls `f` once per point of `P(Ann(L))`.
    pub fn for_each_ann_point(&self, mut f: impl FnMut(&DualForm)) {
        let q = self.field.order();
        for_each_projective_point(q, self.ann.len(), |c| {
            let mut w = DualForm::zero(&self.field, self.k, self.n).expect("shape");
            for (&ci, basis) in c.iter().zip(&self.ann) {
                if ci != 0 {
                    w = w.add_scaled(basis, ci).expect("same shape");
                }
            }
            f(&w);
        });
    }

    /// `true` when every point of `P(Ann(L))` is decomposable.
    pub fn ann_in_grassmannian(&self, exec: &Exec) -> Result<bool> {
        exec.check("annihilator points", &BigUint::from(self.field.order()).pow(self.codim() as u32))?;
        let mut all = true;
        self.for_each_ann_point(|w| all &= satisfies_plucker(w).expect("nonzero form"));
        Ok(all)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionMethod {
    /// Count Grassmannian points with a nonzero pairing against `Ann(L)`.
    PointScan,
    /// Average the weights of the forms in `Ann(L)`.
    AnnihilatorSum,
}

/// `||L||` using a prebuilt table for `G(k, n)`.
pub fn section_norm_with(table: &PluckerTable, l: &LinearSection, method: SectionMethod, exec: &Exec) -> Result<u64> {
    if (table.k(), table.n()) != (l.k, l.n) || **table.field() != *l.field {
        return Err(Error::ShapeMismatch(format!("section of G({},{}) against table of G({},{})", l.k, l.n, table.k(), table.n())));
    }
    match method {
        SectionMethod::PointScan => {
            let forms: Vec<&[u32]> = l.ann.iter().map(|w| w.coeffs()).collect();
            Ok(table.union_weight(&forms))
        }
        SectionMethod::AnnihilatorSum => {
            let q = l.field.order() as u64;
            exec.check("annihilator points", &BigUint::from(q).pow(l.codim() as u32))?;
            let mut total = 0u64;
            l.for_each_ann_point(|w| total += table.weight(w).expect("shape checked"));
            let denom = q.pow(l.codim() as u32 - 1);
            if !total.is_multiple_of(denom) {
                return Err(Error::ExactnessViolation(format!("sum of weights {total} over Ann(L) is not divisible by {denom}")));
            }
            Ok(total / denom)
        }
    }
}

/// `||L|| = |G(k, n) \ L|`.
pub fn section_norm(l: &LinearSection, method: SectionMethod, exec: &Exec) -> Result<u64> {
    let table = PluckerTable::build(&l.field, l.k, l.n, exec)?;
    section_norm_with(&table, l, method, exec)
}

/// `|L ∩ G(k, n)|` for `L = P(span(vectors))`, counted by testing each point
/// of `L` against the Plücker relations.
pub fn section_cardinality(vectors: &[MultiVector], exec: &Exec) -> Result<u64> {
    let first = vectors.first().ok_or(Error::ZeroInput)?;
    let (field, k, n) = (first.field().clone(), first.degree(), first.dim());
    if vectors.iter().any(|v| v.degree() != k || v.dim() != n || **v.field() != *field) {
        return Err(Error::ShapeMismatch("spanning vectors of different shapes".into()));
    }
    let rows: Vec<&[u32]> = vectors.iter().map(|v| v.coeffs()).collect();
    if Matrix::from_rows(field.clone(), &rows)?.rank() != vectors.len() {
        return Err(Error::LinearlyDependent);
    }
    exec.check("section points", &BigUint::from(field.order()).pow(vectors.len() as u32))?;
    let mut count = 0;
    for_each_projective_point(field.order(), vectors.len(), |c| {
        let mut v = MultiVector::zero(&field, k, n).expect("shape");
        for (&ci, b) in c.iter().zip(vectors) {
            if ci != 0 {
                v = v.add_scaled(b, ci).expect("same shape");
            }
        }
        count += satisfies_plucker(&v).expect("nonzero vector") as u64;
    });
    Ok(count)
}

/// Whether `Ann(L)` of a coordinate section lies in `G(k, n)`, decided from
/// the indices alone: a shared `(k-1)`-subset (inside some `π_α`) or a
/// `(k+1)`-set containing them all (inside some `π^γ`).
pub fn coordinate_ann_in_grassmannian(indices: &[MultiIndex]) -> bool {
    let Some(first) = indices.first() else { return true };
    let k = first.len() as u32;
    let meet = indices.iter().fold(u32::MAX, |m, i| m & i.mask());
    let join = indices.iter().fold(0, |m, i| m | i.mask());
    indices.len() == 1 || meet.count_ones() + 1 >= k || join.count_ones() <= k + 1
}

/// `c_1(r) = C(n, k-1) C(n-k+1, r)` and `c_2(r) = C(n, k+1) C(k+1, r)`,
/// indexed by `r` in `0..=N`; entries with `r < 2` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredCounts {
    pub c1: Vec<u64>,
    pub c2: Vec<u64>,
}

pub fn structured_counts(k: usize, n: usize) -> Result<StructuredCounts> {
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("structured counts need 1 <= k < n, got k={k}, n={n}")));
    }
    let big_n = binomial_u64(n as u64, k as u64) as usize;
    let (k, n) = (k as u64, n as u64);
    let table = |f: &dyn Fn(u64) -> u64| (0..=big_n as u64).map(|r| if r < 2 { 0 } else { f(r) }).collect();
    Ok(StructuredCounts {
        c1: table(&|r| binomial_u64(n, k - 1) * binomial_u64(n - k + 1, r)),
        c2: table(&|r| binomial_u64(n, k + 1) * binomial_u64(k + 1, r)),
    })
}

#[derive(Clone, Debug)]
pub struct InclusionExclusionReport {
    pub k: usize,
    pub n: usize,
    pub q: u32,
    /// `E_1, ..., E_N` (index 0 is `E_1`).
    pub e_terms: Vec<BigUint>,
    /// `E_1 - E_2 + ... + (-1)^{N-1} E_N`.
    pub gamma_reconstructed: BigInt,
    pub structured: Option<StructuredCounts>,
}

/// Per-point support bitmasks of the Plücker table (`N <= 64`).
fn support_masks(table: &PluckerTable) -> Vec<u64> {
    (0..table.len()).map(|j| table.support_mask(j)).collect()
}

/// `g[T]` = number of points whose support lies inside `T`.
fn inside_counts(table: &PluckerTable) -> Vec<u64> {
    let big_n = table.coords();
    let mut g = vec![0u64; 1 << big_n];
    for s in support_masks(table) {
        g[s as usize] += 1;
    }
    for bit in 0..big_n {
        for t in 0..g.len() {
            if t >> bit & 1 == 1 {
                g[t] += g[t ^ (1 << bit)];
            }
        }
    }
    g
}

/// `γ(k, n)` as the alternating sum of `E_r = Σ |C_{I_1} ∪ ... ∪ C_{I_r}|`.
pub fn inclusion_exclusion(k: usize, n: usize, field: &Arc<Field>, exec: &Exec) -> Result<InclusionExclusionReport> {
    let big_n = if k >= 1 && k <= n && n <= crate::index::MAX_N { small_binomial(n, k) } else { 0 };
    if big_n > MAX_INCLUSION_EXCLUSION_COORDS {
        return Err(Error::OutOfRange(format!(
            "inclusion-exclusion over 2^{big_n} subsets; limited to N <= {MAX_INCLUSION_EXCLUSION_COORDS}"
        )));
    }
    let table = PluckerTable::build(field, k, n, exec)?;
    exec.check("inclusion-exclusion subsets", &(BigUint::one() << big_n))?;
    let total = table.len() as u64;
    let g = inside_counts(&table);
    let full = (1usize << big_n) - 1;
    let mut e = vec![BigUint::zero(); big_n];
    for s in 1..=full {
        // |C_{I_1} ∪ ... ∪ C_{I_r}| = points with some p_I != 0, I ∈ S
        e[s.count_ones() as usize - 1] += total - g[full ^ s];
    }
    let gamma_reconstructed = e
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, t)| if i % 2 == 0 { acc + BigInt::from(t.clone()) } else { acc - BigInt::from(t.clone()) });
    Ok(InclusionExclusionReport {
        k,
        n,
        q: field.order(),
        e_terms: e,
        gamma_reconstructed,
        structured: structured_counts(k, n).ok(),
    })
}

/// One coordinate section `Ann(L) = span(e^I : I ∈ S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRecord {
    pub r: usize,
    /// Bit `i` set when the `i`-th multi-index (lex order) is in `S`.
    pub subset: u64,
    pub norm: u64,
    pub ann_in_g: bool,
}

/// Norms of coordinate sections with `1 <= r <= max_r`, in order of `r` and
/// then of the subset mask. With `exhaustive = false`, only the first subset
/// for each distinct `(norm, ann_in_g)` pair per `r` is kept.
pub fn coordinate_sections(
    k: usize,
    n: usize,
    field: &Arc<Field>,
    max_r: usize,
    exhaustive: bool,
    exec: &Exec,
) -> Result<Vec<SectionRecord>> {
    let table = PluckerTable::build(field, k, n, exec)?;
    let big_n = table.coords();
    if big_n > 64 {
        return Err(Error::OutOfRange(format!("coordinate sections need N <= 64, got {big_n}")));
    }
    let max_r = max_r.min(big_n);
    let subsets: BigUint = (1..=max_r as u64).map(|r| crate::combinatorics::binomial(big_n as u64, r)).sum();
    exec.check("coordinate sections", &(subsets.clone() * BigUint::from(table.len())))?;
    let supports = support_masks(&table);
    let all = MultiIndex::all(k, n);
    let mut out = Vec::new();
    for r in 1..=max_r {
        let masks = subsets_of_size(big_n, r);
        let mut records: Vec<SectionRecord> = exec.install(|| {
            masks
                .par_iter()
                .map(|&s| {
                    let norm = supports.iter().filter(|&&p| p & s != 0).count() as u64;
                    let indices: Vec<MultiIndex> = (0..big_n).filter(|i| s >> i & 1 == 1).map(|i| all[i]).collect();
                    SectionRecord { r, subset: s, norm, ann_in_g: coordinate_ann_in_grassmannian(&indices) }
                })
                .collect()
        });
        if !exhaustive {
            let mut seen = std::collections::HashSet::new();
            records.retain(|rec| seen.insert((rec.norm, rec.ann_in_g)));
        }
        out.extend(records);
    }
    Ok(out)
}

/// All `r`-subsets of `0..m` as bitmasks, in increasing numeric order.
fn subsets_of_size(m: usize, r: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if r > m {
        return out;
    }
    let mut s: u64 = (1u64 << r) - 1;
    let limit = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    loop {
        out.push(s);
        if r == 0 {
            return out;
        }
        // next integer with the same popcount
        let c = s & s.wrapping_neg();
        let Some(ripple) = s.checked_add(c) else { return out };
        s = (((ripple ^ s) >> 2) / c) | ripple;
        if s > limit || s == 0 {
            return out;
        }
    }
}

/// Right-hand side of the bound on `|L ∩ G|` for an `ℓ`-dimensional section
/// not contained in `G`, `ℓ >= 3`: `1 + q + 2q^2 + q^3 + ... + q^{ℓ-1}`.
pub fn wt_prop_bound(l: u32, q: u64) -> u64 {
    debug_assert!(l >= 3);
    1 + q + q * q + (2..l).map(|i| q.pow(i)).sum::<u64>()
}

/// Bound on `|L ∩ G| - |L_1|` for an `m`-dimensional `L ⊄ G` over an
/// `(m-1)`-dimensional `L_1 ⊂ G`: 1, `q` or `q^2`.
pub fn codim1_prop_bound(m: u32, q: u64) -> u64 {
    match m {
        0 | 1 => 1,
        2 => q,
        _ => q * q,
    }
}

/// Leading terms of `||L||` for a codimension-`r` section: exact when
/// `Ann(L) ⊂ G`, and up to `O(q^{δ-3})` otherwise.
pub fn codim_r_prediction(delta: u32, r: u32, ann_in_g: bool, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let p = |e: u32| q.pow(delta - e);
    if ann_in_g || r == 1 {
        return (0..r.min(delta + 1)).map(p).sum();
    }
    let second = if r == 2 { 1u32 } else { 2 };
    p(0) + p(1) + p(2) * second
}

/// `|G(k, n)|` as a `u64`.
pub fn grassmannian_size(k: usize, n: usize, q: u32) -> Option<u64> {
    gaussian_binomial(k as u64, n as u64, q as u64).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::count_mds_matrix_scan;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    fn ix(i: &[usize], n: usize) -> MultiIndex {
        MultiIndex::new(i, n).unwrap()
    }

    #[test]
    fn norm_examples_both_methods() {
        let f = gf(2);
        let exec = Exec::default();
        let cases = [
            (vec![ix(&[1, 2], 4)], 16),
            (vec![ix(&[1, 2], 4), ix(&[1, 3], 4)], 24),
            (vec![ix(&[1, 2], 4), ix(&[3, 4], 4)], 26),
        ];
        for (idx, expected) in cases {
            let l = LinearSection::coordinate(&f, 2, 4, &idx).unwrap();
            assert_eq!(section_norm(&l, SectionMethod::PointScan, &exec).unwrap(), expected);
            assert_eq!(section_norm(&l, SectionMethod::AnnihilatorSum, &exec).unwrap(), expected);
        }
    }

    #[test]
    fn methods_agree_on_all_coordinate_and_random_sections() {
        let exec = Exec::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (k, n) in [(2, 4), (2, 5)] {
            let f = gf(2);
            let table = PluckerTable::build(&f, k, n, &exec).unwrap();
            let all = MultiIndex::all(k, n);
            for s in 1u64..1 << all.len() {
                if s.count_ones() > 6 {
                    continue;
                }
                let idx: Vec<_> = (0..all.len()).filter(|i| s >> i & 1 == 1).map(|i| all[i]).collect();
                let l = LinearSection::coordinate(&f, k, n, &idx).unwrap();
                let a = section_norm_with(&table, &l, SectionMethod::PointScan, &exec).unwrap();
                let b = section_norm_with(&table, &l, SectionMethod::AnnihilatorSum, &exec).unwrap();
                assert_eq!(a, b);
            }
            for _ in 0..50 {
                let r = rng.gen_range(1..=5);
                let l = LinearSection::random(&f, k, n, r, &mut rng).unwrap();
                let a = section_norm_with(&table, &l, SectionMethod::PointScan, &exec).unwrap();
                let b = section_norm_with(&table, &l, SectionMethod::AnnihilatorSum, &exec).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn cardinality_examples() {
        let f = gf(3);
        let exec = Exec::default();
        let e = |i: &[usize]| MultiVector::basis(&f, ix(i, 4));
        // e_12 and e_13 meet in a line
        assert_eq!(section_cardinality(&[e(&[1, 2]), e(&[1, 3])], &exec).unwrap(), 4);
        assert_eq!(section_cardinality(&[e(&[1, 2]), e(&[3, 4])], &exec).unwrap(), 2);
        let f2 = gf(2);
        let e2 = |i: &[usize]| MultiVector::basis(&f2, ix(i, 4));
        assert_eq!(section_cardinality(&[e2(&[1, 2]), e2(&[3, 4])], &exec).unwrap(), 2);
        assert!(matches!(section_cardinality(&[e(&[1, 2]), e(&[1, 2])], &exec), Err(Error::LinearlyDependent)));
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let exec = Exec::default();
        let rep = inclusion_exclusion(2, 4, &gf(2), &exec).unwrap();
        assert_eq!(rep.e_terms[0], BigUint::from(96u32));
        assert_eq!(rep.e_terms[1], BigUint::from(366u32));
        assert_eq!(rep.gamma_reconstructed, BigInt::zero());
        assert_eq!(inclusion_exclusion(2, 4, &gf(3), &exec).unwrap().gamma_reconstructed, BigInt::from(8));
        for q in [2u64, 3, 5] {
            let rep = inclusion_exclusion(1, 2, &gf(q), &exec).unwrap();
            assert_eq!(rep.e_terms[0], BigUint::from(2 * q));
            assert_eq!(rep.gamma_reconstructed, BigInt::from(q - 1));
        }
        assert!(matches!(inclusion_exclusion(3, 6, &gf(2), &exec), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn inclusion_exclusion_matches_census() {
        let exec = Exec::default();
        for (k, n, q) in [(2, 4, 2), (2, 4, 3), (2, 4, 4), (2, 5, 2), (2, 5, 3), (1, 4, 3), (3, 5, 2)] {
            let f = gf(q);
            let rep = inclusion_exclusion(k, n, &f, &exec).unwrap();
            let census = count_mds_matrix_scan(k, n, &f, &exec).unwrap();
            assert_eq!(rep.gamma_reconstructed, BigInt::from(census.gamma), "({k},{n},{q})");
            let delta = (k * (n - k)) as u32;
            assert_eq!(rep.e_terms[0], BigUint::from(rep.e_terms.len() as u64 * q.pow(delta)));
        }
    }

    #[test]
    fn structured_count_examples() {
        let s = structured_counts(2, 5).unwrap();
        assert_eq!((s.c1[3], s.c2[3]), (20, 10));
        let s = structured_counts(2, 4).unwrap();
        assert_eq!(s.c1[2], 12);
        assert_eq!(s.c1[4], 0);
        // pairs sharing k-1 indices, counted directly
        let all = MultiIndex::all(2, 4);
        let sharing = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| (all[i].mask() & all[j].mask()).count_ones() == 1).count();
        assert_eq!(sharing, 12);
    }

    #[test]
    fn structured_counts_match_subset_classification() {
        for (k, n) in [(2, 5), (3, 6)] {
            let s = structured_counts(k, n).unwrap();
            let all = MultiIndex::all(k, n);
            let big_n = all.len();
            let mut alpha = vec![0u64; big_n + 1];
            let mut gamma = vec![0u64; big_n + 1];
            for set in 1u64..1 << big_n {
                let r = set.count_ones() as usize;
                if r < 3 {
                    continue;
                }
                let idx: Vec<_> = (0..big_n).filter(|i| set >> i & 1 == 1).map(|i| all[i]).collect();
                let meet = idx.iter().fold(u32::MAX, |m, i| m & i.mask()).count_ones() as usize;
                let join = idx.iter().fold(0, |m, i| m | i.mask()).count_ones() as usize;
                alpha[r] += (meet == k - 1) as u64;
                gamma[r] += (join == k + 1) as u64;
            }
            for r in 3..=big_n {
                assert_eq!((alpha[r], gamma[r]), (s.c1[r], s.c2[r]), "({k},{n}) r={r}");
            }
        }
    }

    #[test]
    fn combinatorial_ann_criterion_matches_plucker_test() {
        let exec = Exec::default();
        let f = gf(2);
        for (k, n) in [(2, 4), (2, 5)] {
            let all = MultiIndex::all(k, n);
            for set in 1u64..1 << all.len() {
                if set.count_ones() > 5 {
                    continue;
                }
                let idx: Vec<_> = (0..all.len()).filter(|i| set >> i & 1 == 1).map(|i| all[i]).collect();
                let l = LinearSection::coordinate(&f, k, n, &idx).unwrap();
                assert_eq!(coordinate_ann_in_grassmannian(&idx), l.ann_in_grassmannian(&exec).unwrap());
            }
        }
    }

    #[test]
    fn nogin_part_two_characterization() {
        let exec = Exec::default();
        let f = gf(2);
        let delta = 4;
        let records = coordinate_sections(2, 4, &f, 6, true, &exec).unwrap();
        assert_eq!(records.len(), 63);
        for rec in records.into_iter().filter(|rec| rec.r as u32 <= delta) {
            let minimal: u64 = (0..rec.r as u32).map(|i| 2u64.pow(delta - i)).sum();
            assert_eq!(rec.norm == minimal, rec.ann_in_g, "{rec:?}");
        }
    }

    #[test]
    fn coordinate_sections_witness_mode() {
        let exec = Exec::default();
        let f = gf(2);
        let some = coordinate_sections(2, 4, &f, 2, false, &exec).unwrap();
        // r = 1: one norm; r = 2: norms 24 (in G) and 26
        assert_eq!(some.iter().map(|r| (r.r, r.norm)).collect::<Vec<_>>(), vec![(1, 16), (2, 24), (2, 26)]);
        assert_eq!(subsets_of_size(5, 2).len(), 10);
        assert_eq!(subsets_of_size(64, 1).len(), 64);
    }

    #[test]
    fn bounds() {
        assert_eq!(wt_prop_bound(3, 2), 1 + 2 + 8);
        assert_eq!(wt_prop_bound(5, 3), 1 + 3 + 18 + 27 + 81);
        assert_eq!(codim1_prop_bound(2, 5), 5);
        assert_eq!(codim_r_prediction(4, 2, true, 2), BigUint::from(24u32));
        assert_eq!(codim_r_prediction(4, 2, false, 2), BigUint::from(28u32));
        assert_eq!(codim_r_prediction(4, 3, false, 2), BigUint::from(32u32));
    }
}
