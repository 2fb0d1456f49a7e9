use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::index::{lex_rank, masks, small_binomial, wedge_sign_odd, MultiIndex, MAX_N};
use crate::linalg::{minor_of_rows, Matrix};

/// Which exterior power an [`ExtVec`] lives in.
pub trait Side: Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    /// The space paired against this one.
    type Opposite: Side<Opposite = Self>;
    const BASIS_SYMBOL: &'static str;
}

/// `∧^k V`, basis `e_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Primal;

/// `∧^k V*`, basis `e^I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dual;

impl Side for Primal {
    type Opposite = Dual;
    const BASIS_SYMBOL: &'static str = "e_";
}

impl Side for Dual {
    type Opposite = Primal;
    const BASIS_SYMBOL: &'static str = "e^";
}

/// A dense element of `∧^k GF(q)^n` (or its dual), coefficients in the
/// lexicographic order of `I_{k,n}`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtVec<S: Side> {
    field: Arc<Field>,
    k: usize,
    n: usize,
    coeffs: Vec<u32>,
    side: PhantomData<S>,
}

/// Element of `∧^k V`; Plücker vectors live here.
pub type MultiVector = ExtVec<Primal>;
/// Element of `∧^k V*`, a `k`-form; codewords of the Grassmann code.
pub type DualForm = ExtVec<Dual>;

impl<S: Side> fmt::Debug for ExtVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Side> fmt::Display for ExtVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}·")?;
            }
            write!(f, "{}{}", S::BASIS_SYMBOL, idx)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if k > n || n > MAX_N {
        return Err(Error::ShapeMismatch(format!("degree {k} in dimension {n} (max {MAX_N})")));
    }
    Ok(())
}

impl<S: Side> ExtVec<S> {
    pub fn zero(field: &Arc<Field>, k: usize, n: usize) -> Result<Self> {
        check_shape(k, n)?;
        Ok(Self::zero_unchecked(field, k, n))
    }

    fn zero_unchecked(field: &Arc<Field>, k: usize, n: usize) -> Self {
        ExtVec { field: field.clone(), k, n, coeffs: vec![0; small_binomial(n, k)], side: PhantomData }
    }

    /// The basis element `e_I` (or `e^I`).
    pub fn basis(field: &Arc<Field>, idx: MultiIndex) -> Self {
        let mut v = Self::zero_unchecked(field, idx.len(), idx.n());
        v.coeffs[idx.rank()] = 1;
        v
    }

    pub fn from_coeffs(field: &Arc<Field>, k: usize, n: usize, coeffs: Vec<u32>) -> Result<Self> {
        check_shape(k, n)?;
        if coeffs.len() != small_binomial(n, k) {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for degree {k} in dimension {n}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= field.order()) {
            return Err(Error::OutOfRange("coefficient outside the field".into()));
        }
        Ok(ExtVec { field: field.clone(), k, n, coeffs, side: PhantomData })
    }

    /// Sums `c · e_I` over the given terms; repeated indices accumulate.
    pub fn from_terms(field: &Arc<Field>, k: usize, n: usize, terms: &[(MultiIndex, u32)]) -> Result<Self> {
        let mut v = Self::zero(field, k, n)?;
        for &(idx, c) in terms {
            if idx.len() != k || idx.n() != n {
                return Err(Error::BadIndex(format!("{idx} in a degree-{k} space of dimension {n}")));
            }
            if c >= field.order() {
                return Err(Error::OutOfRange(format!("coefficient {c}")));
            }
            let r = idx.rank();
            v.coeffs[r] = field.add(v.coeffs[r], c);
        }
        Ok(v)
    }

    /// A degree-1 element from coordinates.
    pub fn vector(field: &Arc<Field>, coords: &[u32]) -> Result<Self> {
        let n = coords.len();
        check_shape(1, n)?;
        Self::from_coeffs(field, 1, n, coords.to_vec())
    }

    /// Uniformly random coefficients.
    pub fn random<R: Rng + ?Sized>(field: &Arc<Field>, k: usize, n: usize, rng: &mut R) -> Result<Self> {
        let mut v = Self::zero(field, k, n)?;
        let q = field.order();
        for c in v.coeffs.iter_mut() {
            *c = rng.gen_range(0..q);
        }
        Ok(v)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: MultiIndex) -> u32 {
        self.coeffs[idx.rank()]
    }

    pub fn set(&mut self, idx: MultiIndex, value: u32) {
        debug_assert!(idx.len() == self.k && idx.n() == self.n);
        self.coeffs[idx.rank()] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, u32)> + '_ {
        let n = self.n;
        masks(self.k, self.n)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(move |(&m, &c)| (MultiIndex::from_mask(m, n), c))
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.k != other.k || self.n != other.n || *self.field != *other.field {
            return Err(Error::ShapeMismatch(format!(
                "degree {} dim {} vs degree {} dim {}",
                self.k, self.n, other.k, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, 1)
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, other: &Self, c: u32) -> Result<Self> {
        self.same_space(other)?;
        let f = &self.field;
        let mut out = self.clone();
        for (a, &b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a = f.add(*a, f.mul(c, b));
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    /// Rescales so the first nonzero coefficient is 1 (projective normal form).
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|&&c| c != 0) {
            Some(&lead) => self.scale(self.field.inv_nonzero(lead)),
            None => self.clone(),
        }
    }

    /// The same coefficients read in the opposite exterior power.
    pub fn transpose_side(&self) -> ExtVec<S::Opposite> {
        ExtVec { field: self.field.clone(), k: self.k, n: self.n, coeffs: self.coeffs.clone(), side: PhantomData }
    }

    /// Exterior product within the same side.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || *self.field != *other.field {
            return Err(Error::ShapeMismatch("wedge of different spaces".into()));
        }
        let (n, k) = (self.n, self.k + other.k);
        if k > n {
            return Ok(ExtVec { field: self.field.clone(), k, n, coeffs: Vec::new(), side: PhantomData });
        }
        let f = &self.field;
        let mut out = Self::zero_unchecked(&self.field, k, n);
        let (am, bm) = (masks(self.k, n), masks(other.k, n));
        for (ai, &a) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (bi, &b) in other.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
                let (ma, mb) = (am[ai], bm[bi]);
                if ma & mb != 0 {
                    continue;
                }
                let mut term = f.mul(a, b);
                if wedge_sign_odd(ma, mb) {
                    term = f.neg(term);
                }
                let r = lex_rank(ma | mb, n);
                out.coeffs[r] = f.add(out.coeffs[r], term);
            }
        }
        Ok(out)
    }
}

/// `⟨ω, λ⟩ = Σ_I ω_I λ_I`.
pub fn pairing(omega: &DualForm, lambda: &MultiVector) -> Result<u32> {
    if omega.k != lambda.k || omega.n != lambda.n || *omega.field != *lambda.field {
        return Err(Error::ShapeMismatch(format!(
            "pairing a degree-{} form with a degree-{} multivector",
            omega.k, lambda.k
        )));
    }
    Ok(dot(&omega.field, &omega.coeffs, &lambda.coeffs))
}

#[inline]
pub(crate) fn dot(f: &Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Interior multiplication `ι_ξ w`, defined by `⟨ι_ξ ω, ζ⟩ = ⟨ω, ξ ∧ ζ⟩`.
///
/// `ξ` lives on the opposite side from `w`; the result has degree
/// `deg w - deg ξ`. On basis elements `ι_{e_A} e^I = ± e^{I∖A}` when `A ⊂ I`,
/// the sign being that of `e_A ∧ e_{I∖A} = ± e_I`, and zero otherwise. For a
/// single vector this is `ι_{e_i} e^I = (-1)^{t-1} e^{I∖i}` where `i` is the
/// `t`-th index of `I`.
pub fn interior<S: Side>(xi: &ExtVec<S::Opposite>, w: &ExtVec<S>) -> Result<ExtVec<S>> {
    if xi.n != w.n || *xi.field != *w.field {
        return Err(Error::ShapeMismatch("interior product across different spaces".into()));
    }
    if xi.k > w.k {
        return Err(Error::DegreeMismatch(format!("ι of degree {} on degree {}", xi.k, w.k)));
    }
    let (n, f) = (w.n, &w.field);
    let mut out = ExtVec::<S>::zero_unchecked(&w.field, w.k - xi.k, n);
    let (xm, wm) = (masks(xi.k, n), masks(w.k, n));
    for (xi_i, &x) in xi.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        let a = xm[xi_i];
        for (wi, &c) in w.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let i = wm[wi];
            if i & a != a {
                continue;
            }
            let rest = i & !a;
            let mut term = f.mul(x, c);
            if wedge_sign_odd(a, rest) {
                term = f.neg(term);
            }
            let r = lex_rank(rest, n);
            out.coeffs[r] = f.add(out.coeffs[r], term);
        }
    }
    Ok(out)
}

/// Plücker coordinates of the row space of a full-rank `k x n` matrix.
pub fn plucker_embed(m: &Matrix) -> Result<MultiVector> {
    let (k, n) = (m.rows(), m.cols());
    check_shape(k, n)?;
    let rank = m.rank();
    if rank < k {
        return Err(Error::RankDeficient { rank, expected: k });
    }
    Ok(plucker_of_rows(m.field(), m.data(), k, n))
}

pub(crate) fn plucker_of_rows(field: &Arc<Field>, data: &[u32], k: usize, n: usize) -> MultiVector {
    let mut out = MultiVector::zero_unchecked(field, k, n);
    let mut scratch = Vec::with_capacity(k * k);
    for (r, &mask) in masks(k, n).iter().enumerate() {
        out.coeffs[r] = minor_of_rows(field, data, n, mask, &mut scratch);
    }
    out
}

/// Whether `λ` satisfies every quadratic Plücker relation
/// `(ι_{e^K} λ) ∧ λ = 0`, `K ∈ I_{k-1,n}`; equivalently, whether it is a
/// single wedge product. Works on either side.
pub fn satisfies_plucker<S: Side>(lambda: &ExtVec<S>) -> Result<bool> {
    if lambda.is_zero() {
        return Err(Error::ZeroInput);
    }
    if lambda.k <= 1 || lambda.k + 1 >= lambda.n {
        // every element of ∧^0, ∧^1, ∧^{n-1}, ∧^n is decomposable
        return Ok(true);
    }
    for &kmask in masks(lambda.k - 1, lambda.n) {
        let xi = ExtVec::<S::Opposite>::basis(&lambda.field, MultiIndex::from_mask(kmask, lambda.n));
        let eta = interior(&xi, lambda)?;
        if !eta.wedge(lambda)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Alias for [`satisfies_plucker`].
pub fn is_decomposable<S: Side>(lambda: &ExtVec<S>) -> Result<bool> {
    satisfies_plucker(lambda)
}
