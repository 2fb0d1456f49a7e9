//! The weight `||ω||` of a `k`-form: the number of points of `G(k, n)` at
//! which it does not vanish.
//!
//! Two independent routes are provided. The direct route scans the
//! Grassmannian. The recursive route never enumerates `k`-subspaces: it sums
//! the weights of the contracted forms `ω_u = ι_u ω` on the quotients
//! `V/⟨u⟩` over all `u ∉ V_ω` and divides by `q^k - 1`, bottoming out at
//! linear forms whose nonzero points are counted one by one.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::algebra::{interior, DualForm, MultiVector};
use crate::exterior::table::PluckerTable;
use crate::fields::Field;
use crate::index::{lex_rank, masks};
use crate::linalg::for_each_projective_point;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMethod {
    Direct,
    Recursive,
}

/// Which standard basis vectors span the complement of `⟨u⟩` when a
/// contracted form is pushed to `V/⟨u⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Complement {
    /// Drop the first nonzero coordinate of `u`.
    #[default]
    FirstPivot,
    /// Drop the last nonzero coordinate of `u`.
    LastPivot,
}

/// `||ω||` by the chosen method.
pub fn form_weight(w: &DualForm, method: WeightMethod, exec: &Exec) -> Result<u64> {
    if w.is_zero() {
        return Err(Error::ZeroInput);
    }
    match method {
        WeightMethod::Direct => {
            let table = PluckerTable::build(w.field(), w.degree(), w.dim(), exec)?;
            table.weight_par(w, exec)
        }
        WeightMethod::Recursive => recursive_weight(w, Complement::default(), exec),
    }
}

/// Recursive route with an explicit complement choice.
pub fn recursive_weight(w: &DualForm, complement: Complement, exec: &Exec) -> Result<u64> {
    if w.is_zero() {
        return Err(Error::ZeroInput);
    }
    if w.degree() == 0 {
        return Err(Error::DegreeMismatch("weight of a 0-form".into()));
    }
    let q = BigUint::from(w.field().order());
    let steps: BigUint = (0..w.degree()).map(|i| q.pow((w.dim() - i) as u32)).product();
    exec.check("recursive weight", &steps)?;
    recurse(w.field(), w, complement)
}

fn recurse(field: &Arc<Field>, w: &DualForm, complement: Complement) -> Result<u64> {
    let (k, n, q) = (w.degree(), w.dim(), field.order());
    if k == 1 {
        let mut count = 0u64;
        for_each_projective_point(q, n, |v| {
            let value = w.coeffs().iter().zip(v).fold(0, |acc, (&a, &x)| field.add(acc, field.mul(a, x)));
            count += (value != 0) as u64;
        });
        return Ok(count);
    }
    let mut sum = 0u64;
    let mut failure = None;
    for_each_projective_point(q, n, |u| {
        if failure.is_some() {
            return;
        }
        let uvec = MultiVector::vector(field, u).expect("dimension checked");
        let contracted = interior(&uvec, w).expect("degree >= 1");
        if contracted.is_zero() {
            // u ∈ V_ω
            return;
        }
        let drop = match complement {
            Complement::FirstPivot => u.iter().position(|&x| x != 0),
            Complement::LastPivot => u.iter().rposition(|&x| x != 0),
        }
        .expect("nonzero vector");
        match recurse(field, &restrict_to_complement(&contracted, drop), complement) {
            Ok(wt) => sum += wt,
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    // each projective u stands for q - 1 vectors
    let total = sum * (q as u64 - 1);
    let denom = (q as u64).pow(k as u32) - 1;
    if !total.is_multiple_of(denom) {
        return Err(Error::ExactnessViolation(format!("{total} / {denom} in the recursive weight of {w}")));
    }
    Ok(total / denom)
}

/// Restricts a form with `ι_u η = 0` to the span of the standard basis
/// vectors other than `e_drop`, relabelled onto `n - 1` coordinates. That
/// span is a complement of `⟨u⟩` whenever `u` has a nonzero `drop` entry.
fn restrict_to_complement(eta: &DualForm, drop: usize) -> DualForm {
    let (k, n) = (eta.degree(), eta.dim());
    let low = (1u32 << drop) - 1;
    let mut out = DualForm::zero(eta.field(), k, n - 1).expect("shape");
    let mut coeffs = out.coeffs().to_vec();
    for (&m, &c) in masks(k, n).iter().zip(eta.coeffs()) {
        if c == 0 || m >> drop & 1 == 1 {
            continue;
        }
        let squeezed = (m & low) | ((m >> 1) & !low);
        coeffs[lex_rank(squeezed, n - 1)] = c;
    }
    out = DualForm::from_coeffs(eta.field(), k, n - 1, coeffs).expect("shape");
    out
}
