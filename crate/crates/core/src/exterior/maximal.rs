//! The two families of maximal linear subspaces of the Grassmannian:
//! `π_α` (all `k`-spaces through a fixed `(k-1)`-space `α`) and `π^γ` (all
//! `k`-spaces inside a fixed `(k+1)`-space `γ`).

use crate::error::{Error, Result};
use crate::linalg::{for_each_projective_point, GrassmannPoint, Matrix};

/// `π_α`: every `k`-subspace containing `α`, where `k = dim α + 1`.
///
/// Has `(q^{n-k+1} - 1)/(q - 1)` points, one per point of `P(V/α)`.
pub fn pi_alpha(alpha: &GrassmannPoint) -> Result<Vec<GrassmannPoint>> {
    let n = alpha.ambient();
    if alpha.dim() >= n {
        return Err(Error::DimensionMismatch(format!("no subspace of dimension {} in {n}", alpha.dim() + 1)));
    }
    let field = alpha.matrix().field().clone();
    let pivots = alpha.pivots();
    let free: Vec<usize> = (0..n).filter(|c| pivots.mask() >> c & 1 == 0).collect();
    let mut out = Vec::new();
    let mut failure = None;
    for_each_projective_point(field.order(), free.len(), |coords| {
        let mut v = vec![0u32; n];
        for (&c, &x) in free.iter().zip(coords) {
            v[c] = x;
        }
        let extra = Matrix::from_vec(field.clone(), 1, n, v).expect("entries in field");
        match alpha.matrix().stack(&extra).and_then(|m| GrassmannPoint::from_matrix(&m)) {
            Ok(p) => out.push(p),
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `π^γ`: every `k`-subspace of `γ`, where `k = dim γ - 1`.
///
/// Has `(q^{k+1} - 1)/(q - 1)` points, one per hyperplane of `γ`.
pub fn pi_gamma(gamma: &GrassmannPoint) -> Result<Vec<GrassmannPoint>> {
    let d = gamma.dim();
    if d < 2 {
        return Err(Error::DimensionMismatch(format!("π^γ needs dim γ >= 2, got {d}")));
    }
    let field = gamma.matrix().field().clone();
    let mut out = Vec::new();
    let mut failure = None;
    for_each_projective_point(field.order(), d, |theta| {
        let functional = Matrix::from_vec(field.clone(), 1, d, theta.to_vec()).expect("entries in field");
        let kernel = functional.nullspace();
        match kernel.mul(gamma.matrix()).and_then(|m| GrassmannPoint::from_matrix(&m)) {
            Ok(p) => out.push(p),
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
