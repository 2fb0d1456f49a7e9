use crate::error::{Error, Result};
use crate::exterior::algebra::{interior, satisfies_plucker, DualForm, MultiVector};
use crate::index::MultiIndex;
use crate::linalg::Matrix;

/// The subspaces `V_ω = {v : ι_v ω = 0}` and `U_ω = V_ω^⊥` of a nonzero form.
#[derive(Clone, Debug)]
pub struct FormProfile {
    pub form: DualForm,
    /// Basis of `V_ω` as rows (vectors of `V`).
    pub v_omega: Matrix,
    /// Basis of `U_ω` as rows (covectors).
    pub u_omega: Matrix,
    pub decomposable: bool,
}

impl FormProfile {
    pub fn dim_v(&self) -> usize {
        self.v_omega.rows()
    }

    pub fn dim_u(&self) -> usize {
        self.u_omega.rows()
    }
}

/// Matrix whose row `i` holds the coefficients of `ι_{e_i} ω`.
fn contraction_matrix(w: &DualForm) -> Matrix {
    let (n, k) = (w.dim(), w.degree());
    let cols = crate::index::small_binomial(n, k - 1);
    let mut data = Vec::with_capacity(n * cols);
    for i in 1..=n {
        let e = MultiVector::basis(w.field(), MultiIndex::new(&[i], n).expect("valid index"));
        data.extend_from_slice(interior(&e, w).expect("degree >= 1").coeffs());
    }
    Matrix::from_vec(w.field().clone(), n, cols, data).expect("shape")
}

/// Computes `V_ω`, `U_ω` and decomposability of a nonzero form of degree >= 1.
pub fn form_profile(w: &DualForm) -> Result<FormProfile> {
    if w.is_zero() {
        return Err(Error::ZeroInput);
    }
    if w.degree() == 0 {
        return Err(Error::DegreeMismatch("profile of a 0-form".into()));
    }
    // v ↦ ι_v ω is v^T M, so V_ω is the left kernel of M
    let v_omega = contraction_matrix(w).transpose().nullspace();
    let u_omega = if v_omega.rows() == 0 {
        Matrix::identity(w.field().clone(), w.dim())
    } else {
        v_omega.nullspace()
    };
    let decomposable = satisfies_plucker(w)?;
    Ok(FormProfile { form: w.clone(), v_omega, u_omega, decomposable })
}
