//! Exterior algebra of `V = GF(q)^n` and its dual, Plücker coordinates, and
//! the weight of a `k`-form on the Grassmannian.

mod algebra;
mod maximal;
mod profile;
mod table;
mod weight;

pub use algebra::{
    interior, is_decomposable, pairing, plucker_embed, satisfies_plucker, Dual, DualForm, ExtVec, MultiVector,
    Primal, Side,
};
pub(crate) use algebra::dot;
pub use maximal::{pi_alpha, pi_gamma};
pub use profile::{form_profile, FormProfile};
pub use table::PluckerTable;
pub use weight::{form_weight, recursive_weight, Complement, WeightMethod};
