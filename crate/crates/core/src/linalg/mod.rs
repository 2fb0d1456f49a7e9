//! Dense linear algebra over GF(q) and the Grassmannian point enumeration.

mod grassmannian;
mod matrix;

pub use crate::combinatorics::{gaussian_binomial, gl_order};
pub use grassmannian::{
    enumerate_grassmannian, for_each_in_chunk, for_each_projective_point, grassmannian_chunks, schubert_cells, GrassmannChunk,
    GrassmannIter, GrassmannPoint, SchubertCell,
};
pub(crate) use grassmannian::{check_grassmannian, odometer_step};
pub(crate) use matrix::minor_of_rows;
pub use matrix::{det_in_place, Matrix};
