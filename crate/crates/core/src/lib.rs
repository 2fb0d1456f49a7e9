pub mod asymptotics;
pub mod census;
pub mod code;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod fields;
pub mod index;
pub mod linalg;
pub mod sections;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use fields::{Field, FieldElem};
pub use index::MultiIndex;
pub use linalg::{GrassmannPoint, Matrix};
