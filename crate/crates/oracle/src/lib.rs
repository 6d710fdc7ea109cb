//! An exact model of `V(λ_{p,q}) ⊗ V^{⊗d}` for `gl(m|n)`, carrying the
//! superalgebra action and the right action of the degenerate affine Hecke
//! algebra through the supertrace element `Ω`.
//!
//! Nothing here depends on diagram combinatorics, so the crate serves as an
//! independent check on the arc-algebra side.

pub mod error;
pub mod hecke;
pub mod linalg;
pub mod tensor;

pub use error::{OracleError, Result};
pub use hecke::{casimir_check, casimir_on_ground, check_hecke_relations, weight_decomposition, CasimirReport, HeckeReport};
pub use tensor::{Key, Operator, TensorSpace, TensorVector};
