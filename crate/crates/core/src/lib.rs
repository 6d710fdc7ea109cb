//! Generalized Khovanov arc algebras `K(m|n)` attached to the general linear
//! supergroup `GL(m|n)`.
//!
//! The crate covers weight diagrams and their blocks, cup/cap diagrams and the
//! graded diagram basis, multiplication by surgery, finite truncations with
//! their Cartan and decomposition matrices, and the action of the special
//! projective functors on Grothendieck groups.

pub mod algebra;
pub mod arcs;
pub mod error;
pub mod functors;
pub mod grothendieck;
pub mod poly;
pub mod stretched;
pub mod surgery;
pub mod weights;

pub use error::{Error, Result};
