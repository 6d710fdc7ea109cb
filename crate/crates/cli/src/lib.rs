//! Command implementations behind the `kmn` binary, plus the cross-validation
//! suites that compare the diagram calculus with the tensor-space model.

pub mod app;
pub mod commands;
pub mod error;
pub mod render;
pub mod xcheck;

pub use error::{CliError, Result};
