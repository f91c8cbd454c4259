//! Construction and exact verification of noncommutative association schemes
//! built from symmetric balanced generalized weighing matrices and generalized
//! Hadamard matrices, together with their adjacency algebras, eigenmatrices,
//! character tables and symmetric fusions.

pub mod algebra;
pub mod builders;
pub mod cli;
pub mod designs;
pub mod error;
pub mod matrixkit;
pub mod oracle;
pub mod schemes;
pub mod spectra;

pub use error::{Error, ErrorClass, Result};
