//! Exact graded algebra for deformations of Lie algebroids and their
//! subalgebroids.

pub mod error;
pub mod graded;
pub mod linalg;
pub mod random;
pub mod algebroid;
pub mod applications;
pub mod cli;
pub mod cohomology;
pub mod derived;
pub mod subalgebroid;
pub mod superfield;

pub use error::{Error, Result};
