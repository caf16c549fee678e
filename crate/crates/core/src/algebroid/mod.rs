//! Lie algebroids from polynomial structure data.

mod ce;
mod data;
mod derivation;
pub mod presets;

pub use ce::{ce_differential, CEForm};
pub use data::{deformation_residual, AlgebroidData, AlgebroidReport, ClassicalReport, Section};
pub use derivation::Derivation;
pub(crate) use ce::{increasing_tuples, sort_with_sign};
