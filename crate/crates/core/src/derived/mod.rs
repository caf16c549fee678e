//! V-algebras, higher derived brackets and Maurer–Cartan residuals.

mod brackets;
mod extended;
mod linfty;
mod valgebra;

pub use brackets::{derived_bracket, mc_residual, twisted_projection, MCDelta, MCResidual};
pub use extended::{extended_bracket, extended_mc_residual, ExtElement, ExtResidual};
pub use linfty::{
    check_linfty_axioms, jacobiator, AxiomReport, DerivedLInfty, DglaLInfty, ExtendedLInfty,
    LInftyAlgebra, DEFAULT_MAX_ARITY,
};
pub use valgebra::{
    ad_powers, check_v_algebra, coefficient_table, exp_ad, AbelianVAlgebra, AxiomOutcome,
    SplitVAlgebra, TwistedVAlgebra, VAlgebra, VAlgebraReport,
};

/// Default bound on the number of brackets in any exponential series.
pub const DEFAULT_CAP: usize = 64;
