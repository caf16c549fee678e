//! Deformations of subalgebroids in adapted split coordinates.

mod oracle;
mod residual;
mod setup;
mod tangency;

pub use oracle::{graph_closure_oracle, graph_frame, GraphClosureReport};
pub use residual::{graph_gamma, subalgebroid_mc_residual, SubalgebroidResidual};
pub use setup::{DeformationPair, SplitSetup};
pub use tangency::{graph_field, normal_coords, tangency_oracle, TangencyResult};
mod explicit;
mod simultaneous;
pub use simultaneous::{simultaneous_residual, SimultaneousResidual};
pub use explicit::{
    decode_form, encode_form, explicit_m1, explicit_m2, explicit_m3, explicit_structure_map, form_basis, BundleForm,
};
