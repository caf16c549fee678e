//! Polynomial functions and vector fields on split superdomains `R^{p|q}`.

mod chart;
mod field;
mod function;

pub use chart::{Chart, Coord, EvenCoord, EvenRole, OddCoord, OddRole, Shape, MAX_ODD};
pub use field::{DisplayField, VectorField};
pub use function::{DisplayFunction, Monomial, SuperFunction};
pub(crate) use function::monomial_string;
