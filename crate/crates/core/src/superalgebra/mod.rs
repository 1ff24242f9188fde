//! The Lie superalgebra `W^s_l(2,2)`: basis, grading, bracket and axiom
//! checks.

mod axioms;
mod basis;
mod bracket;
mod element;
mod violation;

pub use axioms::{check_super_jacobi, check_super_skew, AxiomViolation};
pub use basis::{BasisIndex, Family, HalfInt, Parity, Window};
pub use bracket::AlgebraConfig;
pub use element::{Element, Grade};
pub use violation::BracketViolation;
