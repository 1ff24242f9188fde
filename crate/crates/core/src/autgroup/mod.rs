//! Automorphisms: the sigma family, the inner exponentials
//! `exp(a ad I_k) = id + a ad I_k`, composition and inversion, and checks of
//! the homomorphism property and of the sigma parameter identities.

mod map;
mod sigma;
mod verify;

pub use map::{compose, invert, make_inner_exp, make_sigma, make_sigma_unchecked, AutMap, Provenance};
pub use sigma::{ConstraintCheck, SigmaParams};
pub use verify::{check_sigma_constraints, decompose_into_inner_group, verify_homomorphism, JDecomposition};
