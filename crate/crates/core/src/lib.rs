//! Exact computations for the deformative super W-algebras `W^s_l(2,2)`.
//!
//! The algebra has basis `L_m, I_m, G_p, H_p` (`m` integer, `p` in `s + Z`,
//! `s` in `{0, 1/2}`) and depends on a deformation parameter `l`. This crate
//! provides the bracket, a solver for homogeneous super-derivations on finite
//! index windows, the canonical outer derivations, and constructions and
//! checks for automorphisms, all over exact scalars.

pub mod autgroup;
pub mod cli;
pub mod derivclass;
pub mod error;
pub mod exactla;
pub mod exactnum;
pub mod superalgebra;

pub use error::{Error, Result};
