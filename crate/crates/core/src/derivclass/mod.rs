//! Homogeneous super-derivations on finite windows: the Leibniz system, its
//! solution space, inner and tabulated outer derivations, and the
//! classification report.

mod map;
mod report;
mod system;

pub use map::{canonical_outer, verify_leibniz, GradedMap, Which};
pub use report::{
    classify, default_cells, expected_outer, label_outer, CellReport, ClassificationReport, EXPECTED_OUTER,
};
pub use system::{
    ansatz_unknowns, assemble_leibniz_system, inner_generators, solve_derivation_space, DerivationSpace, Unknown,
    MARGIN,
};
