use rayon::prelude::*;
use serde::Serialize;

use super::map::{canonical_outer, Which};
use super::system::{solve_derivation_space, DerivationSpace};
use crate::error::Result;
use crate::exactla::Echelon;
use crate::exactnum::Field;
use crate::superalgebra::{AlgebraConfig, HalfInt, Parity, Window};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub parity: Parity,
    pub degree: HalfInt,
    pub dim_nullspace_interior: usize,
    pub dim_inner_interior: usize,
    pub dim_outer: usize,
    pub outer_labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub s: HalfInt,
    pub lambda: String,
    pub window: u32,
    pub interior: u32,
    pub cells: Vec<CellReport>,
}

impl ClassificationReport {
    pub fn cell(&self, parity: Parity, degree: HalfInt) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.parity == parity && c.degree == degree)
    }

    /// Cells whose outer dimension or labels differ from [`EXPECTED_OUTER`].
    pub fn mismatches(&self, lambda_is_zero: bool) -> Vec<&CellReport> {
        self.cells
            .iter()
            .filter(|c| {
                let (dim, labels) = expected_outer(self.s, lambda_is_zero, c.parity, c.degree);
                c.dim_outer != dim || c.outer_labels != labels
            })
            .collect()
    }
}

/// Nonzero outer dimensions by `(twice s, l = 0, parity, twice degree)`;
/// every other cell is expected to have no outer derivations.
pub const EXPECTED_OUTER: &[(i64, bool, Parity, i64, &[&str])] = &[
    (0, false, Parity::Even, 0, &["d2"]),
    (0, true, Parity::Even, 0, &["d1", "d2"]),
    (1, false, Parity::Even, 0, &["d4"]),
    (1, true, Parity::Even, 0, &["d3", "d4"]),
];

/// Expected `(dim_outer, labels)` for a cell.
pub fn expected_outer(s: HalfInt, lambda_is_zero: bool, parity: Parity, degree: HalfInt) -> (usize, Vec<String>) {
    EXPECTED_OUTER
        .iter()
        .find(|(ts, z, p, td, _)| *ts == s.twice() && *z == lambda_is_zero && *p == parity && *td == degree.twice())
        .map_or((0, Vec::new()), |(.., labels)| {
            (labels.len(), labels.iter().map(|l| l.to_string()).collect())
        })
}

/// The default cell list for degrees `lo..=hi`: both parities at every
/// admissible degree, plus the odd degree-0 cell when `s = 1/2`.
pub fn default_cells(s: HalfInt, lo: i64, hi: i64) -> Vec<(Parity, HalfInt)> {
    let mut cells = Vec::new();
    for d in lo..=hi {
        cells.push((Parity::Even, HalfInt::from_int(d)));
    }
    if s.is_integer() {
        for d in lo..=hi {
            cells.push((Parity::Odd, HalfInt::from_int(d)));
        }
    } else {
        let mut odd: Vec<HalfInt> = (2 * lo + 1..2 * hi).step_by(2).map(HalfInt::from_twice).collect();
        if lo <= 0 && 0 <= hi {
            odd.push(HalfInt::ZERO);
            odd.sort();
        }
        cells.extend(odd.into_iter().map(|d| (Parity::Odd, d)));
    }
    cells
}

/// Names the outer directions of a solved space by the tabulated outer
/// derivations they contain; any remaining dimension is "unidentified".
pub fn label_outer<F: Field>(space: &DerivationSpace<F>) -> Vec<String> {
    let dim = space.dim_outer();
    if dim == 0 {
        return Vec::new();
    }
    let mut labels = Vec::new();
    if space.parity == Parity::Even && space.degree == HalfInt::ZERO {
        let len = space.interior_coords.len();
        let sparse = |v: &[F]| -> Vec<(usize, F)> {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect()
        };
        let mut acc = Echelon::new(len);
        for v in space.inner_interior.vectors() {
            acc.insert(&sparse(v));
        }
        for which in Which::for_s(space.cfg.s) {
            let d = canonical_outer(&space.cfg, which, space.window).expect("s matches");
            let v = space.restrict_to_interior(&space.coordinates(&d));
            if space.nullspace_interior.contains(&v) && acc.insert(&sparse(&v)) {
                labels.push(which.label().to_string());
            }
        }
    }
    while labels.len() < dim {
        labels.push("unidentified".to_string());
    }
    labels
}

/// Solves every `(parity, degree)` cell and reports outer dimensions.
pub fn classify<F: Field>(
    cfg: &AlgebraConfig<F>,
    cells: &[(Parity, HalfInt)],
    window: Window,
    interior: u32,
) -> Result<ClassificationReport> {
    let cells: Vec<CellReport> = cells
        .par_iter()
        .map(|&(parity, degree)| {
            let sp = solve_derivation_space(cfg, parity, degree, window, interior)?;
            Ok(CellReport {
                parity,
                degree,
                dim_nullspace_interior: sp.nullspace_interior.dim(),
                dim_inner_interior: sp.inner_interior.dim(),
                dim_outer: sp.dim_outer(),
                outer_labels: label_outer(&sp),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ClassificationReport {
        s: cfg.s,
        lambda: cfg.mode.to_string(),
        window: window.0,
        interior,
        cells,
    })
}
