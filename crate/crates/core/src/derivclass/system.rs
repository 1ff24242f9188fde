use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use super::map::GradedMap;
use crate::error::{Error, Result};
use crate::exactla::{nullspace, relative_rank, Matrix, VectorSpaceBasis};
use crate::exactnum::Field;
use crate::superalgebra::{AlgebraConfig, BasisIndex, Element, Family, HalfInt, Parity, Window};

/// Interior coordinates must stay this far from the window boundary.
pub const MARGIN: u32 = 2;

/// One coefficient of the ansatz: the coefficient of `target` in `d(source)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Unknown {
    pub source: BasisIndex,
    pub target: BasisIndex,
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

/// Families a homogeneous map of parity `parity` may send `fam` to.
fn target_families(fam: Family, parity: Parity) -> [Family; 2] {
    Family::of_parity(fam.parity() + parity)
}

/// A Leibniz equation, keyed by the output basis vector it constrains.
type Row<F> = (BasisIndex, Vec<(usize, F)>);

/// Ordered unknowns: source family major, source index ascending, target
/// family minor. Degree/parity combinations with no admissible target give
/// the empty list.
pub fn ansatz_unknowns<F: Field>(
    cfg: &AlgebraConfig<F>,
    parity: Parity,
    degree: HalfInt,
    window: Window,
) -> Vec<Unknown> {
    let mut out = Vec::new();
    for source in window.basis(cfg.s) {
        let t = source.index + degree;
        if !window.contains(t) {
            continue;
        }
        for fam in target_families(source.family, parity) {
            let target = BasisIndex::new(fam, t);
            if target.is_valid_for(cfg.s) {
                out.push(Unknown { source, target });
            }
        }
    }
    out
}

type Lookup = HashMap<BasisIndex, Vec<(usize, BasisIndex)>>;

fn lookup(unknowns: &[Unknown]) -> Lookup {
    let mut m: Lookup = HashMap::new();
    for (col, u) in unknowns.iter().enumerate() {
        m.entry(u.source).or_default().push((col, u.target));
    }
    m
}

/// The super-Leibniz rule as a linear system in the ansatz unknowns.
///
/// For each unordered pair `x <= y` with `x`, `y`, `x+y` and their shifts by
/// `degree` inside the window, one row per basis vector of
/// `d([x,y]) - [d(x),y] - (-1)^{|d||x|}[x,d(y)]`. Rows that vanish
/// identically are dropped.
pub fn assemble_leibniz_system<F: Field>(
    cfg: &AlgebraConfig<F>,
    parity: Parity,
    degree: HalfInt,
    window: Window,
) -> Matrix<F> {
    let unknowns = ansatz_unknowns(cfg, parity, degree, window);
    assemble(cfg, parity, degree, window, &unknowns)
}

fn assemble<F: Field>(
    cfg: &AlgebraConfig<F>,
    parity: Parity,
    degree: HalfInt,
    window: Window,
    unknowns: &[Unknown],
) -> Matrix<F> {
    let mut m = Matrix::with_cols(unknowns.len());
    if unknowns.is_empty() {
        return m;
    }
    let lk = lookup(unknowns);
    let inside = |h: HalfInt| window.contains(h) && window.contains(h + degree);
    let basis: Vec<BasisIndex> = window.basis(cfg.s).into_iter().filter(|b| inside(b.index)).collect();
    let blocks: Vec<Vec<Row<F>>> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let mut rows = Vec::new();
            let x = basis[i];
            for &y in &basis[i..] {
                if inside(x.index + y.index) {
                    pair_rows(cfg, parity, &lk, x, y, &mut rows);
                }
            }
            rows
        })
        .collect();
    for (_, row) in blocks.into_iter().flatten() {
        m.push_row(row);
    }
    m
}

fn pair_rows<F: Field>(
    cfg: &AlgebraConfig<F>,
    parity: Parity,
    lk: &Lookup,
    x: BasisIndex,
    y: BasisIndex,
    rows: &mut Vec<Row<F>>,
) {
    let none = Vec::new();
    let get = |b: &BasisIndex| lk.get(b).unwrap_or(&none);
    let mut acc: BTreeMap<BasisIndex, BTreeMap<usize, F>> = BTreeMap::new();
    let mut add = |t: BasisIndex, col: usize, c: F| {
        let e = acc.entry(t).or_default().entry(col).or_insert_with(F::zero);
        *e = e.add(&c);
    };
    for (z, c) in cfg.bracket_terms(x, y) {
        for &(col, t) in get(&z) {
            add(t, col, c.clone());
        }
    }
    for &(col, u) in get(&x) {
        for (t, c) in cfg.bracket_terms(u, y) {
            add(t, col, c.neg());
        }
    }
    let sign = -parity.sign(x.parity());
    for &(col, u) in get(&y) {
        for (t, c) in cfg.bracket_terms(x, u) {
            add(t, col, c.scale_int(sign));
        }
    }
    for (t, r) in acc {
        let r: Vec<(usize, F)> = r.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !r.is_empty() {
            rows.push((t, r));
        }
    }
}

/// Solution space of the Leibniz system on a window, with the inner
/// derivations of the same parity and degree in the same coordinates.
#[derive(Clone, Debug)]
pub struct DerivationSpace<F: Field> {
    pub cfg: AlgebraConfig<F>,
    pub parity: Parity,
    pub degree: HalfInt,
    pub window: Window,
    pub interior: u32,
    pub unknowns: Vec<Unknown>,
    pub nullspace: VectorSpaceBasis<F>,
    pub inner: VectorSpaceBasis<F>,
    /// Columns whose source and target both lie in `[-interior, interior]`.
    pub interior_coords: Vec<usize>,
    pub nullspace_interior: VectorSpaceBasis<F>,
    pub inner_interior: VectorSpaceBasis<F>,
}

impl<F: Field> DerivationSpace<F> {
    pub fn dim_outer(&self) -> usize {
        self.nullspace_interior.dim() - self.inner_interior.dim()
    }

    /// Coordinates of a tabulated map in this space's unknowns.
    pub fn coordinates(&self, d: &GradedMap<F>) -> Vec<F> {
        let mut cache: HashMap<BasisIndex, Element<F>> = HashMap::new();
        self.unknowns
            .iter()
            .map(|u| {
                cache
                    .entry(u.source)
                    .or_insert_with(|| d.image(u.source).unwrap_or_default())
                    .coeff(&u.target)
            })
            .collect()
    }

    /// The map with the given coordinates.
    pub fn to_map(&self, v: &[F]) -> GradedMap<F> {
        let mut map = GradedMap::zero(&self.cfg, self.parity, self.degree, self.window);
        let mut images: BTreeMap<BasisIndex, Element<F>> = BTreeMap::new();
        for (u, c) in self.unknowns.iter().zip(v) {
            images.entry(u.source).or_default().add_term(u.target, c.clone());
        }
        for (b, img) in images {
            map.set_image(b, img);
        }
        map
    }

    pub fn restrict_to_interior(&self, v: &[F]) -> Vec<F> {
        self.interior_coords.iter().map(|&c| v[c].clone()).collect()
    }
}

/// Generators of the inner derivations of the given parity and degree.
pub fn inner_generators<F: Field>(cfg: &AlgebraConfig<F>, parity: Parity, degree: HalfInt) -> Vec<BasisIndex> {
    Family::of_parity(parity)
        .into_iter()
        .map(|f| BasisIndex::new(f, degree))
        .filter(|b| b.is_valid_for(cfg.s))
        .collect()
}

/// Solves for the homogeneous derivations on `[-N, N]` and compares them with
/// the inner ones on the interior `[-M, M]`.
pub fn solve_derivation_space<F: Field>(
    cfg: &AlgebraConfig<F>,
    parity: Parity,
    degree: HalfInt,
    window: Window,
    interior: u32,
) -> Result<DerivationSpace<F>> {
    if interior + MARGIN > window.0 {
        return Err(Error::InteriorTooLarge {
            window: window.0,
            interior,
            margin: MARGIN,
        });
    }
    let unknowns = ansatz_unknowns(cfg, parity, degree, window);
    let n = unknowns.len();
    let system = assemble(cfg, parity, degree, window, &unknowns);
    let ns = nullspace(&system);

    let inner_vectors: Vec<Vec<F>> = inner_generators(cfg, parity, degree)
        .into_iter()
        .map(|x| {
            unknowns
                .iter()
                .map(|u| {
                    cfg.bracket_terms(x, u.source)
                        .into_iter()
                        .find(|(t, _)| *t == u.target)
                        .map_or_else(F::zero, |(_, c)| c)
                })
                .collect()
        })
        .collect();
    let inner = VectorSpaceBasis::span(n, &inner_vectors)?;

    let m = Window(interior);
    let interior_coords: Vec<usize> = unknowns
        .iter()
        .enumerate()
        .filter(|(_, u)| m.contains(u.source.index) && m.contains(u.target.index))
        .map(|(i, _)| i)
        .collect();
    let nullspace_interior = ns.restrict(&interior_coords);
    let inner_interior = inner.restrict(&interior_coords);
    relative_rank(&inner_interior, &nullspace_interior)?;

    Ok(DerivationSpace {
        cfg: cfg.clone(),
        parity,
        degree,
        window,
        interior,
        unknowns,
        nullspace: ns,
        inner,
        interior_coords,
        nullspace_interior,
        inner_interior,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{RatFunc, Rational, ScalarMode};

    fn sym(s: HalfInt) -> AlgebraConfig<RatFunc> {
        AlgebraConfig::new(s, ScalarMode::Symbolic).unwrap()
    }

    #[test]
    fn ansatz_counts() {
        let c0 = sym(HalfInt::ZERO);
        assert_eq!(ansatz_unknowns(&c0, Parity::Even, HalfInt::from_int(1), Window(2)).len(), 32);
        assert_eq!(ansatz_unknowns(&c0, Parity::Even, HalfInt::ZERO, Window(0)).len(), 8);
        let c1 = sym(HalfInt::HALF);
        assert!(ansatz_unknowns(&c1, Parity::Odd, HalfInt::ZERO, Window(3)).is_empty());
        assert!(ansatz_unknowns(&c1, Parity::Even, HalfInt::HALF, Window(3)).is_empty());
        assert!(ansatz_unknowns(&c0, Parity::Odd, HalfInt::HALF, Window(3)).is_empty());
    }

    #[test]
    fn ansatz_order() {
        let c0 = sym(HalfInt::ZERO);
        let u = ansatz_unknowns(&c0, Parity::Odd, HalfInt::ZERO, Window(0));
        let text: Vec<String> = u.iter().map(|u| u.to_string()).collect();
        assert_eq!(
            text,
            [
                "L[0]->G[0]", "L[0]->H[0]", "I[0]->G[0]", "I[0]->H[0]",
                "G[0]->L[0]", "G[0]->I[0]", "H[0]->L[0]", "H[0]->I[0]",
            ]
        );
    }

    #[test]
    fn empty_ansatz_gives_zero_columns() {
        let c1 = sym(HalfInt::HALF);
        let m = assemble_leibniz_system(&c1, Parity::Odd, HalfInt::ZERO, Window(3));
        assert_eq!(m.cols(), 0);
    }

    /// Row for the pair `(x, y)` and output basis vector `t`, keyed by
    /// unknown.
    fn row_for(
        cfg: &AlgebraConfig<RatFunc>,
        parity: Parity,
        degree: HalfInt,
        window: Window,
        x: BasisIndex,
        y: BasisIndex,
        t: BasisIndex,
    ) -> BTreeMap<String, RatFunc> {
        let unknowns = ansatz_unknowns(cfg, parity, degree, window);
        let mut rows = Vec::new();
        pair_rows(cfg, parity, &lookup(&unknowns), x, y, &mut rows);
        let (_, row) = rows.into_iter().find(|(out, _)| *out == t).unwrap();
        row.into_iter().map(|(c, v)| (unknowns[c].to_string(), v)).collect()
    }

    #[test]
    fn l_l_rows_match_the_recurrence() {
        // (n-m) a_{L_{m+n}} = (n+k-m) a_{L_n} + (n-m-k) a_{L_m} at n=2, m=-1, k=1,
        // i.e. 3 a_{L_1} = 4 a_{L_2} + 2 a_{L_-1}
        let c0 = sym(HalfInt::ZERO);
        let k = HalfInt::from_int(1);
        let r = row_for(&c0, Parity::Even, k, Window(4), BasisIndex::l(-1), BasisIndex::l(2), BasisIndex::l(2));
        let q = |n: i64| RatFunc::from_int(n);
        let mut want = BTreeMap::new();
        want.insert("L[1]->L[2]".to_string(), q(-3));
        want.insert("L[-1]->L[0]".to_string(), q(2));
        want.insert("L[2]->L[3]".to_string(), q(4));
        assert_eq!(r, want);
    }

    #[test]
    fn g_g_rows_force_b_eq_c_plus_c() {
        let c0 = sym(HalfInt::ZERO);
        let r = row_for(&c0, Parity::Even, HalfInt::ZERO, Window(3), BasisIndex::g(2), BasisIndex::g(4), BasisIndex::i(3));
        let mut want = BTreeMap::new();
        want.insert("I[3]->I[3]".to_string(), RatFunc::one());
        want.insert("G[1]->G[1]".to_string(), RatFunc::from_int(-1));
        want.insert("G[2]->G[2]".to_string(), RatFunc::from_int(-1));
        assert_eq!(r, want);
    }

    #[test]
    fn interior_too_large() {
        let c0 = sym(HalfInt::ZERO);
        assert!(matches!(
            solve_derivation_space(&c0, Parity::Even, HalfInt::ZERO, Window(5), 4),
            Err(Error::InteriorTooLarge { .. })
        ));
    }

    #[test]
    fn solved_vectors_are_derivations() {
        let c0: AlgebraConfig<Rational> = AlgebraConfig::new(HalfInt::ZERO, ScalarMode::Specialized(Rational::zero())).unwrap();
        let sp = solve_derivation_space(&c0, Parity::Even, HalfInt::ZERO, Window(4), 2).unwrap();
        assert_eq!(sp.dim_outer(), 2);
        for v in sp.nullspace.vectors() {
            let d = sp.to_map(v);
            assert_eq!(sp.coordinates(&d), *v);
            assert!(super::super::verify_leibniz(&c0, &d, Window(4)).is_empty());
        }
    }
}
