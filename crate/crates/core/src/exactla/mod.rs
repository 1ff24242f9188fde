//! Exact linear algebra over any [`Field`]: reduced row echelon form, rank,
//! nullspaces and relative ranks of spans.
//!
//! Matrices are stored as sparse rows. Elimination is deterministic and the
//! reduced row echelon form is unique, so equal inputs always give identical
//! outputs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::Field;

/// A sparse row: `(column, value)` pairs, columns strictly increasing, no
/// stored zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (i, row) in m.data.iter_mut().enumerate() {
            row.push((i, F::one()));
        }
        m
    }

    /// A matrix with `cols` columns and no rows yet.
    pub fn with_cols(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::with_cols(cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            m.push_dense(r);
        }
        Ok(m)
    }

    /// Appends a row given as arbitrary `(column, value)` pairs; repeated
    /// columns are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, F)>) {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range for {} columns", self.cols);
            let e = acc.entry(c).or_insert_with(F::zero);
            *e = e.add(&v);
        }
        self.data
            .push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.rows += 1;
    }

    pub fn push_dense(&mut self, row: &[F]) {
        self.push_row(row.iter().cloned().enumerate());
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.data.iter().map(|r| densify(r, self.cols)).collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .fold(F::zero(), |acc, (c, x)| acc.add(&x.mul(&v[*c])))
            })
            .collect())
    }
}

fn densify<F: Field>(row: &[(usize, F)], len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

fn sparsify<F: Field>(row: &[F]) -> SparseRow<F> {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.clone()))
        .collect()
}

/// `a + c * b` for sparse rows.
fn axpy<F: Field>(a: &[(usize, F)], c: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row space kept in reduced row echelon form while rows are inserted.
///
/// Invariant: every stored row has leading entry one at its key, and no
/// stored row has a nonzero entry in another row's pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, row: &[(usize, F)]) -> SparseRow<F> {
        let hits: Vec<(usize, F)> = row
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .cloned()
            .collect();
        let mut v = row.to_vec();
        for (c, x) in hits {
            v = axpy(&v, &x.neg(), &self.pivots[&c]);
        }
        v
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, row: &[(usize, F)]) -> bool {
        let v = self.reduce(row);
        let Some((lead, lv)) = v.first().cloned() else {
            return false;
        };
        let inv = lv.inv().expect("nonzero leading entry");
        let v: SparseRow<F> = v.into_iter().map(|(c, x)| (c, x.mul(&inv))).collect();
        for r in self.pivots.values_mut() {
            if let Ok(i) = r.binary_search_by_key(&lead, |(k, _)| *k) {
                let f = r[i].1.neg();
                *r = axpy(r, &f, &v);
            }
        }
        self.pivots.insert(lead, v);
        true
    }

    pub fn contains(&self, row: &[(usize, F)]) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Stored rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow<F>> {
        self.pivots.values()
    }

    pub fn into_matrix(self) -> Matrix<F> {
        let mut m = Matrix::with_cols(self.cols);
        for r in self.pivots.into_values() {
            m.data.push(r);
            m.rows += 1;
        }
        m
    }
}

/// Reduced row echelon form and pivot columns. Zero rows are kept at the
/// bottom so the shape is unchanged.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut e = Echelon::new(m.cols);
    for r in &m.data {
        e.insert(r);
    }
    let pivots = e.pivot_columns();
    let mut out = e.into_matrix();
    while out.rows < m.rows {
        out.data.push(Vec::new());
        out.rows += 1;
    }
    (out, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut e = Echelon::new(m.cols);
    for r in &m.data {
        e.insert(r);
    }
    e.rank()
}

/// A subspace of `F^len` in canonical form: the nonzero rows of the reduced
/// row echelon form of any spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpaceBasis<F> {
    len: usize,
    vectors: Vec<Vec<F>>,
}

impl<F: Field> VectorSpaceBasis<F> {
    pub fn zero(len: usize) -> Self {
        VectorSpaceBasis {
            len,
            vectors: Vec::new(),
        }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn span(len: usize, vectors: &[Vec<F>]) -> Result<Self> {
        let mut e = Echelon::new(len);
        for v in vectors {
            if v.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: v.len(),
                });
            }
            e.insert(&sparsify(v));
        }
        Ok(Self::from_echelon(&e))
    }

    fn from_echelon(e: &Echelon<F>) -> Self {
        VectorSpaceBasis {
            len: e.cols(),
            vectors: e.rows().map(|r| densify(r, e.cols())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.echelon().contains(&sparsify(v))
    }

    fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new(self.len);
        for v in &self.vectors {
            e.insert(&sparsify(v));
        }
        e
    }

    /// Image under the coordinate projection onto `coords` (in that order).
    pub fn restrict(&self, coords: &[usize]) -> Self {
        let projected: Vec<Vec<F>> = self
            .vectors
            .iter()
            .map(|v| coords.iter().map(|&c| v[c].clone()).collect())
            .collect();
        Self::span(coords.len(), &projected).expect("projected lengths agree")
    }
}

/// Basis of `{v : m v = 0}`, in canonical form.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> VectorSpaceBasis<F> {
    let (r, pivots) = rref(m);
    let n = m.cols;
    let is_pivot: Vec<bool> = {
        let mut p = vec![false; n];
        for &c in &pivots {
            p[c] = true;
        }
        p
    };
    let mut vectors = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (i, &pc) in pivots.iter().enumerate() {
            let x = r.get(i, free);
            if !x.is_zero() {
                v[pc] = x.neg();
            }
        }
        vectors.push(v);
    }
    VectorSpaceBasis::span(n, &vectors).expect("lengths agree")
}

/// `(dim sub, dim full, dim full/sub)` for `span(sub) ⊆ span(full)`.
pub fn relative_rank<F: Field>(
    sub: &VectorSpaceBasis<F>,
    full: &VectorSpaceBasis<F>,
) -> Result<(usize, usize, usize)> {
    if sub.len != full.len {
        return Err(Error::DimensionMismatch {
            expected: full.len,
            found: sub.len,
        });
    }
    let mut e = full.echelon();
    for v in &sub.vectors {
        if e.insert(&sparsify(v)) {
            return Err(Error::SubspaceNotContained);
        }
    }
    Ok((sub.dim(), full.dim(), full.dim() - sub.dim()))
}
