use std::collections::BTreeMap;

use super::sigma::SigmaParams;
use crate::error::{Error, Result};
use crate::exactla::{rref, Matrix};
use crate::exactnum::Field;
use crate::superalgebra::{AlgebraConfig, BasisIndex, Element, Family, HalfInt, Window};

/// How an [`AutMap`] was built. Closed forms apply at every index; only
/// explicitly tabulated maps are confined to their window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance<F: Field> {
    Sigma(SigmaParams<F>),
    /// `id + sum alpha_j ad I_{k_j}`, sorted by `k_j`, no zero `alpha_j`.
    InnerExp(Vec<(F, i64)>),
    /// `f o g`.
    Composite(Box<AutMap<F>>, Box<AutMap<F>>),
    /// Inverse of a map sending `X_k` into the span of `X_{ek}` and, for `L`
    /// and `G`, the partner family `I` or `H` at the same index.
    BlockInverse(Box<AutMap<F>>),
    Explicit(BTreeMap<BasisIndex, Element<F>>),
}

/// An even linear map of the algebra, verified and tabulated on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutMap<F: Field> {
    pub cfg: AlgebraConfig<F>,
    pub window: Window,
    pub provenance: Provenance<F>,
}

impl<F: Field> AutMap<F> {
    pub fn identity(cfg: &AlgebraConfig<F>, window: Window) -> Self {
        AutMap {
            cfg: cfg.clone(),
            window,
            provenance: Provenance::InnerExp(Vec::new()),
        }
    }

    /// A map given by its images on the window basis; missing images are 0.
    pub fn explicit(cfg: &AlgebraConfig<F>, window: Window, images: BTreeMap<BasisIndex, Element<F>>) -> Result<Self> {
        for (b, img) in &images {
            cfg.validate(*b)?;
            cfg.validate_element(img)?;
            if !window.contains_basis(*b) {
                return Err(Error::OutsideWindow { basis: b.to_string() });
            }
        }
        Ok(AutMap {
            cfg: cfg.clone(),
            window,
            provenance: Provenance::Explicit(images),
        })
    }

    /// The image of one basis vector.
    pub fn apply_basis(&self, b: BasisIndex) -> Result<Element<F>> {
        self.cfg.validate(b)?;
        match &self.provenance {
            Provenance::Sigma(p) => Ok(p.image(&self.cfg, b)),
            Provenance::InnerExp(factors) => {
                let mut out = Element::basis(b);
                for (a, k) in factors {
                    for (t, c) in self.cfg.bracket_terms(BasisIndex::i(*k), b) {
                        out.add_term(t, c.mul(a));
                    }
                }
                Ok(out)
            }
            Provenance::Composite(f, g) => f.apply(&g.apply_basis(b)?),
            Provenance::BlockInverse(f) => block_inverse_image(f, b),
            Provenance::Explicit(images) => {
                if !self.window.contains_basis(b) {
                    return Err(Error::OutsideWindow { basis: b.to_string() });
                }
                Ok(images.get(&b).cloned().unwrap_or_default())
            }
        }
    }

    pub fn apply(&self, x: &Element<F>) -> Result<Element<F>> {
        let mut out = Element::zero();
        for (b, c) in x.iter() {
            out.add_scaled(&self.apply_basis(*b)?, c);
        }
        Ok(out)
    }

    /// Images of every basis vector of the window.
    pub fn tabulate(&self) -> Result<BTreeMap<BasisIndex, Element<F>>> {
        self.window
            .basis(self.cfg.s)
            .into_iter()
            .map(|b| Ok((b, self.apply_basis(b)?)))
            .collect()
    }

    /// Whether both maps agree on every basis vector of the smaller window.
    pub fn agrees_with(&self, other: &AutMap<F>) -> Result<bool> {
        let w = self.window.min(other.window);
        for b in w.basis(self.cfg.s) {
            if self.apply_basis(b)? != other.apply_basis(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks that the images of the window basis, projected back onto the
    /// window, are linearly independent.
    pub fn check_bijective(&self) -> Result<()> {
        let basis = self.window.basis(self.cfg.s);
        let pos: BTreeMap<BasisIndex, usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut m = Matrix::with_cols(basis.len());
        for b in &basis {
            let img = self.apply_basis(*b)?;
            m.push_row(img.iter().filter_map(|(t, c)| pos.get(t).map(|&i| (i, c.clone()))));
        }
        let (_, pivots) = rref(&m);
        if pivots.len() == basis.len() {
            Ok(())
        } else {
            Err(Error::NotInvertibleOnWindow {
                detail: format!("rank {} of {} on window {}", pivots.len(), basis.len(), self.window.0),
            })
        }
    }
}

/// The sigma map with checked parameters.
pub fn make_sigma<F: Field>(cfg: &AlgebraConfig<F>, p: SigmaParams<F>, window: Window) -> Result<AutMap<F>> {
    p.validate(cfg.s)?;
    Ok(make_sigma_unchecked(cfg, p, window))
}

/// The sigma closed form without the parameter checks, for exhibiting what
/// goes wrong when they fail. `alpha` and `mu` must still be nonzero.
pub fn make_sigma_unchecked<F: Field>(cfg: &AlgebraConfig<F>, p: SigmaParams<F>, window: Window) -> AutMap<F> {
    AutMap {
        cfg: cfg.clone(),
        window,
        provenance: Provenance::Sigma(p),
    }
}

/// `exp(alpha ad I_k) = id + alpha ad I_k`.
pub fn make_inner_exp<F: Field>(cfg: &AlgebraConfig<F>, alpha: F, k: i64, window: Window) -> AutMap<F> {
    AutMap {
        cfg: cfg.clone(),
        window,
        provenance: Provenance::InnerExp(merge_factors([(alpha, k)])),
    }
}

fn merge_factors<F: Field>(factors: impl IntoIterator<Item = (F, i64)>) -> Vec<(F, i64)> {
    let mut acc: BTreeMap<i64, F> = BTreeMap::new();
    for (a, k) in factors {
        let e = acc.entry(k).or_insert_with(F::zero);
        *e = e.add(&a);
    }
    acc.into_iter().filter(|(_, a)| !a.is_zero()).map(|(k, a)| (a, k)).collect()
}

fn same_algebra<F: Field>(f: &AutMap<F>, g: &AutMap<F>) -> Result<()> {
    if f.cfg == g.cfg {
        Ok(())
    } else {
        Err(Error::ConstraintViolated {
            detail: "maps belong to different algebras".into(),
        })
    }
}

/// `f o g` on the smaller of the two windows. Two inner exponentials
/// combine additively since `ad I_j ad I_k = 0`.
pub fn compose<F: Field>(f: &AutMap<F>, g: &AutMap<F>) -> Result<AutMap<F>> {
    same_algebra(f, g)?;
    let window = f.window.min(g.window);
    let provenance = match (&f.provenance, &g.provenance) {
        (Provenance::InnerExp(a), Provenance::InnerExp(b)) => {
            Provenance::InnerExp(merge_factors(a.iter().chain(b).cloned()))
        }
        _ => Provenance::Composite(Box::new(f.clone()), Box::new(g.clone())),
    };
    Ok(AutMap {
        cfg: f.cfg.clone(),
        window,
        provenance,
    })
}

/// The inverse map. Closed forms are inverted symbolically; tabulated maps
/// are inverted by solving the image system on the window.
pub fn invert<F: Field>(f: &AutMap<F>) -> Result<AutMap<F>> {
    let provenance = match &f.provenance {
        Provenance::InnerExp(v) => Provenance::InnerExp(v.iter().map(|(a, k)| (a.neg(), *k)).collect()),
        Provenance::Composite(a, b) => Provenance::Composite(Box::new(invert(b)?), Box::new(invert(a)?)),
        Provenance::BlockInverse(g) => return Ok((**g).clone()),
        Provenance::Sigma(_) => {
            let inv = Provenance::BlockInverse(Box::new(f.clone()));
            let out = AutMap {
                cfg: f.cfg.clone(),
                window: f.window,
                provenance: inv,
            };
            out.tabulate()?;
            return Ok(out);
        }
        Provenance::Explicit(_) => Provenance::Explicit(invert_on_window(f)?),
    };
    Ok(AutMap {
        cfg: f.cfg.clone(),
        window: f.window,
        provenance,
    })
}

fn not_invertible(detail: String) -> Error {
    Error::NotInvertibleOnWindow { detail }
}

/// `eps` with `f(I_1)` a multiple of `I_eps`.
fn detect_epsilon<F: Field>(f: &AutMap<F>) -> Result<i64> {
    let img = f.apply_basis(BasisIndex::i(1))?;
    let mut terms = img.iter();
    match (terms.next(), terms.next()) {
        (Some((t, _)), None) if t.family == Family::I && t.index.twice().abs() == 2 => Ok(t.index.twice() / 2),
        _ => Err(not_invertible(format!("image of I[1] is {img}"))),
    }
}

/// Reads `f(src) = a * main + b * partner` with nothing else.
fn block_coeffs<F: Field>(img: &Element<F>, main: BasisIndex, partner: Option<BasisIndex>) -> Option<(F, F)> {
    let a = img.coeff(&main);
    let b = partner.map_or_else(F::zero, |p| img.coeff(&p));
    let n = usize::from(!a.is_zero()) + usize::from(!b.is_zero());
    (!a.is_zero() && img.len() == n).then_some((a, b))
}

fn block_inverse_image<F: Field>(f: &AutMap<F>, b: BasisIndex) -> Result<Element<F>> {
    let eps = detect_epsilon(f)?;
    let src = BasisIndex::new(b.family, HalfInt::from_twice(eps * b.index.twice()));
    let partner_family = match b.family {
        Family::L => Some(Family::I),
        Family::G => Some(Family::H),
        Family::I | Family::H => None,
    };
    let img = f.apply_basis(src)?;
    let (a, c) = block_coeffs(&img, b, partner_family.map(|p| b.with_family(p)))
        .ok_or_else(|| not_invertible(format!("image of {src} is {img}")))?;
    let a_inv = a.inv()?;
    let mut out = Element::term(src, a_inv.clone());
    if let Some(p) = partner_family {
        if !c.is_zero() {
            let partner_inv = block_inverse_image(f, b.with_family(p))?;
            out.add_scaled(&partner_inv, &c.mul(&a_inv).neg());
        }
    }
    Ok(out)
}

fn invert_on_window<F: Field>(f: &AutMap<F>) -> Result<BTreeMap<BasisIndex, Element<F>>> {
    let basis = f.window.basis(f.cfg.s);
    let n = basis.len();
    let pos: BTreeMap<BasisIndex, usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    // rows of [A | I] where column j of A holds f(basis_j)
    let mut rows: Vec<Vec<(usize, F)>> = (0..n).map(|r| vec![(n + r, F::one())]).collect();
    for (j, b) in basis.iter().enumerate() {
        for (t, c) in f.apply_basis(*b)?.iter() {
            let r = *pos
                .get(t)
                .ok_or_else(|| not_invertible(format!("image of {b} leaves the window at {t}")))?;
            rows[r].push((j, c.clone()));
        }
    }
    let mut m = Matrix::with_cols(2 * n);
    for r in rows {
        m.push_row(r);
    }
    let (red, pivots) = rref(&m);
    if pivots.iter().any(|&p| p >= n) {
        return Err(not_invertible(format!("images of the window {} are dependent", f.window.0)));
    }
    let mut out = BTreeMap::new();
    for (i, b) in basis.iter().enumerate() {
        let img = Element::from_terms((0..n).map(|r| (basis[r], red.get(r, n + i))));
        out.insert(*b, img);
    }
    Ok(out)
}
