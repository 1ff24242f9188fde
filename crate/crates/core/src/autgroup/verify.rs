use rayon::prelude::*;
use serde::Serialize;

use super::map::{make_sigma_unchecked, AutMap, Provenance};
use super::sigma::{ConstraintCheck, SigmaParams};
use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::superalgebra::{AlgebraConfig, BasisIndex, BracketViolation, Element, Family, Grade, HalfInt, Window};

/// Checks `f([x,y]) = [f(x), f(y)]` for every unordered basis pair of the
/// window with `x + y` in the window, and that `f` preserves parity. A
/// parity failure at `b` is reported as the pair `(b, b)` with the image as
/// `lhs` and its correct-parity part as `rhs`.
pub fn verify_homomorphism<F: Field>(
    cfg: &AlgebraConfig<F>,
    f: &AutMap<F>,
    window: Window,
) -> Result<Vec<BracketViolation<F>>> {
    let basis = window.basis(cfg.s);
    let images: Vec<Element<F>> = basis.iter().map(|b| f.apply_basis(*b)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (b, img) in basis.iter().zip(&images) {
        if !matches!(img.parity(), Grade::Homogeneous(p) if p == b.parity()) {
            let keep = Element::from_terms(img.iter().filter(|(t, _)| t.parity() == b.parity()).map(|(t, c)| (*t, c.clone())));
            out.push(BracketViolation {
                x: *b,
                y: *b,
                lhs: img.clone(),
                rhs: keep,
            });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i..basis.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| window.contains(basis[i].index + basis[j].index))
        .collect();
    let found: Vec<Result<Option<BracketViolation<F>>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (basis[i], basis[j]);
            let lhs = f.apply(&Element::from_terms(cfg.bracket_terms(x, y)))?;
            let rhs = cfg.bracket_unchecked(&images[i], &images[j]);
            Ok((lhs != rhs).then_some(BracketViolation { x, y, lhs, rhs }))
        })
        .collect();
    for r in found {
        out.extend(r?);
    }
    out.sort_by_key(|v| (v.x, v.y));
    Ok(out)
}

/// Evaluates the defining identities of the sigma family on the map built
/// from `p`, over the indices of `window`.
///
/// With `d_X`, `c_X` the H- and G-coefficients of `sigma(X)` at the flipped
/// index: `d_{H_{k+s}} = a^k d_{H_s}`, `c_{G_p} = d_{H_p}/(mu eps)`,
/// `d_{H_s}^2 = a^{2s} mu^3`, `l(1/mu - 1) = 0`,
/// `l(2(1 - mu eps)p + eps - mu eps) = 0` for all `p`, and
/// `d_{G_{k+s}} = a^k d_{G_s} + 2k eps a^k beta c_{G_s}`.
pub fn check_sigma_constraints<F: Field>(
    cfg: &AlgebraConfig<F>,
    p: &SigmaParams<F>,
    window: Window,
) -> Result<Vec<ConstraintCheck>> {
    if p.alpha.is_zero() {
        return Err(Error::ZeroParameter { name: "alpha" });
    }
    if p.mu.is_zero() {
        return Err(Error::ZeroParameter { name: "mu" });
    }
    let s = cfg.s;
    let sigma = make_sigma_unchecked(cfg, p.clone(), window);
    let eps = F::from_int(p.epsilon);
    let flip = |b: BasisIndex| BasisIndex::new(b.family, HalfInt::from_twice(p.epsilon * b.index.twice()));
    let d_h = |q: HalfInt| -> Result<F> {
        let b = BasisIndex::new(Family::H, q);
        Ok(sigma.apply_basis(b)?.coeff(&flip(b)))
    };
    let g_coeffs = |q: HalfInt| -> Result<(F, F)> {
        let b = BasisIndex::new(Family::G, q);
        let img = sigma.apply_basis(b)?;
        Ok((img.coeff(&flip(b)), img.coeff(&flip(b).with_family(Family::H))))
    };
    let n = i64::from(window.0);
    let ks: Vec<i64> = (-n..=n).filter(|k| window.contains(HalfInt::from_int(*k) + s)).collect();
    let at = |k: i64| HalfInt::from_int(k) + s;
    let ak = |k: i64| p.alpha.pow(k).expect("alpha is nonzero");
    let mu_eps = p.mu.mul(&eps);
    let mut out = Vec::new();
    let mut record = |name: &'static str, failures: Vec<String>| {
        out.push(ConstraintCheck {
            name,
            passed: failures.is_empty(),
            detail: failures.join("; "),
        });
    };

    let d_hs = d_h(s)?;
    let mut bad = Vec::new();
    for &k in &ks {
        let lhs = d_h(at(k))?;
        let rhs = ak(k).mul(&d_hs);
        if lhs != rhs {
            bad.push(format!("k = {k}: {lhs} != {rhs}"));
        }
    }
    record("d_H(k+s) = alpha^k d_H(s)", bad);

    let mut bad = Vec::new();
    for &k in &ks {
        let (c, _) = g_coeffs(at(k))?;
        let rhs = d_h(at(k))?.div(&mu_eps)?;
        if c != rhs {
            bad.push(format!("p = {}: {c} != {rhs}", at(k)));
        }
    }
    record("c_G(p) = d_H(p) / (mu eps)", bad);

    let lhs = d_hs.mul(&d_hs);
    let rhs = p.root_target(s);
    record(
        "d_H(s)^2 = alpha^(2s) mu^3",
        if lhs == rhs { vec![] } else { vec![format!("{lhs} != {rhs}")] },
    );

    let v = cfg.lambda.mul(&p.mu.inv()?.sub(&F::one()));
    record(
        "l (1/mu - 1) = 0",
        if v.is_zero() { vec![] } else { vec![format!("value {v}")] },
    );

    let mut bad = Vec::new();
    let one_minus = F::one().sub(&mu_eps);
    for &k in &ks {
        let q: F = at(k).to_field();
        let v = cfg.lambda.mul(&F::from_int(2).mul(&one_minus).mul(&q).add(&eps).sub(&mu_eps));
        if !v.is_zero() {
            bad.push(format!("p = {}: value {v}", at(k)));
        }
    }
    record("l (2(1 - mu eps) p + eps - mu eps) = 0", bad);

    let mut bad = Vec::new();
    let (c_s, d_s) = g_coeffs(s)?;
    for &k in &ks {
        let (_, d) = g_coeffs(at(k))?;
        let rhs = ak(k)
            .mul(&d_s)
            .add(&F::from_int(2 * k).mul(&eps).mul(&ak(k)).mul(&p.beta).mul(&c_s));
        if d != rhs {
            bad.push(format!("k = {k}: {d} != {rhs}"));
        }
    }
    record("d_G(k+s) = alpha^k d_G(s) + 2k eps alpha^k beta c_G(s)", bad);
    Ok(out)
}

/// `id + sum alpha_j ad I_{k_j}` with `k_j` strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JDecomposition<F> {
    pub factors: Vec<(F, i64)>,
}

impl<F: Field> Serialize for JDecomposition<F> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(String, i64)> = self.factors.iter().map(|(a, k)| (a.to_string(), *k)).collect();
        v.serialize(ser)
    }
}

/// Fits `f = id + sum alpha_j ad I_{k_j}` from the images of `L_0` and `L_1`
/// and checks every image on the window against the fit.
pub fn decompose_into_inner_group<F: Field>(cfg: &AlgebraConfig<F>, f: &AutMap<F>) -> Result<JDecomposition<F>> {
    let not_in_j = |b: BasisIndex, img: &Element<F>| Error::NotInJ {
        source_index: b.to_string(),
        image: img.to_string(),
    };
    let basis = f.window.basis(cfg.s);
    for &b in &basis {
        let img = f.apply_basis(b)?;
        let delta = img.sub(&Element::basis(b));
        let ok = match b.family {
            Family::I | Family::H => delta.is_zero(),
            Family::L => delta.iter().all(|(t, _)| t.family == Family::I),
            Family::G => delta.iter().all(|(t, _)| t.family == Family::H),
        };
        if !ok {
            return Err(not_in_j(b, &img));
        }
    }
    // coefficient of I_{n+k} in f(L_n) - L_n is alpha_k (k - n)
    let mut factors = Vec::new();
    let l0 = f.apply_basis(BasisIndex::l(0))?.sub(&Element::basis(BasisIndex::l(0)));
    for (t, c) in l0.iter() {
        let k = t.index.as_int().expect("I index");
        if k != 0 {
            factors.push((c.div(&F::from_int(k))?, k));
        }
    }
    let l1 = f.apply_basis(BasisIndex::l(1))?;
    let a0 = l1.coeff(&BasisIndex::i(1)).neg();
    if !a0.is_zero() {
        factors.push((a0, 0));
    }
    factors.sort_by_key(|(_, k)| *k);
    let fit = AutMap {
        cfg: cfg.clone(),
        window: f.window,
        provenance: Provenance::InnerExp(factors.clone()),
    };
    for &b in &basis {
        let img = f.apply_basis(b)?;
        if img != fit.apply_basis(b)? {
            return Err(not_in_j(b, &img));
        }
    }
    Ok(JDecomposition { factors })
}

