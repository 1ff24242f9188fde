use serde::Serialize;

use super::{AlgebraConfig, BasisIndex, Element, Window};
use crate::exactnum::Field;

/// A failed axiom instance: the basis vectors involved and the nonzero
/// residual that should have vanished.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub inputs: Vec<BasisIndex>,
    pub residual: String,
}

/// `[x, y] + (-1)^{|x||y|} [y, x] = 0` for every basis pair in the window.
pub fn check_super_skew<F: Field>(cfg: &AlgebraConfig<F>, window: Window) -> Vec<AxiomViolation> {
    let basis = window.basis(cfg.s);
    let mut out = Vec::new();
    for (i, &x) in basis.iter().enumerate() {
        for &y in &basis[i..] {
            let xy = Element::from_terms(cfg.bracket_terms(x, y));
            let yx = Element::from_terms(cfg.bracket_terms(y, x));
            let sign = F::from_int(x.parity().sign(y.parity()));
            let mut r = xy;
            r.add_scaled(&yx, &sign);
            if !r.is_zero() {
                out.push(AxiomViolation {
                    axiom: "super-skew",
                    inputs: vec![x, y],
                    residual: r.to_string(),
                });
            }
        }
    }
    out
}

/// The graded Jacobi identity
/// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0`
/// over all basis triples `x <= y <= z` in the window. Given super
/// skew-symmetry the other orderings follow.
pub fn check_super_jacobi<F: Field>(cfg: &AlgebraConfig<F>, window: Window) -> Vec<AxiomViolation> {
    use rayon::prelude::*;

    let basis = window.basis(cfg.s);
    let bracket = |a: &Element<F>, b: &Element<F>| cfg.bracket_unchecked(a, b);
    let mut out: Vec<AxiomViolation> = (0..basis.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let basis = &basis;
            (i..basis.len()).flat_map(move |j| (j..basis.len()).map(move |k| (i, j, k)))
        })
        .filter_map(|(i, j, k)| {
            let (x, y, z) = (basis[i], basis[j], basis[k]);
            let (ex, ey, ez) = (Element::basis(x), Element::basis(y), Element::basis(z));
            let (px, py, pz) = (x.parity(), y.parity(), z.parity());
            let mut r = Element::zero();
            r.add_scaled(&bracket(&ex, &bracket(&ey, &ez)), &F::from_int(px.sign(pz)));
            r.add_scaled(&bracket(&ey, &bracket(&ez, &ex)), &F::from_int(py.sign(px)));
            r.add_scaled(&bracket(&ez, &bracket(&ex, &ey)), &F::from_int(pz.sign(py)));
            (!r.is_zero()).then(|| AxiomViolation {
                axiom: "super-jacobi",
                inputs: vec![x, y, z],
                residual: r.to_string(),
            })
        })
        .collect();
    out.sort_by(|a, b| a.inputs.cmp(&b.inputs));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{RatFunc, Rational, ScalarMode};
    use crate::superalgebra::HalfInt;

    #[test]
    fn axioms_hold_on_small_windows() {
        for s in [HalfInt::ZERO, HalfInt::HALF] {
            let cfg = AlgebraConfig::<RatFunc>::new(s, ScalarMode::Symbolic).unwrap();
            assert!(check_super_skew(&cfg, Window(3)).is_empty());
            assert!(check_super_jacobi(&cfg, Window(2)).is_empty());
        }
    }

    #[test]
    fn named_triples_vanish() {
        let cfg = AlgebraConfig::<RatFunc>::new(HalfInt::ZERO, ScalarMode::Symbolic).unwrap();
        let b = |a: &Element<RatFunc>, c: &Element<RatFunc>| cfg.bracket(a, c).unwrap();
        let e = Element::<RatFunc>::basis;
        // Witt triple
        let (x, y, z) = (e(BasisIndex::l(3)), e(BasisIndex::l(-1)), e(BasisIndex::l(5)));
        let j = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
        assert!(j.is_zero());
        // (L_m, G_p, G_q): signs (+1, +1, -1) from the parities
        let (x, y, z) = (e(BasisIndex::l(2)), e(BasisIndex::g(2)), e(BasisIndex::g(-4)));
        let j = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).sub(&b(&z, &b(&x, &y)));
        assert!(j.is_zero());
    }

    #[test]
    fn single_rational_mode_agrees() {
        let cfg = AlgebraConfig::<Rational>::new(HalfInt::HALF, ScalarMode::Specialized(Rational::from_int(-2))).unwrap();
        assert!(check_super_jacobi(&cfg, Window(2)).is_empty());
    }
}
