use super::{BasisIndex, Element, Family, Grade, HalfInt};
use crate::error::{Error, Result};
use crate::exactnum::{Field, LambdaField, Rational, ScalarMode};

/// Which algebra we are in: the shift `s` of the odd indices and the value
/// of the deformation parameter in the scalar field `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraConfig<F> {
    pub s: HalfInt,
    pub lambda: F,
    pub mode: ScalarMode,
}

impl<F: LambdaField> AlgebraConfig<F> {
    /// `s` must be 0 or 1/2. Symbolic mode needs a rational-function field.
    pub fn new(s: HalfInt, mode: ScalarMode) -> Result<Self> {
        if s != HalfInt::ZERO && s != HalfInt::HALF {
            return Err(Error::InvalidIndex {
                index: format!("s = {s}"),
                s: s.to_string(),
            });
        }
        let lambda = F::lambda(&mode).ok_or_else(|| Error::parse(0, "symbolic l needs Q(l) scalars"))?;
        Ok(AlgebraConfig { s, lambda, mode })
    }
}

impl<F: Field> AlgebraConfig<F> {
    pub fn validate(&self, b: BasisIndex) -> Result<()> {
        if b.is_valid_for(self.s) {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                index: b.to_string(),
                s: self.s.to_string(),
            })
        }
    }

    pub fn validate_element(&self, x: &Element<F>) -> Result<()> {
        x.iter().try_for_each(|(b, _)| self.validate(*b))
    }

    /// `[a, b]` for basis vectors, without index validation.
    ///
    /// Canonical ordered pairs use the structure constants directly; the
    /// reversed pairs follow from super skew-symmetry and every other pair
    /// brackets to zero.
    pub fn bracket_terms(&self, a: BasisIndex, b: BasisIndex) -> Vec<(BasisIndex, F)> {
        if let Some(t) = self.canonical_bracket(a, b) {
            return t;
        }
        match self.canonical_bracket(b, a) {
            Some(t) => {
                let sign = -a.parity().sign(b.parity());
                t.into_iter().map(|(x, c)| (x, c.scale_int(sign))).collect()
            }
            None => Vec::new(),
        }
    }

    fn canonical_bracket(&self, a: BasisIndex, b: BasisIndex) -> Option<Vec<(BasisIndex, F)>> {
        use Family::*;
        let m = a.index;
        let n = b.index;
        let sum = m + n;
        let rat = |twice_num: i64, den: i64| F::from_rational(&Rational::new(twice_num, den).expect("nonzero"));
        let mut out = Vec::with_capacity(2);
        let mut push = |x: BasisIndex, c: F| {
            if !c.is_zero() {
                out.push((x, c));
            }
        };
        match (a.family, b.family) {
            // [L_m, L_n] = (m - n) L_{m+n}
            (L, L) => push(BasisIndex::new(L, sum), rat((m - n).twice(), 2)),
            // [L_m, I_n] = (m - n) I_{m+n}
            (L, I) => push(BasisIndex::new(I, sum), rat((m - n).twice(), 2)),
            // [L_m, H_p] = (m/2 - p) H_{m+p}
            (L, H) => push(BasisIndex::new(H, sum), rat(m.twice() - 2 * n.twice(), 4)),
            // [L_m, G_p] = (m/2 - p) G_{m+p} + l (m + 1) H_{m+p}
            (L, G) => {
                push(BasisIndex::new(G, sum), rat(m.twice() - 2 * n.twice(), 4));
                push(
                    BasisIndex::new(H, sum),
                    self.lambda.mul(&rat(m.twice() + 2, 2)),
                );
            }
            // [I_m, G_p] = (m - 2p) H_{m+p}
            (I, G) => push(BasisIndex::new(H, sum), rat(m.twice() - 2 * n.twice(), 2)),
            // [G_p, G_q] = I_{p+q}
            (G, G) => push(BasisIndex::new(I, sum), F::one()),
            _ => return None,
        }
        Some(out)
    }

    /// `[a, b]` for basis vectors.
    pub fn bracket_basis(&self, a: BasisIndex, b: BasisIndex) -> Result<Element<F>> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(Element::from_terms(self.bracket_terms(a, b)))
    }

    /// Bilinear extension of the basis bracket.
    pub fn bracket(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.validate_element(x)?;
        self.validate_element(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let c = ca.mul(cb);
                for (t, ct) in self.bracket_terms(*a, *b) {
                    out.add_term(t, ct.mul(&c));
                }
            }
        }
        out
    }

    /// `ad x (y) = [x, y]` for parity-homogeneous `x`.
    pub fn ad_apply(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        if x.parity() == Grade::Mixed {
            return Err(Error::ParityError {
                element: x.to_string(),
            });
        }
        self.bracket(x, y)
    }
}
