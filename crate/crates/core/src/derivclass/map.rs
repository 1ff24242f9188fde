use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::superalgebra::{
    AlgebraConfig, BasisIndex, BracketViolation, Element, Family, Grade, HalfInt, Parity, Window,
};

/// A homogeneous linear map of given parity and degree, tabulated on the
/// basis vectors `b` with both `b` and `b + degree` inside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap<F: Field> {
    pub cfg: AlgebraConfig<F>,
    pub parity: Parity,
    pub degree: HalfInt,
    pub window: Window,
    images: BTreeMap<BasisIndex, Element<F>>,
}

impl<F: Field> GradedMap<F> {
    pub fn zero(cfg: &AlgebraConfig<F>, parity: Parity, degree: HalfInt, window: Window) -> Self {
        GradedMap {
            cfg: cfg.clone(),
            parity,
            degree,
            window,
            images: BTreeMap::new(),
        }
    }

    /// `ad x` for `x` homogeneous in both parity and degree.
    pub fn ad(cfg: &AlgebraConfig<F>, x: &Element<F>, window: Window) -> Result<Self> {
        cfg.validate_element(x)?;
        let parity = match x.parity() {
            Grade::Homogeneous(p) => p,
            Grade::Zero => Parity::Even,
            Grade::Mixed => return Err(Error::ParityError { element: x.to_string() }),
        };
        let degree = match x.degree() {
            Grade::Homogeneous(d) => d,
            Grade::Zero => HalfInt::ZERO,
            Grade::Mixed => return Err(Error::DegreeError { element: x.to_string() }),
        };
        let mut map = Self::zero(cfg, parity, degree, window);
        for b in map.domain() {
            let img = cfg.bracket_unchecked(x, &Element::basis(b));
            map.set_image(b, img);
        }
        Ok(map)
    }

    /// Whether the map is tabulated at `b`.
    pub fn in_domain(&self, b: BasisIndex) -> bool {
        b.is_valid_for(self.cfg.s) && self.window.contains(b.index) && self.window.contains(b.index + self.degree)
    }

    /// Tabulated sources in canonical order.
    pub fn domain(&self) -> Vec<BasisIndex> {
        self.window
            .basis(self.cfg.s)
            .into_iter()
            .filter(|b| self.window.contains(b.index + self.degree))
            .collect()
    }

    pub fn set_image(&mut self, b: BasisIndex, img: Element<F>) {
        debug_assert!(self.in_domain(b));
        if img.is_zero() {
            self.images.remove(&b);
        } else {
            self.images.insert(b, img);
        }
    }

    /// The image of `b`, or `None` outside the tabulated domain.
    pub fn image(&self, b: BasisIndex) -> Option<Element<F>> {
        if !self.in_domain(b) {
            return None;
        }
        Some(self.images.get(&b).cloned().unwrap_or_else(Element::zero))
    }

    /// Linear extension; `None` if any term leaves the domain.
    pub fn apply(&self, x: &Element<F>) -> Option<Element<F>> {
        let mut out = Element::zero();
        for (b, c) in x.iter() {
            out.add_scaled(&self.image(*b)?, c);
        }
        Some(out)
    }

    /// Nonzero images in canonical source order.
    pub fn images(&self) -> impl Iterator<Item = (&BasisIndex, &Element<F>)> {
        self.images.iter()
    }
}

/// The four tabulated outer derivations of degree 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Which {
    D1,
    D2,
    D3,
    D4,
}

impl Which {
    pub const ALL: [Which; 4] = [Which::D1, Which::D2, Which::D3, Which::D4];

    /// The pair of outer derivations that exist for the given `s`.
    pub fn for_s(s: HalfInt) -> [Which; 2] {
        if s.is_integer() {
            [Which::D1, Which::D2]
        } else {
            [Which::D3, Which::D4]
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Which::D1 => "d1",
            Which::D2 => "d2",
            Which::D3 => "d3",
            Which::D4 => "d4",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Which::ALL
            .into_iter()
            .find(|w| w.label() == s.trim())
            .ok_or_else(|| Error::parse(0, format!("unknown outer derivation {s:?}")))
    }
}

/// The tabulated outer derivation on the window.
///
/// `d1`/`d3` scale `I`, `G`, `H` by 2, 1, 3 and kill `L`; `d2`/`d4` send
/// `G_p` to `H_p` and kill everything else.
pub fn canonical_outer<F: Field>(cfg: &AlgebraConfig<F>, which: Which, window: Window) -> Result<GradedMap<F>> {
    if !Which::for_s(cfg.s).contains(&which) {
        return Err(Error::InvalidForS {
            which: which.to_string(),
            s: cfg.s.to_string(),
        });
    }
    let mut map = GradedMap::zero(cfg, Parity::Even, HalfInt::ZERO, window);
    for b in map.domain() {
        let img = match (which, b.family) {
            (Which::D1 | Which::D3, Family::L) => Element::zero(),
            (Which::D1 | Which::D3, Family::I) => Element::term(b, F::from_int(2)),
            (Which::D1 | Which::D3, Family::G) => Element::basis(b),
            (Which::D1 | Which::D3, Family::H) => Element::term(b, F::from_int(3)),
            (Which::D2 | Which::D4, Family::G) => Element::basis(b.with_family(Family::H)),
            (Which::D2 | Which::D4, _) => Element::zero(),
        };
        map.set_image(b, img);
    }
    Ok(map)
}

/// Checks `d([x,y]) = [d(x),y] + (-1)^{|d||x|}[x,d(y)]` on every unordered
/// basis pair `x <= y` of the window for which `x`, `y` and `[x,y]` lie in
/// the map's domain.
pub fn verify_leibniz<F: Field>(
    cfg: &AlgebraConfig<F>,
    d: &GradedMap<F>,
    window: Window,
) -> Vec<BracketViolation<F>> {
    let basis: Vec<BasisIndex> = window.basis(cfg.s).into_iter().filter(|b| d.in_domain(*b)).collect();
    let pairs: Vec<(BasisIndex, BasisIndex)> = basis
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| basis[i..].iter().map(move |&y| (x, y)))
        .filter(|(x, y)| {
            let z = x.index + y.index;
            window.contains(z) && window.contains(z + d.degree)
        })
        .collect();
    pairs
        .par_iter()
        .filter_map(|&(x, y)| {
            let (ex, ey) = (Element::basis(x), Element::basis(y));
            let lhs = d.apply(&cfg.bracket_unchecked(&ex, &ey))?;
            let dx = d.image(x)?;
            let dy = d.image(y)?;
            let sign = F::from_int(d.parity.sign(x.parity()));
            let mut rhs = cfg.bracket_unchecked(&dx, &ey);
            rhs.add_scaled(&cfg.bracket_unchecked(&ex, &dy), &sign);
            (lhs != rhs).then_some(BracketViolation { x, y, lhs, rhs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{RatFunc, Rational, ScalarMode};

    fn sym(s: HalfInt) -> AlgebraConfig<RatFunc> {
        AlgebraConfig::new(s, ScalarMode::Symbolic).unwrap()
    }

    fn at(s: HalfInt, l: i64) -> AlgebraConfig<Rational> {
        AlgebraConfig::new(s, ScalarMode::Specialized(Rational::from_int(l))).unwrap()
    }

    #[test]
    fn canonical_tables() {
        let c0 = sym(HalfInt::ZERO);
        let d1 = canonical_outer(&c0, Which::D1, Window(2)).unwrap();
        assert!(d1.image(BasisIndex::l(1)).unwrap().is_zero());
        assert_eq!(d1.image(BasisIndex::i(-2)).unwrap().to_string(), "2*I[-2]");
        assert_eq!(d1.image(BasisIndex::g(2)).unwrap().to_string(), "G[1]");
        assert_eq!(d1.image(BasisIndex::h(0)).unwrap().to_string(), "3*H[0]");
        assert!(d1.image(BasisIndex::l(3)).is_none());

        let d2 = canonical_outer(&c0, Which::D2, Window(2)).unwrap();
        let nonzero: Vec<String> = d2.images().map(|(b, e)| format!("{b}->{e}")).collect();
        assert_eq!(nonzero, ["G[-2]->H[-2]", "G[-1]->H[-1]", "G[0]->H[0]", "G[1]->H[1]", "G[2]->H[2]"]);

        let c1 = sym(HalfInt::HALF);
        let d4 = canonical_outer(&c1, Which::D4, Window(1)).unwrap();
        assert_eq!(d4.image(BasisIndex::g(-1)).unwrap().to_string(), "H[-1/2]");
    }

    #[test]
    fn wrong_s_is_rejected() {
        assert!(matches!(
            canonical_outer(&sym(HalfInt::ZERO), Which::D3, Window(2)),
            Err(Error::InvalidForS { .. })
        ));
        assert!(matches!(
            canonical_outer(&sym(HalfInt::HALF), Which::D2, Window(2)),
            Err(Error::InvalidForS { .. })
        ));
    }

    #[test]
    fn outer_derivations_in_their_regimes() {
        let c0 = sym(HalfInt::ZERO);
        assert!(verify_leibniz(&c0, &canonical_outer(&c0, Which::D2, Window(3)).unwrap(), Window(3)).is_empty());
        let c1 = sym(HalfInt::HALF);
        assert!(verify_leibniz(&c1, &canonical_outer(&c1, Which::D4, Window(3)).unwrap(), Window(3)).is_empty());
        for s in [HalfInt::ZERO, HalfInt::HALF] {
            let c = at(s, 0);
            for w in Which::for_s(s) {
                assert!(verify_leibniz(&c, &canonical_outer(&c, w, Window(3)).unwrap(), Window(3)).is_empty());
            }
        }
    }

    #[test]
    fn d1_fails_at_lambda_one_on_l_g() {
        let c = at(HalfInt::ZERO, 1);
        let d1 = canonical_outer(&c, Which::D1, Window(3)).unwrap();
        let v = verify_leibniz(&c, &d1, Window(3));
        assert!(!v.is_empty());
        assert!(v.iter().all(|v| v.x.family == Family::L && v.y.family == Family::G));
        // (L_1, G_0): lhs has 3 l (m+1) = 6 on H_1, rhs has l (m+1) = 2
        let hit = v.iter().find(|v| v.x == BasisIndex::l(1) && v.y == BasisIndex::g(0)).unwrap();
        assert_eq!(hit.lhs.coeff(&BasisIndex::h(2)), Rational::from_int(6));
        assert_eq!(hit.rhs.coeff(&BasisIndex::h(2)), Rational::from_int(2));
    }

    #[test]
    fn inner_derivations_pass() {
        for s in [HalfInt::ZERO, HalfInt::HALF] {
            let c = sym(s);
            let samples = if s.is_integer() {
                ["L[1] + 2*I[1]", "l*G[-1] - H[-1]", "I[0]", "G[2]"]
            } else {
                ["L[1] + 2*I[1]", "l*G[-1/2] - H[-1/2]", "I[0]", "G[3/2]"]
            };
            for x in samples {
                let x = Element::parse(x, s, &c.lambda).unwrap();
                let d = GradedMap::ad(&c, &x, Window(3)).unwrap();
                assert!(verify_leibniz(&c, &d, Window(3)).is_empty(), "ad {x}");
            }
        }
    }

    #[test]
    fn ad_needs_homogeneous_input() {
        let c = sym(HalfInt::ZERO);
        let mixed = Element::parse("L[0] + G[0]", c.s, &c.lambda).unwrap();
        assert!(matches!(GradedMap::ad(&c, &mixed, Window(2)), Err(Error::ParityError { .. })));
        let spread = Element::parse("L[0] + L[1]", c.s, &c.lambda).unwrap();
        assert!(matches!(GradedMap::ad(&c, &spread, Window(2)), Err(Error::DegreeError { .. })));
    }
}
