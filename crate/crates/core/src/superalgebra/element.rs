use std::collections::BTreeMap;
use std::fmt;

use super::{BasisIndex, Family, HalfInt, Parity};
use crate::error::{Error, Result};
use crate::exactnum::{parse_expr, ExprValue, Field, Tokenizer};

/// Finite linear combination of basis vectors. Zero coefficients are never
/// stored and terms iterate in canonical (family, index) order.
#[derive(Clone, PartialEq, Eq)]
pub struct Element<F> {
    terms: BTreeMap<BasisIndex, F>,
}

/// Result of asking for the common grade of an element's terms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grade<T> {
    Zero,
    Homogeneous(T),
    Mixed,
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(b: BasisIndex) -> Self {
        Self::term(b, F::one())
    }

    pub fn term(b: BasisIndex, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(b, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisIndex, F)>) -> Self {
        let mut e = Self::zero();
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisIndex, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &BasisIndex) -> F {
        self.terms.get(b).cloned().unwrap_or_else(F::zero)
    }

    /// Adds `c * b` in place.
    pub fn add_term(&mut self, b: BasisIndex, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &Element<F>, c: &F) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(*b, x.mul(c));
        }
    }

    pub fn add(&self, other: &Element<F>) -> Element<F> {
        let mut out = self.clone();
        out.add_scaled(other, &F::one());
        out
    }

    pub fn sub(&self, other: &Element<F>) -> Element<F> {
        let mut out = self.clone();
        out.add_scaled(other, &F::one().neg());
        out
    }

    pub fn scale(&self, c: &F) -> Element<F> {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self.terms.iter().map(|(b, x)| (*b, x.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Element<F> {
        Element {
            terms: self.terms.iter().map(|(b, x)| (*b, x.neg())).collect(),
        }
    }

    /// Part of the element supported on the given family.
    pub fn family_part(&self, fam: Family) -> Element<F> {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.family == fam)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    pub fn parity(&self) -> Grade<Parity> {
        grade_of(self.terms.keys().map(|b| b.parity()))
    }

    pub fn degree(&self) -> Grade<HalfInt> {
        grade_of(self.terms.keys().map(|b| b.index))
    }

    /// Parses the element grammar, substituting `lambda` for `l`.
    ///
    /// Indices are checked against `s`.
    pub fn parse(input: &str, s: HalfInt, lambda: &F) -> Result<Self> {
        let mut tok = Tokenizer::new(input)?;
        let atom = |id: &str, pos: usize, tok: &mut Tokenizer| -> Result<Parsed<F>> {
            let fam = Family::from_symbol(id)
                .ok_or_else(|| Error::parse(pos, format!("unknown generator {id:?}")))?;
            let b = BasisIndex::parse(tok, fam)?;
            if !b.is_valid_for(s) {
                return Err(Error::InvalidIndex {
                    index: b.to_string(),
                    s: s.to_string(),
                });
            }
            Ok(Parsed::Vector(Element::basis(b)))
        };
        let v: Parsed<F> = parse_expr(&mut tok, lambda, &atom)?;
        tok.expect_end()?;
        match v {
            Parsed::Vector(e) => Ok(e),
            Parsed::Scalar(c) if c.is_zero() => Ok(Element::zero()),
            Parsed::Scalar(_) => Err(Error::parse(0, "expected an element, found a nonzero scalar")),
        }
    }
}

fn grade_of<T: PartialEq>(mut it: impl Iterator<Item = T>) -> Grade<T> {
    match it.next() {
        None => Grade::Zero,
        Some(first) => {
            if it.all(|x| x == first) {
                Grade::Homogeneous(first)
            } else {
                Grade::Mixed
            }
        }
    }
}

impl<F: Field> Default for Element<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> fmt::Display for Element<F> {
    /// `3/2*L[-1] + (l+1)*H[1/2]`; unit coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{c}*{b}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

enum Parsed<F> {
    Scalar(F),
    Vector(Element<F>),
}

impl<F: Field> ExprValue<F> for Parsed<F> {
    fn scalar(c: F) -> Self {
        Parsed::Scalar(c)
    }

    fn expr_add(self, rhs: Self, pos: usize) -> Result<Self> {
        match (self, rhs) {
            (Parsed::Scalar(a), Parsed::Scalar(b)) => Ok(Parsed::Scalar(a.add(&b))),
            (Parsed::Vector(a), Parsed::Vector(b)) => Ok(Parsed::Vector(a.add(&b))),
            (Parsed::Vector(v), Parsed::Scalar(c)) | (Parsed::Scalar(c), Parsed::Vector(v))
                if c.is_zero() =>
            {
                Ok(Parsed::Vector(v))
            }
            _ => Err(Error::parse(pos, "cannot add a scalar to an element")),
        }
    }

    fn expr_mul(self, rhs: Self, pos: usize) -> Result<Self> {
        match (self, rhs) {
            (Parsed::Scalar(a), Parsed::Scalar(b)) => Ok(Parsed::Scalar(a.mul(&b))),
            (Parsed::Scalar(c), Parsed::Vector(v)) | (Parsed::Vector(v), Parsed::Scalar(c)) => {
                Ok(Parsed::Vector(v.scale(&c)))
            }
            _ => Err(Error::parse(pos, "cannot multiply two elements; use a bracket")),
        }
    }

    fn expr_div(self, rhs: Self, pos: usize) -> Result<Self> {
        let Parsed::Scalar(d) = rhs else {
            return Err(Error::parse(pos, "cannot divide by an element"));
        };
        let inv = d.inv().map_err(|_| Error::parse(pos, "division by zero"))?;
        Ok(match self {
            Parsed::Scalar(a) => Parsed::Scalar(a.mul(&inv)),
            Parsed::Vector(v) => Parsed::Vector(v.scale(&inv)),
        })
    }

    fn expr_neg(self) -> Self {
        match self {
            Parsed::Scalar(a) => Parsed::Scalar(a.neg()),
            Parsed::Vector(v) => Parsed::Vector(v.neg()),
        }
    }

    fn expr_pow(self, exp: i64, pos: usize) -> Result<Self> {
        match self {
            Parsed::Scalar(a) => a
                .pow(exp)
                .map(Parsed::Scalar)
                .map_err(|_| Error::parse(pos, "zero to a negative power")),
            Parsed::Vector(_) => Err(Error::parse(pos, "cannot raise an element to a power")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{RatFunc, Rational};

    fn parse(s: &str) -> Element<RatFunc> {
        Element::parse(s, HalfInt::HALF, &RatFunc::var()).unwrap()
    }

    #[test]
    fn grammar_example_roundtrips() {
        let e = parse("3/2*L[-1] + (l+1)*H[1/2]");
        assert_eq!(e.to_string(), "3/2*L[-1] + (l+1)*H[1/2]");
        assert_eq!(parse(&e.to_string()), e);
    }

    #[test]
    fn canonical_order_and_cancellation() {
        let e = parse("H[1/2] - 2*I[2] + L[2] + I[2] + I[2]");
        assert_eq!(e.to_string(), "L[2] + H[1/2]");
        let z = parse("L[1] - L[1]");
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
        assert_eq!(parse("0"), Element::zero());
        assert_eq!(parse("L[2] + -2*I[2]").to_string(), "L[2] + -2*I[2]");
        assert_eq!(parse("-L[0]").to_string(), "-1*L[0]");
    }

    #[test]
    fn rejects_invalid_input() {
        let l = RatFunc::var();
        assert!(matches!(
            Element::parse("G[0]", HalfInt::HALF, &l),
            Err(Error::InvalidIndex { .. })
        ));
        assert!(matches!(
            Element::parse("L[1/2]", HalfInt::ZERO, &l),
            Err(Error::InvalidIndex { .. })
        ));
        assert!(Element::parse("L[1]*L[2]", HalfInt::ZERO, &l).is_err());
        assert!(Element::parse("2", HalfInt::ZERO, &l).is_err());
        assert!(Element::parse("L[1] +", HalfInt::ZERO, &l).is_err());
        assert!(Element::parse("Q[1]", HalfInt::ZERO, &l).is_err());
    }

    #[test]
    fn grades() {
        let e = Element::<Rational>::from_terms([(BasisIndex::l(3), Rational::one())]);
        assert_eq!(e.parity(), Grade::Homogeneous(Parity::Even));
        assert_eq!(e.degree(), Grade::Homogeneous(HalfInt::from_int(3)));
        let gh = parse("G[1/2] + H[1/2]");
        assert_eq!(gh.parity(), Grade::Homogeneous(Parity::Odd));
        assert_eq!(gh.degree(), Grade::Homogeneous(HalfInt::HALF));
        let mixed = Element::<RatFunc>::parse("L[0] + G[0]", HalfInt::ZERO, &RatFunc::var()).unwrap();
        assert_eq!(mixed.parity(), Grade::Mixed);
        assert_eq!(Element::<Rational>::zero().parity(), Grade::Zero);
    }
}
