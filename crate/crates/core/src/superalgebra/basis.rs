use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational, Tokenizer};

/// A number in `(1/2)Z`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if integral.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.twice, 2).expect("nonzero denominator")
    }

    pub fn to_field<F: Field>(self) -> F {
        F::from_rational(&self.to_rational())
    }

    pub fn from_rational(r: &Rational) -> Option<Self> {
        let twice = r.mul(&Rational::from_int(2));
        twice.to_i64().map(HalfInt::from_twice)
    }

    /// All half-integers `lo, lo + step, ..., <= hi`; `step` must be positive.
    pub fn range(lo: HalfInt, hi: HalfInt, step: HalfInt) -> Vec<HalfInt> {
        assert!(step.twice > 0, "range step must be positive");
        let mut out = Vec::new();
        let mut x = lo;
        while x <= hi {
            out.push(x);
            x = x + step;
        }
        out
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r: Rational = s.parse()?;
        HalfInt::from_rational(&r)
            .ok_or_else(|| Error::parse(0, format!("{s:?} is not a half-integer")))
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// Z/2 grading.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// `(-1)^(self * other)`.
    pub fn sign(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            other => Err(Error::parse(0, format!("unknown parity {other:?}"))),
        }
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// Generator families, ordered `L < I < G < H`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    L,
    I,
    G,
    H,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::L, Family::I, Family::G, Family::H];

    pub fn parity(self) -> Parity {
        match self {
            Family::L | Family::I => Parity::Even,
            Family::G | Family::H => Parity::Odd,
        }
    }

    /// The two families of the given parity, in canonical order.
    pub fn of_parity(p: Parity) -> [Family; 2] {
        match p {
            Parity::Even => [Family::L, Family::I],
            Parity::Odd => [Family::G, Family::H],
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Family::L => 'L',
            Family::I => 'I',
            Family::G => 'G',
            Family::H => 'H',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Family> {
        match s {
            "L" => Some(Family::L),
            "I" => Some(Family::I),
            "G" => Some(Family::G),
            "H" => Some(Family::H),
            _ => None,
        }
    }
}

/// One basis vector: a family and a half-integer index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub family: Family,
    pub index: HalfInt,
}

impl BasisIndex {
    pub const fn new(family: Family, index: HalfInt) -> Self {
        BasisIndex { family, index }
    }

    pub const fn l(m: i64) -> Self {
        BasisIndex::new(Family::L, HalfInt::from_int(m))
    }

    pub const fn i(m: i64) -> Self {
        BasisIndex::new(Family::I, HalfInt::from_int(m))
    }

    /// `G_p` with `p = twice / 2`.
    pub const fn g(twice: i64) -> Self {
        BasisIndex::new(Family::G, HalfInt::from_twice(twice))
    }

    /// `H_p` with `p = twice / 2`.
    pub const fn h(twice: i64) -> Self {
        BasisIndex::new(Family::H, HalfInt::from_twice(twice))
    }

    pub fn parity(self) -> Parity {
        self.family.parity()
    }

    pub fn shifted(self, by: HalfInt) -> Self {
        BasisIndex::new(self.family, self.index + by)
    }

    pub fn with_family(self, family: Family) -> Self {
        BasisIndex::new(family, self.index)
    }

    /// Whether this index names a basis vector of the algebra with shift `s`.
    pub fn is_valid_for(self, s: HalfInt) -> bool {
        match self.family {
            Family::L | Family::I => self.index.is_integer(),
            Family::G | Family::H => (self.index - s).is_integer(),
        }
    }

    /// Parses `X[idx]`.
    pub fn parse(tok: &mut Tokenizer, family: Family) -> Result<Self> {
        tok.expect(&crate::exactnum::Token::LBracket)?;
        let pos = tok.position();
        let r = tok.signed_fraction()?;
        let idx = HalfInt::from_rational(&r)
            .ok_or_else(|| Error::parse(pos, format!("index {r} is not a half-integer")))?;
        tok.expect(&crate::exactnum::Token::RBracket)?;
        Ok(BasisIndex::new(family, idx))
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.family.symbol(), self.index)
    }
}

impl fmt::Debug for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BasisIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut tok = Tokenizer::new(s)?;
        let pos = tok.position();
        let fam = match tok.next_token() {
            crate::exactnum::Token::Ident(id) => Family::from_symbol(&id),
            _ => None,
        }
        .ok_or_else(|| Error::parse(pos, "expected one of L, I, G, H"))?;
        let b = BasisIndex::parse(&mut tok, fam)?;
        tok.expect_end()?;
        Ok(b)
    }
}

impl Serialize for BasisIndex {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// The symmetric index range `[-n, n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Window(pub u32);

impl Window {
    pub fn contains(self, x: HalfInt) -> bool {
        x.abs().twice() <= 2 * i64::from(self.0)
    }

    pub fn contains_basis(self, b: BasisIndex) -> bool {
        self.contains(b.index)
    }

    /// All basis vectors with index in the window, in canonical order.
    pub fn basis(self, s: HalfInt) -> Vec<BasisIndex> {
        let n = i64::from(self.0);
        let mut out = Vec::new();
        for fam in Family::ALL {
            for twice in -2 * n..=2 * n {
                let b = BasisIndex::new(fam, HalfInt::from_twice(twice));
                if b.is_valid_for(s) {
                    out.push(b);
                }
            }
        }
        out
    }
}
