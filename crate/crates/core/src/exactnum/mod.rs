//! Exact scalars: arbitrary-precision rationals and the field Q(l) of
//! rational functions in one formal parameter `l`.
//!
//! Every computation in this crate is generic over [`Field`]. Working over
//! [`RatFunc`] treats `l` as transcendental (the generic case); working over
//! [`Rational`] fixes `l` to a concrete rational value.

mod parse;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;

pub use parse::{parse_expr, parse_scalar, ExprValue, Token, Tokenizer};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::Rational;

use crate::error::Result;

/// A commutative field with exact, normalized arithmetic.
///
/// Equality is structural and agrees with mathematical equality because
/// every value is kept in normal form.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    /// The constant value, if this scalar does not depend on `l`.
    fn as_rational(&self) -> Option<Rational>;

    /// Integer power; negative exponents invert.
    fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_int(n))
    }
}

/// How the deformation parameter `l` is treated in a computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarMode {
    /// `l` is a transcendental; results describe generic `l != 0`.
    Symbolic,
    /// `l` is fixed to the given rational value.
    Specialized(Rational),
}

impl ScalarMode {
    pub fn is_zero_lambda(&self) -> bool {
        matches!(self, ScalarMode::Specialized(r) if r.is_zero())
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Symbolic => f.write_str("symbolic"),
            ScalarMode::Specialized(r) => write!(f, "{r}"),
        }
    }
}

impl std::str::FromStr for ScalarMode {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "symbolic" || t == "l" {
            Ok(ScalarMode::Symbolic)
        } else {
            Ok(ScalarMode::Specialized(t.parse()?))
        }
    }
}

/// A field that can evaluate the formal parameter `l`.
pub trait LambdaField: Field {
    /// The value of `l` in this field under `mode`. Returns `None` when the
    /// mode is incompatible with the field (a symbolic `l` in `Rational`).
    fn lambda(mode: &ScalarMode) -> Option<Self>;
}

impl LambdaField for Rational {
    fn lambda(mode: &ScalarMode) -> Option<Self> {
        match mode {
            ScalarMode::Symbolic => None,
            ScalarMode::Specialized(r) => Some(r.clone()),
        }
    }
}

impl LambdaField for RatFunc {
    fn lambda(mode: &ScalarMode) -> Option<Self> {
        match mode {
            ScalarMode::Symbolic => Some(RatFunc::var()),
            ScalarMode::Specialized(r) => Some(RatFunc::constant(r.clone())),
        }
    }
}
