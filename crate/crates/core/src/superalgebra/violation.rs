use std::fmt;

use serde::{Serialize, Serializer};

use super::{BasisIndex, Element};
use crate::exactnum::Field;

/// A bracket instance `(x, y)` on which two sides of an identity disagree.
///
/// Used both for the Leibniz rule of derivations and for the homomorphism
/// property of automorphisms.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct BracketViolation<F: Field> {
    pub x: BasisIndex,
    pub y: BasisIndex,
    #[serde(serialize_with = "as_display")]
    pub lhs: Element<F>,
    #[serde(serialize_with = "as_display")]
    pub rhs: Element<F>,
}

fn as_display<T: fmt::Display, S: Serializer>(v: &T, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(v)
}

impl<F: Field> fmt::Display for BracketViolation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}): lhs = {}, rhs = {}", self.x, self.y, self.lhs, self.rhs)
    }
}

impl<F: Field> fmt::Debug for BracketViolation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
