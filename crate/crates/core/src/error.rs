use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at l = {at}")]
    PoleAtSpecialization { at: String },

    #[error("invalid basis index {index} for s = {s}")]
    InvalidIndex { index: String, s: String },

    #[error("element is not homogeneous in parity: {element}")]
    ParityError { element: String },

    #[error("element is not homogeneous in degree: {element}")]
    DegreeError { element: String },

    #[error("interior {interior} too large for window {window} (need interior <= window - {margin})")]
    InteriorTooLarge {
        window: u32,
        interior: u32,
        margin: u32,
    },

    #[error("outer derivation {which} is not defined for s = {s}")]
    InvalidForS { which: String, s: String },

    #[error("subspace is not contained in the ambient span")]
    SubspaceNotContained,

    #[error("vector length {found} does not match expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("sigma parameters violate x^2 = alpha^(2s) mu^3: {detail}")]
    ConstraintViolated { detail: String },

    #[error("parameter {name} must be nonzero")]
    ZeroParameter { name: &'static str },

    #[error("map is not invertible on the window: {detail}")]
    NotInvertibleOnWindow { detail: String },

    #[error("map is not in the inner exponential subgroup: image of {source_index} is {image}")]
    NotInJ { source_index: String, image: String },

    #[error("{basis} lies outside the window of an explicitly tabulated map")]
    OutsideWindow { basis: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
