use thiserror::Error;

use crate::laurent::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot evaluate a polynomial with negative powers at zero")]
    ZeroArgument,
    #[error("polynomial is not divisible by 1 + z (remainder {remainder})")]
    NotDivisible { remainder: Rational },
    #[error("mask has no nonzero coefficient")]
    EmptyMask,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
