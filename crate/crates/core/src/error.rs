use alloc::string::String;
use core::fmt;

/// Errors surfaced by validation and search routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A class tuple violates one of its defining conditions.
    InvalidTuple(String),
    /// A Gram matrix is not positive definite.
    NotPositiveDefinite,
    /// A coefficient matrix has determinant zero.
    Singular,
    /// The lattice is not well-rounded.
    NotWellRounded,
    /// Ambient and target classes have different types `D`.
    TypeMismatch,
    /// `D` must be squarefree.
    NotSquarefree,
    /// The zero parameter pair `(0, 0)` is excluded.
    ZeroPair,
    /// The parameter pair solves only one congruence of its branch system,
    /// so it does not correspond to a sublattice.
    NotASolution,
    /// A scalar argument is out of range.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTuple(why) => write!(f, "invalid class tuple: {why}"),
            Error::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotWellRounded => write!(f, "not well-rounded"),
            Error::TypeMismatch => write!(f, "type mismatch: classes have different D"),
            Error::NotSquarefree => write!(f, "D is not squarefree"),
            Error::ZeroPair => write!(f, "parameter pair (0, 0) is excluded"),
            Error::NotASolution => {
                write!(f, "parameter pair does not solve the congruence system")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
