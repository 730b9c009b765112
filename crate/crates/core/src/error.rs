use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Cartan matrix violates the basic axioms.
    InvalidCartan(String),
    /// Root closure did not terminate within the configured bound.
    NonFiniteType {
        max_positive_roots: usize,
    },
    /// Input exceeds a configured size bound.
    TooLarge(String),
    RankMismatch {
        expected: usize,
        found: usize,
    },
    DivisionByZero,
    /// A polynomial was required.
    NotPolynomial(String),
    /// Argument outside the domain of an operation.
    Domain(String),
    /// Weight does not vanish on a coroot of the parabolic subset (1-based).
    NotOrthogonal {
        simple_root: usize,
    },
    Parse(String),
    /// An identity that must hold by construction failed.
    Consistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCartan(msg) => write!(f, "invalid Cartan matrix: {msg}"),
            Error::NonFiniteType { max_positive_roots } => write!(
                f,
                "root closure exceeded {max_positive_roots} positive roots; not of finite type"
            ),
            Error::TooLarge(msg) => write!(f, "input too large: {msg}"),
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {expected}, found {found}")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NotPolynomial(what) => write!(f, "expected a polynomial, got {what}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NotOrthogonal { simple_root } => write!(
                f,
                "weight does not vanish on the coroot of simple root {simple_root} in the parabolic subset"
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Consistency(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
