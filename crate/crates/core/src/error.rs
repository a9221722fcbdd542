use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A series or iteration hit its term budget before meeting its tolerance.
    NonConvergence { what: &'static str, terms: usize },
    /// An argument lies outside the domain of a function.
    Domain { what: &'static str, value: f64 },
    /// A mode index is out of range.
    Index { index: usize, modes: usize },
    /// Two operands live on a different number of modes.
    ModeMismatch { left: usize, right: usize },
    /// A state or operator does not fit in the truncated number basis.
    Truncation { loss: f64, tolerance: f64 },
    /// The number-basis cutoff is too small for the requested operator.
    Cutoff { needed: usize, cutoff: usize },
    /// A matrix argument violates a structural requirement.
    Shape { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonConvergence { what, terms } => {
                write!(f, "{what} did not converge within {terms} terms")
            }
            Error::Domain { what, value } => write!(f, "{what}: argument {value} out of domain"),
            Error::Index { index, modes } => {
                write!(f, "mode index {index} out of range for {modes} mode(s)")
            }
            Error::ModeMismatch { left, right } => {
                write!(f, "mode mismatch: {left} vs {right}")
            }
            Error::Truncation { loss, tolerance } => write!(
                f,
                "truncation loss {loss:e} exceeds tolerance {tolerance:e}; raise the cutoff"
            ),
            Error::Cutoff { needed, cutoff } => {
                write!(f, "cutoff {cutoff} too small, need at least {needed}")
            }
            Error::Shape { what } => write!(f, "invalid matrix: {what}"),
        }
    }
}

impl core::error::Error for Error {}
