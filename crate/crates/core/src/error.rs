use thiserror::Error;

/// Errors raised by the operators, constructors and solvers of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A form passed to `D_1`, `D_{-1}` contains `e^1` (or is a constant).
    #[error("outside domain Λ*(e²,e³,…): {0}")]
    OutsideDomain(String),

    /// An index tuple does not have the shape required by its family.
    #[error("malformed index tuple {tuple:?}: {reason}")]
    MalformedTuple { tuple: Vec<u32>, reason: String },

    /// A label is well formed but removed from the basis by an exclusion rule.
    #[error("inadmissible label {label}: {rule}")]
    Inadmissible { label: String, rule: String },

    /// The operation only exists for a specific algebra.
    #[error("operation requires algebra {expected}, got {got}")]
    WrongAlgebra { expected: &'static str, got: String },

    /// A cochain family mixes degrees or weights.
    #[error("inhomogeneous family: {0}")]
    Inhomogeneous(String),

    /// A linear system has no solution.
    #[error("inconsistent: {0}")]
    Inconsistent(String),

    /// A cocycle was required but the input is not closed.
    #[error("not closed: {0}")]
    NotClosed(String),

    /// A label string could not be parsed.
    #[error("cannot parse label {0:?}")]
    LabelParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
