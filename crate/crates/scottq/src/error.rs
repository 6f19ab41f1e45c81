//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("vertex label {label} out of range 1..={n}")]
    VertexOutOfRange { label: usize, n: usize },

    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("size limit exceeded: {0}")]
    Overflow(String),

    #[error(
        "m={m} exceeds floor(N/2)={half} for N={n}; Q_m there is fixed by Q_{partner} \
         up to an exact factor (enable the complement option to compute it anyway)",
        half = n / 2,
        partner = n - m
    )]
    MOutOfRange { n: usize, m: usize },

    #[error("no valid subset size m exists for N={0}")]
    EmptyMRange(usize),

    #[error("purity list has length {got}, expected C({n},{m}) = {want}")]
    LengthMismatch {
        n: usize,
        m: usize,
        want: u64,
        got: usize,
    },

    #[error("purity {0} is outside [0, 1] beyond tolerance")]
    PurityOutOfRange(f64),

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("amplitude vector is not normalized (L2 norm {0})")]
    NotNormalized(f64),

    #[error("the stabilizer engine needs a graph input, not a raw state")]
    EngineMismatch,

    #[error("cross-engine disagreement: {0}")]
    EngineDisagreement(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    ///
    /// 1 = input error, 2 = validity-rule rejection, 3 = cross-engine
    /// disagreement (a bug sentinel, never expected in practice).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MOutOfRange { .. } | Error::EmptyMRange(_) => 2,
            Error::EngineDisagreement(_) => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
