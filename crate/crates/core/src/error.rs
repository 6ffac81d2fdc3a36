use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("zero equation")]
    ZeroEquation,

    #[error("regularization failed for variable x{var}")]
    RegularizationFailed { var: usize },

    #[error("numeric coefficients with mixed precisions ({0} and {1} bits)")]
    PrecisionMismatch(u32, u32),

    #[error("constant in eliminated variable x{var}")]
    ConstantInEliminatedVariable { var: usize },

    #[error("degenerate edge {{{},{}}} at level {level}", edge.0, edge.1)]
    DegenerateEdge { level: usize, edge: (usize, usize) },

    #[error("not regular in x: f(0, x) vanishes identically")]
    NotRegular,

    #[error("truncation underflow: coefficient data needed to order {required}")]
    TruncationUnderflow { required: Rational64 },

    #[error("truncation ceiling: jet cannot be extended past order {available}")]
    TruncationCeiling { available: Rational64 },

    #[error("extend jet and retry: simplicity undecidable below order {required}")]
    ExtendJet { required: Rational64 },

    #[error("characteristic roots not separated at working precision (distance {distance:e})")]
    RootSeparation { distance: f64 },

    #[error("branch is not simple")]
    NotSimple,

    #[error("verification failed: equation {equation} has residual valuation {valuation} <= {order}")]
    VerificationFailed {
        equation: usize,
        valuation: Rational64,
        order: Rational64,
    },

    #[error("tree size {0} outside the supported range 2..=8")]
    TreeSize(usize),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("component {component} has fewer than its defining number of terms; extend first")]
    ExtendFirst { component: usize },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
