use thiserror::Error;

/// Errors raised by the algebra, the jet oracle and the kernel evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {0} out of range (1..=15)")]
    UnsupportedDimension(usize),
    #[error("paravector has zero norm")]
    ZeroNorm,
    #[error("jet constant term is not invertible")]
    NonInvertibleConstantTerm,
    #[error("jet shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    JetShapeMismatch(usize, usize, usize, usize),
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("derivative of order {requested} exceeds jet order {order}")]
    OrderExceeded { requested: usize, order: usize },
    #[error("singular: s in [x]")]
    SingularKernel,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("point outside the domain: {0}")]
    OutsideDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
