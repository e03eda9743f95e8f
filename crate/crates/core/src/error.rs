use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("invalid cyclotomic order {0}")]
    InvalidOrder(u32),
    #[error("field of order {order} has degree {degree}, above the supported limit of 64")]
    FieldTooLarge { order: u32, degree: usize },
    #[error("invalid group order {0}: cyclic Gamma needs ell >= 2")]
    InvalidGroup(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("lambda . delta = 0: the classification needs a nonzero regular trace")]
    DegenerateLambda,
    #[error("imaginary root {0:?} has no rank-one simple module")]
    ImaginaryRoot(Vec<i64>),
    #[error("classification error: {0}")]
    NotInSigma(String),
    #[error("singular system: {0}")]
    SingularSystem(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("hypothesis violated: W_{block} = {partition:?} is not a rectangle")]
    NonRectangular { block: usize, partition: Vec<usize> },
    #[error("hypothesis violated: roots of blocks {0} and {1} coincide")]
    RepeatedRoots(usize, usize),
    #[error("hypothesis violated: Ext^1(Y_{i}, Y_{j}) has dimension {dim}, expected 0")]
    NonzeroExt { i: usize, j: usize, dim: usize },
    #[error("module dimension {dim} exceeds the limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("continuation failed: {0}")]
    Divergence(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::DivisionByZero => "division_by_zero",
            Error::OrderMismatch(..) => "order_mismatch",
            Error::InvalidOrder(_) => "invalid_order",
            Error::FieldTooLarge { .. } => "field_too_large",
            Error::InvalidGroup(_) => "invalid_group",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Consistency(_) => "consistency",
            Error::DegenerateLambda => "degenerate_lambda",
            Error::ImaginaryRoot(_) => "imaginary_root",
            Error::NotInSigma(_) => "not_in_sigma",
            Error::SingularSystem(_) => "singular_system",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::NonRectangular { .. } => "non_rectangular",
            Error::RepeatedRoots(..) => "repeated_roots",
            Error::NonzeroExt { .. } => "nonzero_ext",
            Error::TooLarge { .. } => "too_large",
            Error::Precondition(_) => "precondition",
            Error::Divergence(_) => "divergence",
            Error::Invalid(_) => "invalid",
        }
    }
}
