use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "divergent: simple-pole residues sum to {residue_sum} for (r1, r2, r3, s) = {params:?}"
    )]
    Divergent {
        params: (u32, u32, u32, u32),
        residue_sum: String,
    },

    #[error("precision budget exceeded: {requested} digits requested, budget is {budget}")]
    PrecisionBudget { requested: u32, budget: u32 },

    #[error("singular system: diagonal coefficient of row for I_{order} is zero")]
    SingularSystem { order: u32 },

    #[error("polynomial degrees differ: {0:?}")]
    DegreeMismatch(Vec<usize>),

    #[error("order {order} is below the minimum {min}")]
    OrderTooSmall { order: u32, min: u32 },

    #[error("empty coefficient list")]
    EmptyCoefficients,

    #[error("index {index} out of range for coefficient list of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
