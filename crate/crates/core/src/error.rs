use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6: byte {byte:#04x} at offset {offset} is outside [63, 126]")]
    Graph6InvalidByte { offset: usize, byte: u8 },
    #[error("graph6: expected {expected} bytes, found {found}")]
    Graph6Truncated { expected: usize, found: usize },
    #[error("graph6: nonzero padding bits in final byte")]
    Graph6Padding,
    #[error("graph6: empty input")]
    Graph6Empty,

    #[error("graph has {n} vertices; supported range is 1..={max}")]
    VertexCount { n: usize, max: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("enumeration needs {required} subsets, budget is {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("variance is zero; anti-concentration bound requires a positive variance")]
    ZeroVariance,

    #[error("invalid construction spec `{spec}`: {reason}")]
    Construction { spec: String, reason: String },

    #[error("records file line {line}: {reason}")]
    RecordsLine { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
