use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("invalid invariant factors {factors:?} over Z/{modulus}: {reason}")]
    BadModule {
        factors: Vec<u64>,
        modulus: u64,
        reason: String,
    },

    #[error("ring mismatch: Z/{0} vs Z/{1}")]
    RingMismatch(u64, u64),

    #[error("matrix is {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },

    #[error("entry ({row}, {col}) = {value} is not well defined: {source_order} * {value} != 0 mod {target_order}")]
    IllDefinedEntry {
        row: usize,
        col: usize,
        value: i128,
        source_order: u64,
        target_order: u64,
    },

    #[error("morphisms do not compose: {0}")]
    Compose(String),

    #[error("differential squares to a nonzero map at degree {degree}")]
    NotAComplex { degree: i64 },

    #[error("not a chain map: square at degree {degree} does not commute")]
    NotAChainMap { degree: i64 },

    #[error("enumeration cap exceeded: {size} elements > cap {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("class closure violated: {0}")]
    NotClosed(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("construction failed at degree {degree}: {reason}")]
    Construction { degree: i64, reason: String },

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
