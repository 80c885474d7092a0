use thiserror::Error;

/// Errors produced by the library.
///
/// Variants fall into three families that the CLI maps onto distinct exit
/// codes: invalid input ([`Error::is_input_error`]), resource caps
/// ([`Error::is_resource_cap`]) and everything else.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("incompatible variable counts: {0} and {1}")]
    IncompatibleVariableCount(usize, usize),

    #[error("variable count {m} out of range (must be at most {max})")]
    VariableCountOutOfRange { m: usize, max: usize },

    #[error("variable index {index} out of range for m = {m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("cannot parse monomial {0:?}")]
    MonomialParse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("interval is empty: {lower} is not below {upper}")]
    EmptyInterval { lower: String, upper: String },

    #[error("gaussian binomial requires 0 <= r <= m (got m = {m}, r = {r})")]
    GaussianBinomialRange { m: i64, r: i64 },

    #[error("duality formula requires decreasing I")]
    NotDecreasing,

    #[error("code has no monomials")]
    EmptyCode,

    #[error("no nonzero codeword")]
    NoNonzeroCodeword,

    #[error("condition requires rate <= 1/2 (|I| = {size}, 2^(m-1) = {half})")]
    RateAboveHalf { size: usize, half: usize },

    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("dimension k = {k} out of range [0, {n}]")]
    DimensionOutOfRange { k: usize, n: usize },

    #[error("sample count must be at least 1")]
    InvalidSampleCount,

    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub fn is_input_error(&self) -> bool {
        !self.is_resource_cap()
    }

    pub(crate) fn cap(what: &'static str, value: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::CapExceeded {
            what,
            value: value.into(),
            cap: cap.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
