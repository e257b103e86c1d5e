use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("image array is not a bijection on {degree} points")]
    NotBijective { degree: usize },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("scale limit exceeded: {what} needs {needed}, cap is {cap}")]
    Scale { what: String, needed: String, cap: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported field GF({p}^{e})")]
    UnsupportedField { p: u32, e: u32 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("inconsistent linear system")]
    Inconsistent,

    #[error("field GF(2^{e}) too small: character order {order} needs e = {minimal_e}")]
    FieldTooSmall { e: u32, order: u64, minimal_e: u32 },

    #[error("decomposition undecided: {0}")]
    Undecided(String),

    #[error("Sylow 2-subgroup is not semidihedral of order >= 16: {0}")]
    NotSemidihedral(String),

    #[error("route disagreement: {0}")]
    RouteDisagreement(String),

    #[error("construction failed validation: {0}")]
    Validation(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn scale(what: impl Into<String>, needed: impl ToString, cap: impl ToString) -> Self {
        Error::Scale {
            what: what.into(),
            needed: needed.to_string(),
            cap: cap.to_string(),
        }
    }
}
