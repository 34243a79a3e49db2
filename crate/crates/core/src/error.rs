use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("sides do not cover the ground set: {missing} element(s) uncovered")]
    CoverViolation { missing: u32 },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("ground set of size {0} is larger than the supported maximum of 128")]
    TooLarge(usize),

    #[error("duplicate label `{0}` in ground set")]
    DuplicateLabel(String),

    #[error("label `{0}` appears on both sides of the graph")]
    LabelClash(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("separation or mask does not live on the expected ground set ({0})")]
    SideMismatch(&'static str),

    #[error("separation is not a partition (sides overlap)")]
    NotAPartition,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("separation system contains the inverse pair at positions {0} and {1}")]
    InversePairPresent(usize, usize),

    #[error("no shift is defined from {from} to {to}")]
    UnsupportedShift {
        from: &'static str,
        to: &'static str,
    },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
