use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands are defined over different domains")]
    DomainMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("level {level} out of range for variable `{var}` with d = {d}")]
    LevelOutOfRange { var: String, level: usize, d: usize },
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("operator is not a 0/1-valued diagonal: {0}")]
    NotBoolean(String),
    #[error("supports overlap on variable `{0}`")]
    OverlappingSupport(String),
    #[error("operator is not Hermitian (max deviation {0:e})")]
    NonHermitian(f64),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("variable `{0}` has no encoding assigned")]
    Unassigned(String),
    #[error("bit pattern {0} is not a valid codeword")]
    InvalidCodeword(String),
    #[error("invalid encoding: {0}")]
    InvalidEncoding(String),
    #[error("row support of {support} variables exceeds cap {cap}")]
    SupportCap { support: usize, cap: usize },
    #[error("dimension {dim} exceeds dense cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("gate library insufficient: best candidate has {best_components} components")]
    LibraryInsufficient { best_components: usize },
    #[error("initial state is not feasible (projection error {0:e})")]
    InfeasibleState(f64),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("invalid penalty: {0}")]
    InvalidPenalty(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag, used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DomainMismatch => "domain_mismatch",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::DuplicateVariable(_) => "duplicate_variable",
            Error::LevelOutOfRange { .. } => "level_out_of_range",
            Error::InvalidFactor(_) => "invalid_factor",
            Error::NotBoolean(_) => "not_boolean",
            Error::OverlappingSupport(_) => "overlapping_support",
            Error::NonHermitian(_) => "non_hermitian",
            Error::InvalidInstance(_) => "invalid_instance",
            Error::Unassigned(_) => "unassigned_variable",
            Error::InvalidCodeword(_) => "invalid_codeword",
            Error::InvalidEncoding(_) => "invalid_encoding",
            Error::SupportCap { .. } => "support_cap",
            Error::DimensionCap { .. } => "dimension_cap",
            Error::LibraryInsufficient { .. } => "library_insufficient",
            Error::InfeasibleState(_) => "infeasible_state",
            Error::InvalidGate(_) => "invalid_gate",
            Error::InvalidPenalty(_) => "invalid_penalty",
            Error::Unsupported(_) => "unsupported",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
