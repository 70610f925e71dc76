use thiserror::Error;

/// Machine-readable error codes, stable across releases; used by the CLI to
/// report schema violations as structured diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    Schema,
    UnknownKind,
    NotHomeomorphism,
    ModelMismatch,
    SystemMismatch,
    CannotCoarsen,
    DepthTooLarge,
    BadWord,
    BadLiteral,
    ArityMismatch,
    WitnessIndex,
    WitnessInvalid,
    LazyRejected,
    PreconditionFailed,
    OracleDomain,
    Internal,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Schema => "E_SCHEMA",
            ErrorCode::UnknownKind => "E_UNKNOWN_KIND",
            ErrorCode::NotHomeomorphism => "E_NOT_HOMEOMORPHISM",
            ErrorCode::ModelMismatch => "E_MODEL_MISMATCH",
            ErrorCode::SystemMismatch => "E_SYSTEM_MISMATCH",
            ErrorCode::CannotCoarsen => "E_CANNOT_COARSEN",
            ErrorCode::DepthTooLarge => "E_DEPTH_TOO_LARGE",
            ErrorCode::BadWord => "E_BAD_WORD",
            ErrorCode::BadLiteral => "E_BAD_LITERAL",
            ErrorCode::ArityMismatch => "E_ARITY_MISMATCH",
            ErrorCode::WitnessIndex => "E_WITNESS_INDEX",
            ErrorCode::WitnessInvalid => "E_WITNESS_INVALID",
            ErrorCode::LazyRejected => "E_LAZY_REJECTED",
            ErrorCode::PreconditionFailed => "E_PRECONDITION",
            ErrorCode::OracleDomain => "E_ORACLE_DOMAIN",
            ErrorCode::Internal => "E_INTERNAL",
        }
    }
}

#[derive(Debug, Clone, Error)]
#[error("{}: {message}", code.as_str())]
pub struct Error {
    pub code: ErrorCode,
    pub message: String,
}

impl Error {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Error {
            code,
            message: message.into(),
        }
    }

    pub fn schema(message: impl Into<String>) -> Self {
        Error::new(ErrorCode::Schema, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Error::new(ErrorCode::Internal, message)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
