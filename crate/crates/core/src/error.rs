use thiserror::Error;

#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("mode mismatch: {message}")]
    ModeMismatch { message: String },

    #[error("parity violation: length {len} and degree {degree} differ mod 2")]
    ParityViolation { len: u64, degree: usize },

    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error("cache version {found} is not supported (expected {expected})")]
    CacheVersion { found: i64, expected: i64 },

    #[error("{0} is not a superbasic class for this group")]
    NotSuperbasic(String),

    #[error("class {0} is basic; the comparison needs a nonbasic class")]
    BasicClass(String),

    #[error("length {len} is below the comparison threshold {threshold}")]
    BelowThreshold { len: u64, threshold: i64 },

    #[error("class {class} does not belong to group {group}")]
    GroupMismatch { class: String, group: String },

    #[error("{0} is not a minimal coset representative for the given coweight")]
    InvalidCosetRep(String),

    #[error("unknown sigma-conjugacy class `{0}`")]
    UnknownSigmaClass(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
