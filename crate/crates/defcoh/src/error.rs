use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JobError {
    #[error("schema error at {path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("{cap} cap exceeded: {value} > {limit}")]
    CapExceeded {
        cap: &'static str,
        value: usize,
        limit: usize,
    },
}
