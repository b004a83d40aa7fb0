use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("degenerate state: all amplitudes are zero")]
    Degenerate,

    #[error("index error: {0}")]
    Index(String),

    #[error("arity error: expected {expected} subsystems, got {actual}")]
    Arity { expected: String, actual: usize },

    /// A floating-point result broke a guaranteed mathematical bound by more
    /// than rounding can explain.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("cut {cut} is not separable (max |minor| {max_abs_minor:e} > {threshold:e})")]
    NotSeparable {
        cut: usize,
        max_abs_minor: f64,
        threshold: f64,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("value error: {0}")]
    Value(String),

    #[error("sampler spec error: {0}")]
    Spec(String),
}
