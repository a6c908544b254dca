use std::io;

use thiserror::Error;

/// Errors produced by the transformation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("window error: {0}")]
    Window(String),

    #[error("singular determinant: {0}")]
    Singular(String),

    #[error("kernel degeneracy: {0}")]
    KernelDegeneracy(String),

    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("scalar mode does not support {0}")]
    ModeUnsupported(&'static str),

    #[error("scalar values mix precisions ({0} and {1} bits)")]
    ModeMismatch(usize, usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn window(msg: impl Into<String>) -> Self {
        Error::Window(msg.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
