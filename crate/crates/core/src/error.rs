use thiserror::Error;

use crate::complex::Face;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed face {0:?}: {1}")]
    MalformedFace(Vec<usize>, &'static str),

    #[error("vertex {vertex} out of range for a complex on {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },

    #[error("face {0} is not in the complex")]
    UnknownFace(Face),

    #[error("the complex is not downward closed: {missing} is missing below {face}")]
    NotClosed { face: Face, missing: Face },

    #[error("line {line}: face {face} is listed but its facet {missing} is not")]
    OpenFace {
        line: usize,
        face: String,
        missing: String,
    },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("the complex is empty")]
    EmptyComplex,

    #[error("exact search over {vertices} vertices exceeds the cap of {cap}; raise the cap to search anyway")]
    SearchCap { vertices: usize, cap: usize },

    #[error("precondition failed for {bound}: {reason}")]
    Precondition { bound: &'static str, reason: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("numerical check failed: {0}")]
    Numerical(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn precondition(bound: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            bound,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
