use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on arguments failed (range, dimension, parameter order).
    #[error("input error: {0}")]
    Input(String),

    /// Raw data does not describe a point of the configuration space.
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// Two open segments (or boxes) over the same base point intersect.
    #[error("disjointness violation: {0}")]
    Disjointness(String),

    #[error("generation error: {0}")]
    Generation(String),

    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidConfiguration(msg.into())
    }

    /// True for errors caused by malformed requests rather than by the
    /// geometry of the data.
    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Json(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
