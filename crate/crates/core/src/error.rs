use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("invalid monoid table: {0}")]
    InvalidTable(String),

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("malformed diagram arrow {index}: {reason}")]
    MalformedArrow { index: usize, reason: String },

    #[error("condition (*) violated: translation by generator {generator} on object {object:?} kills {element:?}")]
    ConditionStarViolated {
        generator: usize,
        object: Vec<u32>,
        element: Vec<u32>,
    },

    #[error("not a submonoid: {0}")]
    NotASubmonoid(String),

    #[error("element is not in the enumerated group")]
    NotInGroup,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
