use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("no recorded fixture for `{0}`")]
    ReplayMiss(String),
    #[error("network error: {0}")]
    Network(String),
    #[error("fixture store error: {0}")]
    Store(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid record {id}: {message}")]
pub struct DecodeError {
    pub id: String,
    pub message: String,
}

impl DecodeError {
    pub fn invalid(id: &str, message: impl Into<String>) -> Self {
        Self {
            id: id.to_owned(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChemblError {
    #[error("invalid request: {0}")]
    Precondition(String),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error("the service rejected the structure `{0}`")]
    InvalidStructure(String),
    #[error("{0} was not found")]
    NotFound(String),
    #[error("no molecule named `{0}` with a known structure")]
    UnresolvedDrug(String),
    #[error("service returned HTTP {status} for {request}")]
    Service { status: u16, request: String },
    #[error("could not decode service payload: {0}")]
    Decode(String),
}

impl From<DecodeError> for ChemblError {
    fn from(e: DecodeError) -> Self {
        ChemblError::Decode(e.to_string())
    }
}

impl ChemblError {
    /// Short error class name shown to chat users.
    pub fn class(&self) -> &'static str {
        match self {
            ChemblError::Precondition(_) => "InvalidRequest",
            ChemblError::Transport(TransportError::ReplayMiss(_)) => "ReplayMiss",
            ChemblError::Transport(_) => "TransportError",
            ChemblError::InvalidStructure(_) => "InvalidStructure",
            ChemblError::NotFound(_) => "NotFound",
            ChemblError::UnresolvedDrug(_) => "UnresolvedDrug",
            ChemblError::Service { .. } => "ServiceError",
            ChemblError::Decode(_) => "DecodeError",
        }
    }
}
