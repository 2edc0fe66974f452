use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CredentialError {
    #[error("no access token configured")]
    Missing,
    #[error("access token must be {min} to {max} characters", min = Credential::MIN_LEN, max = Credential::MAX_LEN)]
    Length,
    #[error("access token contains characters outside [A-Za-z0-9:_-]")]
    Charset,
}

/// The chat-transport access token checked before a session is served.
#[derive(Clone, PartialEq, Eq)]
pub struct Credential(String);

impl Credential {
    pub const MIN_LEN: usize = 16;
    pub const MAX_LEN: usize = 256;

    pub fn parse(token: &str) -> Result<Self, CredentialError> {
        let token = token.trim();
        if token.is_empty() {
            return Err(CredentialError::Missing);
        }
        if !(Self::MIN_LEN..=Self::MAX_LEN).contains(&token.len()) {
            return Err(CredentialError::Length);
        }
        if !token
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b':' | b'_' | b'-'))
        {
            return Err(CredentialError::Charset);
        }
        Ok(Self(token.to_owned()))
    }

    pub fn from_option(token: Option<&str>) -> Result<Self, CredentialError> {
        Self::parse(token.unwrap_or_default())
    }

    pub fn expose(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Credential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Credential(****)")
    }
}
