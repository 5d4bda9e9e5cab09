use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cap exceeded: {what} is {value}, limit {limit}")]
    CapExceeded { what: String, value: u64, limit: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn cap(what: impl Into<String>, value: impl TryInto<u64>, limit: impl TryInto<u64>) -> Self {
        Error::CapExceeded {
            what: what.into(),
            value: value.try_into().unwrap_or(u64::MAX),
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

/// Fails with [`Error::CapExceeded`] when `value > limit`.
pub fn check_cap(what: &str, value: u64, limit: u64) -> Result<()> {
    let (v, l) = (value, limit);
    if v > l {
        Err(Error::CapExceeded { what: what.to_string(), value: v, limit: l })
    } else {
        Ok(())
    }
}
