use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division error: {0}")]
    Division(String),
    #[error("specialization error: {0}")]
    Specialization(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("element is not in the affine Weyl group: {0}")]
    NotInWaff(String),
    #[error("ball is not Bruhat-closed: {0}")]
    BallNotClosed(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("cover verification failed: {0}")]
    CoverFailure(String),
    #[error("non-integral entry: {0}")]
    NonIntegralEntry(String),
    #[error("element does not act by a scalar: {0}")]
    NotCentralCharacter(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
