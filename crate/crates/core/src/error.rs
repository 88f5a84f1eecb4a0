use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("PoleError: {0}")]
    Pole(String),
    #[error("ZeroError: {0}")]
    Zero(String),
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("RouteDomainError: {0}")]
    RouteDomain(String),
    #[error("DivergentSeries: {0}")]
    DivergentSeries(String),
    #[error("NonConvergence: {0}")]
    NonConvergence(String),
    #[error("SingularIntegrand: {0}")]
    SingularIntegrand(String),
    #[error("NoisyFunction: {0}")]
    NoisyFunction(String),
    #[error("OverflowPolicy: {0}")]
    Overflow(String),
}

impl Error {
    /// Stable name used on diagnostic streams.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Zero(_) => "ZeroError",
            Error::Domain(_) => "DomainError",
            Error::RouteDomain(_) => "RouteDomainError",
            Error::DivergentSeries(_) => "DivergentSeries",
            Error::NonConvergence(_) => "NonConvergence",
            Error::SingularIntegrand(_) => "SingularIntegrand",
            Error::NoisyFunction(_) => "NoisyFunction",
            Error::Overflow(_) => "OverflowPolicy",
        }
    }
}
