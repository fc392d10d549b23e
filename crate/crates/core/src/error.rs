use thiserror::Error;

/// Errors raised by evaluation, string construction, geometry and zero scanning.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of zeta at s = 1")]
    Pole,

    #[error("denominator vanishes near s = {sigma} + {t}i (|denominator| = {magnitude:e})")]
    DenominatorZero { sigma: f64, t: f64, magnitude: f64 },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("ill-conditioned center fit (condition number {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("no zero in bracket [{t_lo}, {t_hi}] at sigma = {sigma}")]
    NoZeroInBracket { t_lo: f64, t_hi: f64, sigma: f64 },

    #[error("cannot classify zero near t = {t}: residuals {residual_half:e} (sigma = 0.5) and {residual_one:e} (sigma = 1)")]
    Classification {
        t: f64,
        residual_half: f64,
        residual_one: f64,
    },

    #[error("at sigma = {sigma}: {source}")]
    AtSigma {
        sigma: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
