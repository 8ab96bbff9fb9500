use thiserror::Error;

/// Errors raised by the numerical routines and the command front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point (y={y}, t={t}) lies on a declared seam")]
    OnSeam { y: f64, t: f64 },

    #[error("quadrature did not reach tolerance: value {value}, error estimate {err_est}")]
    QuadratureNotConverged { value: f64, err_est: f64 },

    #[error("field returned a non-finite value at (y={y}, t={t})")]
    NonFinite { y: f64, t: f64 },

    #[error("characteristic blew up near s={s}")]
    BlowUp { s: f64 },

    #[error("target {target} is not bracketed by [{lo}, {hi}]")]
    BadBracket { lo: f64, hi: f64, target: f64 },

    #[error("weight h(t)={value} is not positive at t={t}")]
    NonPositiveWeight { t: f64, value: f64 },

    #[error("field has a singular derivative: {0}")]
    SingularField(String),

    #[error("d_tau chi = {value} below positivity floor at (s={s}, tau={tau})")]
    JacobianFloor { s: f64, tau: f64, value: f64 },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("empty profile")]
    EmptyProfile,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
