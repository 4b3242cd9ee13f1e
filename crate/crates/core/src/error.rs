use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("cavity detuned from rotational transition: omega_c = {omega_c}, omega_01 = {omega_01}")]
    Detuned { omega_c: f64, omega_01: f64 },

    #[error("invalid target state: {0}")]
    InvalidTarget(String),

    #[error("basis mismatch: expected {expected}, found {found}")]
    BasisMismatch { expected: String, found: String },

    #[error(
        "grid undersampled: dt = {dt} but at most {max_dt} is required \
         ({samples_per_period:.1} samples per period at omega = {omega}, need 20)"
    )]
    Undersampled {
        dt: f64,
        max_dt: f64,
        omega: f64,
        samples_per_period: f64,
    },

    #[error("time step {dt} exceeds the stability bound {max_dt} for spectral radius {omega_max}")]
    StepTooLarge { dt: f64, max_dt: f64, omega_max: f64 },

    #[error("norm drift {drift:e} exceeded {limit:e} at t = {time} (dt = {dt}); reduce the time step")]
    NormDrift {
        drift: f64,
        limit: f64,
        time: f64,
        dt: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::Detuned { .. } => "detuned",
            Error::InvalidTarget(_) => "invalid_target",
            Error::BasisMismatch { .. } => "basis_mismatch",
            Error::Undersampled { .. } => "undersampled",
            Error::StepTooLarge { .. } => "step_too_large",
            Error::NormDrift { .. } => "norm_drift",
            Error::Config(_) => "config",
            Error::UnknownExperiment(_) => "unknown_experiment",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
        }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
