use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("calibration error: {0}")]
    Calibration(String),
    #[error("momentum is off shell: {0}")]
    OffShell(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("grid resolution: {0}")]
    Resolution(String),
    #[error("support violation: {0}")]
    Support(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
