use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("chart spec {path}: {message}")]
    Schema { path: String, message: String },

    #[error(transparent)]
    Geometry(#[from] s5frames::GeometryError),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Configuration and input problems exit with 2; output failures with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Schema { .. } | CliError::Geometry(_) => 2,
            CliError::Io { .. } | CliError::Csv(_) => 1,
        }
    }
}
