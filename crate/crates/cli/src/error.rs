use cone_morse::complex_core::ComplexError;
use cone_morse::dec_grid::DecError;
use cone_morse::morse_model::{MorseDataError, ValidationError};
use cone_morse::witten_spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    /// 0 success, 1 I/O, 2 validation, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn io(context: &str, e: impl std::fmt::Display) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }
}

impl From<MorseDataError> for CliError {
    fn from(e: MorseDataError) -> Self {
        match e {
            MorseDataError::Io { .. } | MorseDataError::UnknownBuiltin(_) => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::InvalidParams(_)
            | SpectralError::EpsilonTooLarge { .. }
            | SpectralError::NotGridAligned { .. } => CliError::Validation(e.to_string()),
            SpectralError::Dec(DecError::Leibniz { .. }) => CliError::Numerical(e.to_string()),
            SpectralError::Dec(_) => CliError::Validation(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
