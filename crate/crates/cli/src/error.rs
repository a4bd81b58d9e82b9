use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error at {pointer}: {message}")]
    Input { pointer: String, message: String },
    #[error("computation error: {0}")]
    Compute(#[from] quotvol_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn input(pointer: &str, message: impl Into<String>) -> Self {
        let pointer = if pointer.is_empty() { "/" } else { pointer };
        CliError::Input {
            pointer: pointer.to_string(),
            message: message.into(),
        }
    }

    pub fn pointer(&self) -> Option<&str> {
        match self {
            CliError::Input { pointer, .. } => Some(pointer),
            _ => None,
        }
    }

    /// 2 for bad input (including unreadable files), 3 for failures inside the
    /// computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } | CliError::Io(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}
