#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] polycauchy::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Io(_) => status::USAGE,
            Self::Library(_) => status::DOMAIN,
        }
    }
}

/// Process exit statuses.
pub mod status {
    pub const SUCCESS: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const DOMAIN: u8 = 2;
    pub const VERIFICATION: u8 = 3;
}
