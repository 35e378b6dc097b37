use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] shs_core::Error),

    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Inputs that are well formed but cannot be analysed together.
    #[error("{0}")]
    Data(String),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            HarnessError::Usage(_) => "usage",
            HarnessError::Core(shs_core::Error::Unknown { .. }) => "unknown identifier",
            HarnessError::Core(shs_core::Error::NonFiniteCost { .. }) => "numerical",
            HarnessError::Core(_) => "configuration",
            HarnessError::Parse { .. } => "input parse",
            HarnessError::Io { .. } => "i/o",
            HarnessError::Data(_) => "data",
        }
    }

    /// Process exit status for this error; always nonzero.
    pub fn exit_code(&self) -> u8 {
        match self.category() {
            "usage" | "configuration" => 2,
            "unknown identifier" => 3,
            "input parse" => 4,
            "i/o" => 5,
            "data" => 6,
            _ => 7,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// 1-based line and column of byte `offset` in `text`.
pub(crate) fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub(crate) fn toml_error(path: &std::path::Path, text: &str, err: toml::de::Error) -> HarnessError {
    let (line, column) = err.span().map_or((1, 1), |s| line_column(text, s.start));
    HarnessError::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message: err.message().to_string(),
    }
}
