//! Command-line runner for the `gmt-core` scenarios, plus the on-disk formats:
//! JSON report manifests, CSV series and binary PGM rasters.
//!
//! ```text
//! gmt-lab run <scenario|all> [--seed N] [--out DIR] [--jobs N] [--force]
//!             [--set key=value]... [--config FILE]
//! gmt-lab list
//! ```
//!
//! Exit codes: 0 every verdict passed, 1 some verdict failed, 2 usage error,
//! 3 runtime error.

pub mod cli;
pub mod files;
pub mod runner;
pub mod settings;

use std::path::PathBuf;

/// Process exit status, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Runtime = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] gmt_core::Error),
    #[error("{0}")]
    Format(String),
}

impl LabError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }

    pub fn exit(&self) -> Exit {
        match self {
            LabError::Usage(_) => Exit::Usage,
            LabError::Core(gmt_core::Error::UnknownKey { .. } | gmt_core::Error::BadValue { .. }) => Exit::Usage,
            _ => Exit::Runtime,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
