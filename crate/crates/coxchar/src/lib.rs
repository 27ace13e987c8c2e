//! Character table files, verification of the decomposition identities and
//! reports, on top of `coxeter-core`.

pub mod group;
pub mod report;
pub mod table;
pub mod theorem;

use std::path::Path;

pub use report::{Format, Record, Report, Status};
pub use table::{TableError, TableFile};

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] coxeter_core::Error),
    #[error("{0}: {1}")]
    Table(String, TableError),
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("{0}")]
    Usage(String),
    #[error("no table for the shape of L={0} and solving is disabled")]
    MissingShape(String),
    #[error("no assignment of linear characters exists for L={0}")]
    NoAssignment(String),
}

impl AppError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::NoAssignment(_) => 1,
            _ => 2,
        }
    }
}

/// Reads every `*.tbl` file of a directory, in file-name order.
pub fn read_table_dir(dir: &Path) -> Result<Vec<TableFile>, AppError> {
    let entries = std::fs::read_dir(dir).map_err(|e| AppError::Io(dir.display().to_string(), e.to_string()))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tbl"))
        .collect();
    paths.sort();
    paths.iter().map(|p| TableFile::read(p)).collect()
}

/// The directory of tables shipped with this crate.
pub fn shipped_tables_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tables"))
}
