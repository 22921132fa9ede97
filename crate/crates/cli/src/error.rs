use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;
use wtred::{Error as LibError, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("{}:{}:{}: {}", path.display(), err.line, err.col, err.message)]
    Parse { path: PathBuf, err: ParseError },

    #[error("{0}")]
    Lib(#[from] LibError),

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn parse(path: &Path, err: ParseError) -> Self {
        CliError::Parse { path: path.to_owned(), err }
    }

    /// Library errors from a file keep the file name when they are parse
    /// errors.
    pub fn lib_at(path: &Path, err: LibError) -> Self {
        match err {
            LibError::Parse(e) => CliError::parse(path, e),
            other => CliError::Lib(other),
        }
    }

    /// 1 for bad input or options, 2 when the tool itself failed.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(LibError::Invariant(_)) | CliError::Write { .. } => 2,
            _ => 1,
        }
    }

    /// Extra lines printed under the message.
    pub fn details(&self) -> Option<String> {
        match self {
            CliError::Lib(LibError::Unreasonable { row, witness }) => {
                Some(format!("witness for Z check {row}: qubits {witness:?}"))
            }
            _ => None,
        }
    }
}
