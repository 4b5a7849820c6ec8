use std::io::{Read, Write};
use std::path::Path;

use mal_core::format::{matrix_digest, parse_matrix_file};
use mal_core::{MalError, RepMatrix};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Machine-readable outcome of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the canonical text of each input matrix.
    pub input_digest: Vec<String>,
    pub result: Value,
    pub elapsed_ms: u64,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }
}

impl From<MalError> for CliError {
    fn from(e: MalError) -> Self {
        let code = match e {
            MalError::OracleMismatch(_)
            | MalError::TheoremViolation(_)
            | MalError::NotStabilized { .. }
            | MalError::Singular => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(format!("i/o error: {e}"))
    }
}

/// Reads a path, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))
    }
}

pub struct Input {
    pub rep: RepMatrix,
    pub digest: String,
}

pub fn load_matrix(path: &str) -> Result<Input, CliError> {
    let text = read_input(path)?;
    let mat = parse_matrix_file(&text).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
    let digest = matrix_digest(&mat);
    let rep = RepMatrix::new(mat).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
    Ok(Input { rep, digest })
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| CliError::usage(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}
