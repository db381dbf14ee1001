//! Exit codes and output plumbing.

use std::io::Write;
use std::path::Path;

use nhdegen::Error;

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_UNDETERMINED: u8 = 2;
pub const EXIT_LOOP: u8 = 3;
pub const EXIT_RANK: u8 = 4;
pub const EXIT_CHECK: u8 = 5;

/// Error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::Dimension(_) | Error::MissingPlaceholder(_) => {
                EXIT_PARSE
            }
            Error::LoopTooCoarse { .. } => EXIT_LOOP,
            Error::ToleranceAmbiguity { .. } => EXIT_RANK,
            Error::RouteMismatch { .. } | Error::DualMismatch(_) | Error::NoConvergence { .. } => EXIT_CHECK,
        };
        Self::new(code, e.to_string())
    }
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("reading {}: {e}", path.display())))
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::new(EXIT_PARSE, format!("writing {}: {e}", path.display())))
}

/// Writes the main output to `path` or stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::new(EXIT_PARSE, format!("writing stdout: {e}")))
        }
    }
}
