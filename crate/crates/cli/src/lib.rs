//! Command-line front end for `knr-core`: `certify`, `classify`, `boundary` and
//! `sample` over JSON input files.
//!
//! Exit codes: 0 when the job succeeds (for `certify`, when the spec is certified),
//! 1 when `certify` runs but does not certify, 2 on structural or I/O errors.

pub mod commands;
pub mod input;
pub mod output;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::{run, run_boundary, run_certify, run_classify, run_sample, Command, Job, Outcome};
pub use input::{parse_input, parse_str, Input};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[source] serde_json::Error),
    #[error("{field}: {message}")]
    Schema { field: String, message: String },
    #[error("{0}")]
    Job(String),
    #[error(transparent)]
    Tridiag(#[from] knr_core::tridiag::TridiagError),
    #[error(transparent)]
    Geometry(#[from] knr_core::geometry::GeometryError),
    #[error(transparent)]
    Oracle(#[from] knr_core::oracle::OracleError),
    #[error(transparent)]
    Spectra(#[from] knr_core::spectra::SpectraError),
}

impl CliError {
    pub const EXIT_CODE: u8 = 2;
}
