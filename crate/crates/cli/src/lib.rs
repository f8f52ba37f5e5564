//! Batch front end for the core library: JSON/CSV/SVG I/O around the
//! minima, construction, approximation, and margin workflows.

pub use ffpgn_core as core;

pub mod graph;
pub mod json;
pub mod parse;
pub mod run;

use ffpgn_core::error::Error;

/// Read a whole input file; unreadable input is a parse failure for the
/// exit-code contract.
pub fn read_input(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|_| Error::Parse("cannot read input file"))
}
