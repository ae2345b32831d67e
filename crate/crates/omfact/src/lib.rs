//! File formats, report rendering and the command line for `omfact-core`.

pub mod cli;
pub mod formats;
pub mod report;
