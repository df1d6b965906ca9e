//! File formats, reports and the command-line pipelines built on `ggd-core`.

pub mod cli;
pub mod error;
pub mod io;
pub mod pca;
pub mod report;

pub use error::{Error, Result};
