//! Report formats, a thread-pool executor and the command-line driver for
//! `pcfdyn-core`.

pub mod cli;
pub mod error;
pub mod exec;
pub mod render;
pub mod report;

pub use error::CliError;
pub use exec::RayonExecutor;
pub use render::{render, Format, Report, Table};
