//! Library backing the `runlaw` command-line tool: run-configuration
//! parsing, report evaluation, output rendering, and the built-in
//! reference-sweep presets. The binary in `main.rs` is a thin argument
//! parser over these modules; integration tests drive them directly.

pub mod config;
pub mod emit;
pub mod error;
pub mod presets;
pub mod report;

pub use error::CliError;
