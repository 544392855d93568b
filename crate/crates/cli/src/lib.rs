//! Model files, command orchestration and reports for the `detsing` binary.

pub mod commands;
pub mod model;
pub mod report;

pub use commands::{run, Command, Options, RunError};
pub use model::{parse_model, ModelError, ModelFile};
pub use report::Report;
