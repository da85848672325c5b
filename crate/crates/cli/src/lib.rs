//! Configuration, execution and serialization behind the `triwell` binary.

pub mod config;
pub mod emit;
pub mod run;

pub use config::{parse_config, ConfigError, RunConfig};
pub use emit::{emit, format_sig, Cell, Table};
pub use run::execute;
