//! Instance files, command dispatch and reports behind the `lie-deform`
//! binary.

mod commands;
pub mod instance;
pub mod presets;
pub mod report;

pub use commands::{axiom_probes, explicit_agreement, load_instance, run_command, Command, RunOptions};
pub use instance::{Instance, InstanceFile, Kind};
pub use report::{error_exit_code, Report, Verdict};
