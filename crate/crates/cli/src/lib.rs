//! Command-line layer over `supercoh`: single-point witnesses, sweeps to CSV,
//! figure presets and the analytic-versus-Fock oracle check.

pub mod cli;
pub mod error;
pub mod eval;
pub mod format;
pub mod oracle;
pub mod presets;
pub mod range;
pub mod sweep;

pub use cli::{run, Cli};
pub use error::CliError;
pub use eval::{evaluate, BackendChoice, Evaluation, Family, StateSpec, WitnessChoice};
pub use sweep::{run_sweep, Row, SweepOutput, SweepParam, SweepSpec, CSV_HEADER};
