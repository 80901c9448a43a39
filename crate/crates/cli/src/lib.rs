//! Scenario runner around the jostlab library: configuration, fixtures,
//! task dispatch and report output.

pub mod config;
pub mod document;
pub mod fixtures;
pub mod scenario;
pub mod tasks;

pub use config::{Config, Format, Task};
pub use scenario::{run_scenario, write_outcome, Outcome, Scenario, Source, Status};
