//! Scenario runners, configuration parsing, CSV emission and figure
//! reproduction.

pub mod config;
pub mod csv;
pub mod scenario;
pub mod svg;

pub use config::ScenarioConfig;
pub use csv::CsvTable;
pub use scenario::{run_scenario, RunSummary};
