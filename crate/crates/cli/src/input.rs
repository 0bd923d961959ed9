use std::fs;
use std::io::Read;
use std::path::Path;

use freshopt_core::{FleetSpec, IntervalDistribution, Scenario, ScheduleSpec};
use serde::Deserialize;

use crate::CliError;

/// Simulation settings that may be overridden on the command line.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    pub seed: Option<u64>,
    pub n_cycles: Option<u64>,
}

/// Input document shared by every subcommand. Each command requires only
/// the sections it uses.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenario: Option<Scenario>,
    pub schedule: Option<ScheduleSpec>,
    pub sim: Option<SimSection>,
    pub fleet: Option<FleetSpec>,
}

impl ScenarioFile {
    /// Reads `path`, or standard input when `path` is `-`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = if path.as_os_str() == "-" {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("reading standard input: {e}")))?;
            buf
        } else {
            fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        };
        Self::parse(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn scenario(&self) -> Result<&Scenario, CliError> {
        self.scenario
            .as_ref()
            .ok_or_else(|| CliError::Input("missing \"scenario\" section".into()))
    }

    pub fn fleet(&self) -> Result<&FleetSpec, CliError> {
        self.fleet
            .as_ref()
            .ok_or_else(|| CliError::Input("missing \"fleet\" section".into()))
    }
}

pub fn parse_distribution(text: &str) -> Result<IntervalDistribution, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("--dist: {e}")))
}
