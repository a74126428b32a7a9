use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use noether_core::SearchConfig;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Ok,
    Inconclusive,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Outcome::Ok => ExitCode::SUCCESS,
            Outcome::Error => ExitCode::from(1),
            Outcome::Inconclusive => ExitCode::from(2),
        }
    }
}

/// What a subcommand hands back to `main`.
#[derive(Debug)]
pub struct Done {
    pub outcome: Outcome,
    pub result: Value,
    pub search: Option<SearchConfig>,
}

impl Done {
    pub fn new(outcome: Outcome, result: Value) -> Self {
        Done { outcome, result, search: None }
    }

    pub fn searched(mut self, cfg: SearchConfig) -> Self {
        self.search = Some(cfg);
        self
    }
}

/// Machine-readable record of one invocation. Without `--timing` it holds
/// nothing run-dependent, so equal invocations give equal bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outcome: Outcome,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunReport {
    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing report to {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let rep = RunReport {
            command: "norm".into(),
            inputs: serde_json::json!({"q": 5, "x": "1 - z"}),
            outcome: Outcome::Ok,
            result: serde_json::json!({"norm": "5"}),
            search: Some(SearchConfig::default()),
            wall_time_ms: None,
        };
        let text = serde_json::to_string(&rep).unwrap();
        assert!(!text.contains("wall_time_ms"));
        assert_eq!(serde_json::from_str::<RunReport>(&text).unwrap(), rep);
    }
}
