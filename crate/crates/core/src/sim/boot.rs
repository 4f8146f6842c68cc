// Licensed under the Apache-2.0 license

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::model::{verify_load, DeviceState, Verdict};
use super::SimError;

/// Name of the implicit, hardware-rooted first stage.
pub const ROOT_STAGE: &str = "ROM";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BootStage {
    pub loader: String,
    pub loads: Vec<String>,
}

/// Ordered boot stages, e.g. ROM -> SBL1 -> SBL2 -> {tz, SBL3}.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BootChain {
    pub stages: Vec<BootStage>,
}

impl BootChain {
    pub fn new(stages: &[(&str, &[&str])]) -> Self {
        Self {
            stages: stages
                .iter()
                .map(|(loader, loads)| BootStage {
                    loader: loader.to_string(),
                    loads: loads.iter().map(|s| s.to_string()).collect(),
                })
                .collect(),
        }
    }

    /// Every loader must be the root stage or have been loaded by an earlier
    /// stage, and nothing is loaded twice.
    pub fn validate(&self) -> Result<(), SimError> {
        let mut loaded: BTreeSet<&str> = BTreeSet::new();
        for (i, stage) in self.stages.iter().enumerate() {
            if stage.loader != ROOT_STAGE && !loaded.contains(stage.loader.as_str()) {
                return Err(SimError::InvalidBootChain(format!(
                    "stage {i}: loader {} has not been loaded by an earlier stage",
                    stage.loader
                )));
            }
            for name in &stage.loads {
                if name == ROOT_STAGE || !loaded.insert(name) {
                    return Err(SimError::InvalidBootChain(format!(
                        "stage {i}: {name} is loaded more than once"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn artifact_names(&self) -> impl Iterator<Item = &str> {
        self.stages.iter().flat_map(|s| s.loads.iter().map(String::as_str))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageVerdict {
    pub loader: String,
    pub artifact: String,
    pub version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub verdict: Verdict,
    pub detail: String,
    pub vulnerable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BootReport {
    pub success: bool,
    /// Loader whose verification failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aborted_at: Option<String>,
    pub stages: Vec<StageVerdict>,
    /// Artifacts that were loaded although flagged vulnerable.
    pub vulnerable_loaded: Vec<String>,
}

/// Verifies each stage's loads in order; the first rejection stops the boot.
pub fn boot(state: &DeviceState, chain: &BootChain) -> Result<BootReport, SimError> {
    chain.validate()?;
    if let Some(missing) = chain.artifact_names().find(|n| !state.installed.contains_key(*n)) {
        return Err(SimError::MissingArtifact(missing.to_string()));
    }
    let mut report = BootReport {
        success: true,
        aborted_at: None,
        stages: Vec::new(),
        vulnerable_loaded: Vec::new(),
    };
    'stages: for stage in &chain.stages {
        for name in &stage.loads {
            let artifact = &state.installed[name];
            let v = verify_load(&state.policy, artifact)?;
            let accepted = v.accepted();
            report.stages.push(StageVerdict {
                loader: stage.loader.clone(),
                artifact: name.clone(),
                version: artifact.version,
                label: artifact.label.clone(),
                verdict: v.verdict,
                detail: v.detail,
                vulnerable: artifact.vulnerable,
            });
            if !accepted {
                report.success = false;
                report.aborted_at = Some(stage.loader.clone());
                break 'stages;
            }
            if artifact.vulnerable {
                report.vulnerable_loaded.push(name.clone());
            }
        }
    }
    Ok(report)
}
