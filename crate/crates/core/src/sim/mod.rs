// Licensed under the Apache-2.0 license

//! Symbolic model of load-time signature and rollback checks.

mod boot;
mod model;
mod scenario;

pub use boot::{boot, BootChain, BootReport, BootStage, StageVerdict, ROOT_STAGE};
pub use model::{
    apply_update, verify_load, DevicePolicy, DeviceState, KeyScope, LoadVerdict, RollbackPolicy, SignedArtifact,
    SigningKey, Verdict,
};
pub use scenario::{
    canned_names, canned_scenario, canned_scenario_text, run_scenario, ArtifactSpec, ConfigError, DowngradeFinding,
    Event, EventOutcome, InstalledSummary, PolicySpec, ScenarioConfig, ScenarioReport, ScenarioVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("no trust entry for artifact name {0:?}")]
    UnknownArtifactName(String),
    #[error("load rejected: {} ({})", .0.verdict, .0.detail)]
    LoadRejected(LoadVerdict),
    #[error("artifact {0:?} is not installed")]
    MissingArtifact(String),
    #[error("invalid boot chain: {0}")]
    InvalidBootChain(String),
}
