// Licensed under the Apache-2.0 license

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::boot::{boot, BootChain, BootReport};
use super::model::{
    verify_load, DevicePolicy, DeviceState, KeyScope, RollbackPolicy, SignedArtifact, SigningKey, Verdict,
};
use super::SimError;

const CANNED: &[(&str, &str)] = &[
    ("cve-2015-6639", include_str!("../../scenarios/cve-2015-6639.json")),
    (
        "cve-2015-6639-version-counter",
        include_str!("../../scenarios/cve-2015-6639-version-counter.json"),
    ),
    (
        "cve-2015-6639-per-version-keys",
        include_str!("../../scenarios/cve-2015-6639-per-version-keys.json"),
    ),
    ("msm8960-boot", include_str!("../../scenarios/msm8960-boot.json")),
    (
        "msm8960-boot-version-counter",
        include_str!("../../scenarios/msm8960-boot-version-counter.json"),
    ),
];

pub fn canned_names() -> impl Iterator<Item = &'static str> {
    CANNED.iter().map(|(n, _)| *n)
}

pub fn canned_scenario_text(name: &str) -> Option<&'static str> {
    CANNED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn canned_scenario(name: &str) -> Option<ScenarioConfig> {
    canned_scenario_text(name).map(|t| ScenarioConfig::from_json(t).expect("canned scenario parses"))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct ConfigError {
    pub location: String,
    pub message: String,
}

impl ConfigError {
    fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            location: location.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtifactSpec {
    pub id: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub key_id: String,
    #[serde(default)]
    pub vulnerable: bool,
    /// Stand-in for the image bytes; only its digest is used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicySpec {
    pub trusted_keys: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub rollback: RollbackPolicy,
    #[serde(default)]
    pub counters: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Event {
    /// Adds a new artifact to the scenario.
    Sign(ArtifactSpec),
    /// Verified update of an artifact by id.
    Install(String),
    /// Unverified substitution of an artifact by id.
    Replace(String),
    /// Runs the boot chain.
    Boot,
    /// Verifies the installed artifact with this name.
    LoadTrustlet(String),
    /// Replaces the trusted key set for a name.
    RotateKeys { name: String, trusted: Vec<String> },
}

impl Event {
    fn kind(&self) -> &'static str {
        match self {
            Self::Sign(_) => "sign",
            Self::Install(_) => "install",
            Self::Replace(_) => "replace",
            Self::Boot => "boot",
            Self::LoadTrustlet(_) => "load_trustlet",
            Self::RotateKeys { .. } => "rotate_keys",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    /// Build label -> integer version.
    #[serde(default)]
    pub labels: BTreeMap<String, u64>,
    pub keys: Vec<SigningKey>,
    pub artifacts: Vec<ArtifactSpec>,
    pub policy: PolicySpec,
    #[serde(default, skip_serializing_if = "is_empty_chain")]
    pub boot_chain: BootChain,
    pub events: Vec<Event>,
}

fn is_empty_chain(c: &BootChain) -> bool {
    c.stages.is_empty()
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text)
            .map_err(|e| ConfigError::new(format!("line {} column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    fn resolve_version(&self, spec: &ArtifactSpec, at: &str) -> Result<u64, ConfigError> {
        let from_label = match &spec.label {
            Some(l) => Some(
                *self
                    .labels
                    .get(l)
                    .ok_or_else(|| ConfigError::new(format!("{at}.label"), format!("unknown build label {l:?}")))?,
            ),
            None => None,
        };
        match (spec.version, from_label) {
            (Some(v), Some(l)) if v != l => Err(ConfigError::new(
                format!("{at}.version"),
                format!(
                    "version {v} disagrees with label {:?} ({l})",
                    spec.label.as_deref().unwrap_or("")
                ),
            )),
            (Some(v), _) | (None, Some(v)) => Ok(v),
            (None, None) => Err(ConfigError::new(at.to_string(), "artifact needs a version or a label")),
        }
    }

    fn build_artifact(
        &self,
        spec: &ArtifactSpec,
        at: &str,
        keys: &BTreeSet<&str>,
    ) -> Result<SignedArtifact, ConfigError> {
        if spec.name.is_empty() {
            return Err(ConfigError::new(format!("{at}.name"), "empty artifact name"));
        }
        if !self.policy.trusted_keys.contains_key(&spec.name) {
            return Err(ConfigError::new(
                format!("{at}.name"),
                format!("{:?} has no entry in policy.trusted_keys", spec.name),
            ));
        }
        if !keys.contains(spec.key_id.as_str()) {
            return Err(ConfigError::new(
                format!("{at}.key_id"),
                format!("unknown key {:?}", spec.key_id),
            ));
        }
        let version = self.resolve_version(spec, at)?;
        let payload = spec
            .payload
            .clone()
            .unwrap_or_else(|| format!("{}:{}:{}", spec.name, version, spec.id));
        Ok(SignedArtifact {
            name: spec.name.clone(),
            version,
            label: spec.label.clone(),
            key_id: spec.key_id.clone(),
            payload_digest: Sha256::digest(payload.as_bytes()).into(),
            vulnerable: spec.vulnerable,
        })
    }

    /// Checks references and returns the initial device state and the
    /// artifact table (including artifacts introduced by `sign` events).
    fn prepare(&self) -> Result<(DeviceState, BTreeMap<String, SignedArtifact>), ConfigError> {
        let mut keys = BTreeSet::new();
        let mut scopes = BTreeMap::new();
        for (i, k) in self.keys.iter().enumerate() {
            if !keys.insert(k.key_id.as_str()) {
                return Err(ConfigError::new(
                    format!("keys[{i}].key_id"),
                    format!("duplicate key {:?}", k.key_id),
                ));
            }
            scopes.insert(k.key_id.clone(), k.scope);
        }

        let mut trusted = BTreeMap::new();
        for (name, ids) in &self.policy.trusted_keys {
            for id in ids {
                if !keys.contains(id.as_str()) {
                    return Err(ConfigError::new(
                        format!("policy.trusted_keys.{name}"),
                        format!("unknown key {id:?}"),
                    ));
                }
            }
            trusted.insert(name.clone(), ids.iter().cloned().collect::<BTreeSet<_>>());
        }
        for name in self.policy.counters.keys() {
            if !trusted.contains_key(name) {
                return Err(ConfigError::new(
                    format!("policy.counters.{name}"),
                    "counter for a name with no trust entry",
                ));
            }
        }
        let counters = match self.policy.rollback {
            RollbackPolicy::VersionCounter => self.policy.counters.clone(),
            RollbackPolicy::None => BTreeMap::new(),
        };

        self.boot_chain
            .validate()
            .map_err(|e| ConfigError::new("boot_chain", e.to_string()))?;
        for name in self.boot_chain.artifact_names() {
            if !trusted.contains_key(name) {
                return Err(ConfigError::new(
                    "boot_chain",
                    format!("{name:?} has no entry in policy.trusted_keys"),
                ));
            }
        }

        let mut table = BTreeMap::new();
        for (i, spec) in self.artifacts.iter().enumerate() {
            let at = format!("artifacts[{i}]");
            let artifact = self.build_artifact(spec, &at, &keys)?;
            if table.insert(spec.id.clone(), artifact).is_some() {
                return Err(ConfigError::new(
                    format!("{at}.id"),
                    format!("duplicate artifact id {:?}", spec.id),
                ));
            }
        }
        for (i, event) in self.events.iter().enumerate() {
            let at = format!("events[{i}].{}", event.kind());
            match event {
                Event::Sign(spec) => {
                    let artifact = self.build_artifact(spec, &at, &keys)?;
                    if table.insert(spec.id.clone(), artifact).is_some() {
                        return Err(ConfigError::new(at, format!("duplicate artifact id {:?}", spec.id)));
                    }
                }
                Event::Install(id) | Event::Replace(id) => {
                    if !table.contains_key(id) {
                        return Err(ConfigError::new(at, format!("unknown artifact id {id:?}")));
                    }
                }
                Event::Boot => {
                    if self.boot_chain.stages.is_empty() {
                        return Err(ConfigError::new(at, "boot event without a boot_chain"));
                    }
                }
                Event::LoadTrustlet(name) => {
                    if !trusted.contains_key(name) {
                        return Err(ConfigError::new(
                            at,
                            format!("{name:?} has no entry in policy.trusted_keys"),
                        ));
                    }
                }
                Event::RotateKeys { name, trusted: ids } => {
                    if !trusted.contains_key(name) {
                        return Err(ConfigError::new(
                            at,
                            format!("{name:?} has no entry in policy.trusted_keys"),
                        ));
                    }
                    if let Some(id) = ids.iter().find(|id| !keys.contains(id.as_str())) {
                        return Err(ConfigError::new(at, format!("unknown key {id:?}")));
                    }
                }
            }
        }

        let policy = DevicePolicy {
            trusted_keys: trusted,
            key_scopes: scopes,
            rollback: self.policy.rollback,
            counters,
        };
        Ok((DeviceState::new(policy), table))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScenarioVerdict {
    DowngradePossible,
    Safe,
}

impl fmt::Display for ScenarioVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::DowngradePossible => "DOWNGRADE_POSSIBLE",
            Self::Safe => "SAFE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventOutcome {
    pub index: usize,
    pub event: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boot: Option<BootReport>,
}

/// A lower-version replacement that was later accepted by a loader.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DowngradeFinding {
    pub name: String,
    pub from_version: u64,
    pub to_version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to_label: Option<String>,
    pub replace_event: usize,
    pub accepted_event: usize,
    pub vulnerable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstalledSummary {
    pub version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub key_id: String,
    pub vulnerable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub rollback: RollbackPolicy,
    pub per_version_keys: bool,
    pub verdict: ScenarioVerdict,
    pub vulnerable_loaded: bool,
    pub downgrades: Vec<DowngradeFinding>,
    pub events: Vec<EventOutcome>,
    pub installed: BTreeMap<String, InstalledSummary>,
    pub counters: BTreeMap<String, u64>,
}

struct Pending {
    from_version: u64,
    replace_event: usize,
}

/// Runs the event list against a fresh device. The verdict is
/// DOWNGRADE_POSSIBLE iff a `replace` that lowered a version was later
/// accepted by `load_trustlet` or `boot`.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioReport, ConfigError> {
    let (mut state, table) = config.prepare()?;
    let mut pending: BTreeMap<String, Pending> = BTreeMap::new();
    let mut downgrades: Vec<DowngradeFinding> = Vec::new();
    let mut events = Vec::with_capacity(config.events.len());

    let sim_err =
        |i: usize, e: &Event, err: SimError| ConfigError::new(format!("events[{i}].{}", e.kind()), err.to_string());

    for (i, event) in config.events.iter().enumerate() {
        let mut outcome = EventOutcome {
            index: i,
            event: event.kind().to_string(),
            target: None,
            verdict: None,
            detail: String::new(),
            boot: None,
        };
        let mut accepted_names: Vec<String> = Vec::new();
        match event {
            Event::Sign(spec) => {
                outcome.target = Some(spec.id.clone());
                outcome.detail = format!("signed {} with {}", table[&spec.id], spec.key_id);
            }
            Event::Install(id) => {
                let artifact = &table[id];
                outcome.target = Some(id.clone());
                match state.install(artifact) {
                    Ok(v) => {
                        pending.remove(&artifact.name);
                        outcome.verdict = Some(v.verdict);
                        outcome.detail = format!("installed {artifact}");
                    }
                    Err(SimError::LoadRejected(v)) => {
                        outcome.verdict = Some(v.verdict);
                        outcome.detail = v.detail;
                    }
                    Err(e) => return Err(sim_err(i, event, e)),
                }
            }
            Event::Replace(id) => {
                let artifact = &table[id];
                outcome.target = Some(id.clone());
                let previous = state.replace(artifact);
                match previous {
                    Some(prev) if prev.version > artifact.version => {
                        outcome.detail = format!("replaced {prev} with {artifact} (unverified)");
                        pending.insert(
                            artifact.name.clone(),
                            Pending {
                                from_version: prev.version,
                                replace_event: i,
                            },
                        );
                    }
                    Some(prev) => {
                        outcome.detail = format!("replaced {prev} with {artifact} (unverified)");
                        pending.remove(&artifact.name);
                    }
                    None => {
                        outcome.detail = format!("placed {artifact} (unverified)");
                        pending.remove(&artifact.name);
                    }
                }
            }
            Event::LoadTrustlet(name) => {
                outcome.target = Some(name.clone());
                let artifact = state
                    .installed
                    .get(name)
                    .ok_or_else(|| sim_err(i, event, SimError::MissingArtifact(name.clone())))?;
                let v = verify_load(&state.policy, artifact).map_err(|e| sim_err(i, event, e))?;
                if v.accepted() {
                    accepted_names.push(name.clone());
                }
                outcome.verdict = Some(v.verdict);
                outcome.detail = v.detail;
            }
            Event::Boot => {
                let report = boot(&state, &config.boot_chain).map_err(|e| sim_err(i, event, e))?;
                accepted_names.extend(
                    report
                        .stages
                        .iter()
                        .filter(|s| s.verdict == Verdict::Accept)
                        .map(|s| s.artifact.clone()),
                );
                outcome.verdict = Some(report.stages.last().map_or(Verdict::Accept, |s| s.verdict));
                outcome.detail = match &report.aborted_at {
                    None => format!("boot completed ({} stages verified)", report.stages.len()),
                    Some(at) => format!("boot aborted at {at}"),
                };
                outcome.boot = Some(report);
            }
            Event::RotateKeys { name, trusted } => {
                outcome.target = Some(name.clone());
                state
                    .policy
                    .trusted_keys
                    .insert(name.clone(), trusted.iter().cloned().collect());
                outcome.detail = format!("{name} now trusts {}", trusted.join(", "));
            }
        }
        for name in accepted_names {
            if let Some(p) = pending.get(&name) {
                if downgrades.iter().any(|d| d.replace_event == p.replace_event) {
                    continue;
                }
                let artifact = &state.installed[&name];
                downgrades.push(DowngradeFinding {
                    name: name.clone(),
                    from_version: p.from_version,
                    to_version: artifact.version,
                    to_label: artifact.label.clone(),
                    replace_event: p.replace_event,
                    accepted_event: i,
                    vulnerable: artifact.vulnerable,
                });
            }
        }
        events.push(outcome);
    }

    let verdict = if downgrades.is_empty() {
        ScenarioVerdict::Safe
    } else {
        ScenarioVerdict::DowngradePossible
    };
    Ok(ScenarioReport {
        name: config.name.clone(),
        rollback: config.policy.rollback,
        per_version_keys: config.keys.iter().any(|k| matches!(k.scope, KeyScope::PerVersion(_))),
        verdict,
        vulnerable_loaded: downgrades.iter().any(|d| d.vulnerable),
        downgrades,
        events,
        installed: state
            .installed
            .iter()
            .map(|(n, a)| {
                (
                    n.clone(),
                    InstalledSummary {
                        version: a.version,
                        label: a.label.clone(),
                        key_id: a.key_id.clone(),
                        vulnerable: a.vulnerable,
                    },
                )
            })
            .collect(),
        counters: state.policy.counters.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn run(name: &str) -> ScenarioReport {
        run_scenario(&canned_scenario(name).unwrap()).unwrap()
    }

    #[test]
    fn canned_scenarios_parse_and_round_trip() {
        for name in canned_names() {
            let config = canned_scenario(name).unwrap();
            assert_eq!(config.name, name);
            assert_eq!(ScenarioConfig::from_json(&config.to_json()).unwrap(), config);
        }
    }

    #[test]
    fn widevine_shared_key_downgrade() {
        let report = run("cve-2015-6639");
        assert_eq!(report.verdict, ScenarioVerdict::DowngradePossible);
        assert!(report.vulnerable_loaded);
        let d = &report.downgrades[0];
        assert_eq!((d.name.as_str(), d.from_version, d.to_version), ("widevine", 2, 1));
        assert_eq!(d.to_label.as_deref(), Some("LMY48M"));
    }

    #[test]
    fn widevine_mitigations() {
        let counter = run("cve-2015-6639-version-counter");
        assert_eq!(counter.verdict, ScenarioVerdict::Safe);
        assert_eq!(counter.events.last().unwrap().verdict, Some(Verdict::RejectVersion));
        assert_eq!(counter.counters["widevine"], 2);

        let keys = run("cve-2015-6639-per-version-keys");
        assert_eq!(keys.verdict, ScenarioVerdict::Safe);
        assert_eq!(keys.events.last().unwrap().verdict, Some(Verdict::RejectKey));
    }

    #[test]
    fn msm8960_boot_scenarios() {
        let open = run("msm8960-boot");
        assert_eq!(open.verdict, ScenarioVerdict::DowngradePossible);
        let last_boot = open.events.iter().rev().find_map(|e| e.boot.as_ref()).unwrap();
        assert!(last_boot.success);
        assert_eq!(last_boot.vulnerable_loaded, vec!["tz".to_string()]);

        let guarded = run("msm8960-boot-version-counter");
        assert_eq!(guarded.verdict, ScenarioVerdict::Safe);
        let last_boot = guarded.events.iter().rev().find_map(|e| e.boot.as_ref()).unwrap();
        assert_eq!(last_boot.aborted_at.as_deref(), Some("SBL2"));
    }

    #[test]
    fn config_errors_carry_location() {
        let mut config = canned_scenario("cve-2015-6639").unwrap();
        config.artifacts[1].label = Some("NOPE".into());
        let err = run_scenario(&config).unwrap_err();
        assert_eq!(err.location, "artifacts[1].label");

        let mut config = canned_scenario("cve-2015-6639").unwrap();
        config.events.push(Event::Install("missing".into()));
        let err = run_scenario(&config).unwrap_err();
        assert!(err.location.starts_with("events["), "{err}");

        let err = ScenarioConfig::from_json("{\"name\": \"x\",\n \"keys\": [}").unwrap_err();
        assert!(err.location.starts_with("line 2"), "{err}");

        let text = canned_scenario_text("cve-2015-6639")
            .unwrap()
            .replacen("\"version\": 2", "\"version\": -2", 1);
        assert!(ScenarioConfig::from_json(&text).is_err());
    }

    #[test]
    fn load_before_install_is_a_config_error() {
        let mut config = canned_scenario("cve-2015-6639").unwrap();
        config.events.insert(0, Event::LoadTrustlet("widevine".into()));
        assert_eq!(run_scenario(&config).unwrap_err().location, "events[0].load_trustlet");
    }

    #[test]
    fn replace_with_same_or_newer_is_not_a_downgrade() {
        let mut config = canned_scenario("cve-2015-6639").unwrap();
        for e in &mut config.events {
            if let Event::Replace(id) = e {
                *id = "widevine-N6F26Y".into();
            }
        }
        assert_eq!(run_scenario(&config).unwrap().verdict, ScenarioVerdict::Safe);
    }

    #[test]
    fn deterministic() {
        for name in canned_names() {
            let a = serde_json::to_string(&run(name)).unwrap();
            let b = serde_json::to_string(&run(name)).unwrap();
            assert_eq!(a, b);
        }
    }

    fn event_strategy(n_artifacts: usize) -> impl Strategy<Value = Event> {
        prop_oneof![
            (0..n_artifacts).prop_map(|i| Event::Install(format!("a{i}"))),
            (0..n_artifacts).prop_map(|i| Event::Replace(format!("a{i}"))),
            Just(Event::LoadTrustlet("t".into())),
        ]
    }

    proptest! {
        #[test]
        fn counters_never_decrease(
            versions in proptest::collection::vec(0u64..6, 1..6),
            events in proptest::collection::vec(event_strategy(5), 1..30),
        ) {
            let n = versions.len();
            let artifacts = versions.iter().enumerate().map(|(i, v)| ArtifactSpec {
                id: format!("a{i}"), name: "t".into(), version: Some(*v), label: None,
                key_id: "K".into(), vulnerable: false, payload: None,
            }).collect();
            let mut events: Vec<Event> = events.into_iter().filter(|e| match e {
                Event::Install(id) | Event::Replace(id) => id[1..].parse::<usize>().unwrap() < n,
                _ => true,
            }).collect();
            events.insert(0, Event::Replace("a0".into()));
            let config = ScenarioConfig {
                name: "p".into(), description: String::new(), labels: BTreeMap::new(),
                keys: vec![SigningKey { key_id: "K".into(), scope: KeyScope::Global }],
                artifacts,
                policy: PolicySpec {
                    trusted_keys: BTreeMap::from([("t".to_string(), vec!["K".to_string()])]),
                    rollback: RollbackPolicy::VersionCounter,
                    counters: BTreeMap::new(),
                },
                boot_chain: BootChain::default(),
                events: events.clone(),
            };
            // replay prefix by prefix and watch the counter
            let mut last = 0u64;
            for k in 1..=events.len() {
                let mut prefix = config.clone();
                prefix.events.truncate(k);
                let report = run_scenario(&prefix).unwrap();
                let now = report.counters.get("t").copied().unwrap_or(0);
                prop_assert!(now >= last);
                last = now;
            }
        }

        #[test]
        fn global_key_without_rollback_accepts_every_version(versions in proptest::collection::vec(0u64..1000, 1..10)) {
            let mut state = DeviceState::new(DevicePolicy {
                trusted_keys: BTreeMap::from([("t".to_string(), BTreeSet::from(["K".to_string()]))]),
                ..Default::default()
            });
            let artifacts: Vec<SignedArtifact> = versions.iter().map(|v| SignedArtifact {
                name: "t".into(), version: *v, label: None, key_id: "K".into(),
                payload_digest: [0; 32], vulnerable: false,
            }).collect();
            for a in &artifacts {
                state.install(a).unwrap();
            }
            for a in &artifacts {
                prop_assert!(verify_load(&state.policy, a).unwrap().accepted());
            }
        }
    }
}
