// Licensed under the Apache-2.0 license

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KeyScope {
    /// One key signs every version.
    Global,
    /// The key is only valid for artifacts of this version.
    PerVersion(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigningKey {
    pub key_id: String,
    pub scope: KeyScope,
}

/// A signed image. The signature is modelled as the pair (key id, payload
/// digest); there is no real cryptography.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedArtifact {
    pub name: String,
    pub version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub key_id: String,
    #[serde(with = "hex_digest")]
    pub payload_digest: [u8; 32],
    pub vulnerable: bool,
}

mod hex_digest {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &[u8; 32], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&hex::encode(d))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[u8; 32], D::Error> {
        let text = String::deserialize(d)?;
        let mut out = [0u8; 32];
        hex::decode_to_slice(&text, &mut out).map_err(serde::de::Error::custom)?;
        Ok(out)
    }
}

impl fmt::Display for SignedArtifact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} v{}", self.name, self.version)?;
        if let Some(label) = &self.label {
            write!(f, " ({label})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RollbackPolicy {
    #[default]
    None,
    VersionCounter,
}

/// What a verifying loader accepts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DevicePolicy {
    /// Artifact name -> accepted key ids.
    pub trusted_keys: BTreeMap<String, BTreeSet<String>>,
    /// Scope of each known key; unlisted keys are treated as global.
    #[serde(default)]
    pub key_scopes: BTreeMap<String, KeyScope>,
    #[serde(default)]
    pub rollback: RollbackPolicy,
    /// Artifact name -> minimum accepted version (only under VERSION_COUNTER).
    #[serde(default)]
    pub counters: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Accept,
    RejectKey,
    RejectVersion,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Accept => "ACCEPT",
            Self::RejectKey => "REJECT_KEY",
            Self::RejectVersion => "REJECT_VERSION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadVerdict {
    pub verdict: Verdict,
    pub detail: String,
}

impl LoadVerdict {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }
}

/// Load-time check: the signing key must be trusted for the artifact's name
/// (and, for a per-version key, match the artifact's version), and under a
/// version counter the version must not be below the recorded minimum.
pub fn verify_load(policy: &DevicePolicy, artifact: &SignedArtifact) -> Result<LoadVerdict, SimError> {
    let trusted = policy
        .trusted_keys
        .get(&artifact.name)
        .ok_or_else(|| SimError::UnknownArtifactName(artifact.name.clone()))?;

    if !trusted.contains(&artifact.key_id) {
        return Ok(LoadVerdict {
            verdict: Verdict::RejectKey,
            detail: format!(
                "{artifact} is signed with {}, which is not trusted for {}",
                artifact.key_id, artifact.name
            ),
        });
    }
    if let Some(KeyScope::PerVersion(v)) = policy.key_scopes.get(&artifact.key_id) {
        if *v != artifact.version {
            return Ok(LoadVerdict {
                verdict: Verdict::RejectKey,
                detail: format!("key {} is only valid for version {v}", artifact.key_id),
            });
        }
    }
    if policy.rollback == RollbackPolicy::VersionCounter {
        let min = policy.counters.get(&artifact.name).copied().unwrap_or(0);
        if artifact.version < min {
            return Ok(LoadVerdict {
                verdict: Verdict::RejectVersion,
                detail: format!("{artifact} is below the rollback counter ({min})"),
            });
        }
    }
    Ok(LoadVerdict {
        verdict: Verdict::Accept,
        detail: format!("{artifact} verified with {}", artifact.key_id),
    })
}

/// Installed artifacts plus the policy that guards them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviceState {
    pub policy: DevicePolicy,
    pub installed: BTreeMap<String, SignedArtifact>,
}

impl DeviceState {
    pub fn new(policy: DevicePolicy) -> Self {
        Self {
            policy,
            installed: BTreeMap::new(),
        }
    }

    /// Verified install (an OTA update). Leaves the state untouched when the
    /// artifact is rejected.
    pub fn install(&mut self, artifact: &SignedArtifact) -> Result<LoadVerdict, SimError> {
        let verdict = verify_load(&self.policy, artifact)?;
        if !verdict.accepted() {
            return Err(SimError::LoadRejected(verdict));
        }
        if self.policy.rollback == RollbackPolicy::VersionCounter {
            let counter = self.policy.counters.entry(artifact.name.clone()).or_insert(0);
            *counter = (*counter).max(artifact.version);
        }
        self.installed.insert(artifact.name.clone(), artifact.clone());
        Ok(verdict)
    }

    /// Unverified file substitution, as done by an attacker with root access.
    /// Returns the artifact that was replaced, if any.
    pub fn replace(&mut self, artifact: &SignedArtifact) -> Option<SignedArtifact> {
        self.installed.insert(artifact.name.clone(), artifact.clone())
    }
}

/// Functional form of [`DeviceState::install`].
pub fn apply_update(state: &DeviceState, artifact: &SignedArtifact) -> Result<DeviceState, SimError> {
    let mut next = state.clone();
    next.install(artifact)?;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn artifact(version: u64, key: &str) -> SignedArtifact {
        SignedArtifact {
            name: "widevine".into(),
            version,
            label: None,
            key_id: key.into(),
            payload_digest: [version as u8; 32],
            vulnerable: version == 1,
        }
    }

    fn policy(rollback: RollbackPolicy, keys: &[&str]) -> DevicePolicy {
        DevicePolicy {
            trusted_keys: BTreeMap::from([("widevine".to_string(), keys.iter().map(|k| k.to_string()).collect())]),
            rollback,
            ..Default::default()
        }
    }

    #[test]
    fn shared_key_accepts_old_version_after_update() {
        let mut state = DeviceState::new(policy(RollbackPolicy::None, &["K"]));
        state.install(&artifact(2, "K")).unwrap();
        assert!(verify_load(&state.policy, &artifact(1, "K")).unwrap().accepted());
    }

    #[test]
    fn counter_rejects_old_version() {
        let mut p = policy(RollbackPolicy::VersionCounter, &["K"]);
        p.counters.insert("widevine".into(), 2);
        assert_eq!(
            verify_load(&p, &artifact(1, "K")).unwrap().verdict,
            Verdict::RejectVersion
        );
        assert_eq!(verify_load(&p, &artifact(2, "K")).unwrap().verdict, Verdict::Accept);
    }

    #[test]
    fn per_version_keys_reject_old_key() {
        let mut p = policy(RollbackPolicy::None, &["K2"]);
        p.key_scopes.insert("K1".into(), KeyScope::PerVersion(1));
        p.key_scopes.insert("K2".into(), KeyScope::PerVersion(2));
        assert_eq!(verify_load(&p, &artifact(1, "K1")).unwrap().verdict, Verdict::RejectKey);
        assert_eq!(verify_load(&p, &artifact(2, "K2")).unwrap().verdict, Verdict::Accept);
        // a per-version key used for another version is refused even if trusted
        assert_eq!(verify_load(&p, &artifact(3, "K2")).unwrap().verdict, Verdict::RejectKey);
    }

    #[test]
    fn unknown_name() {
        let mut a = artifact(1, "K");
        a.name = "keymaster".into();
        assert_eq!(
            verify_load(&policy(RollbackPolicy::None, &["K"]), &a),
            Err(SimError::UnknownArtifactName("keymaster".into()))
        );
    }

    #[test]
    fn counter_tracks_installs() {
        let state = DeviceState::new(policy(RollbackPolicy::VersionCounter, &["K"]));
        let state = apply_update(&state, &artifact(1, "K")).unwrap();
        let state = apply_update(&state, &artifact(2, "K")).unwrap();
        assert_eq!(state.policy.counters["widevine"], 2);
        match apply_update(&state, &artifact(1, "K")) {
            Err(SimError::LoadRejected(v)) => assert_eq!(v.verdict, Verdict::RejectVersion),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn replace_without_rollback_is_the_attack_state() {
        let mut state = DeviceState::new(policy(RollbackPolicy::None, &["K"]));
        state.install(&artifact(2, "K")).unwrap();
        let old = state.replace(&artifact(1, "K")).unwrap();
        assert_eq!(old.version, 2);
        assert_eq!(state.installed["widevine"].version, 1);
        assert!(verify_load(&state.policy, &state.installed["widevine"])
            .unwrap()
            .accepted());
    }
}
