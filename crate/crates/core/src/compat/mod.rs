// Licensed under the Apache-2.0 license

//! Which images can stand in for each other at load time.
//!
//! Two images are mutually replaceable when they were signed with the same
//! key, so comparison and clustering work on the fingerprints of each image's
//! signing (leaf) certificates.

mod chain;
mod union_find;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use chain::{build_chains, signing_profile, CertChain, ChainSet, SigningProfile};
pub use union_find::DisjointSet;

use crate::catalog::ImageRecord;
use crate::der_x509::KeyFingerprint;

/// Attached to every verdict: keys are necessary for a swap, not sufficient.
pub const API_CAVEAT: &str = "trustlet/TEE OS API compatibility and any enforced version checks are not assessed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Compatibility {
    Mutual,
    None,
}

impl fmt::Display for Compatibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Mutual => "MUTUAL",
            Self::None => "NONE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityVerdict {
    pub verdict: Compatibility,
    pub shared_keys: BTreeSet<KeyFingerprint>,
    /// Root keys both images chain up to. Informational only.
    pub shared_roots: BTreeSet<KeyFingerprint>,
    pub rationale: String,
    pub caveat: String,
}

/// MUTUAL iff the two signing-key sets intersect.
pub fn compare_images(a: &ImageRecord, b: &ImageRecord) -> CompatibilityVerdict {
    let shared_keys: BTreeSet<KeyFingerprint> = a.key_profile.intersection(&b.key_profile).copied().collect();
    let shared_roots: BTreeSet<KeyFingerprint> = a.root_keys.intersection(&b.root_keys).copied().collect();
    let (verdict, rationale) = if a.key_profile.is_empty() || b.key_profile.is_empty() {
        let which: Vec<&str> = [a, b]
            .iter()
            .filter(|r| r.key_profile.is_empty())
            .map(|r| r.image_id.as_str())
            .collect();
        (
            Compatibility::None,
            format!("no keys extracted from {}", which.join(" and ")),
        )
    } else if !shared_keys.is_empty() {
        (
            Compatibility::Mutual,
            format!("{} signing key(s) in common", shared_keys.len()),
        )
    } else if !shared_roots.is_empty() {
        (
            Compatibility::None,
            "different signing keys; chains share a root key only".to_string(),
        )
    } else {
        (Compatibility::None, "no signing key in common".to_string())
    };
    CompatibilityVerdict {
        verdict,
        shared_keys,
        shared_roots,
        rationale,
        caveat: API_CAVEAT.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityGroup {
    /// 1-based, in order of each group's smallest image id.
    pub group_id: usize,
    pub members: BTreeSet<String>,
    /// Keys held by at least two members.
    pub shared_keys: BTreeSet<KeyFingerprint>,
}

/// Connected components of the MUTUAL relation. Every record lands in exactly
/// one group; records without keys form singleton groups.
pub fn cluster_images(records: &[ImageRecord]) -> Vec<CompatibilityGroup> {
    let mut key_index: BTreeMap<KeyFingerprint, usize> = BTreeMap::new();
    for r in records {
        for k in &r.key_profile {
            let next = records.len() + key_index.len();
            key_index.entry(*k).or_insert(next);
        }
    }
    let mut sets = DisjointSet::new(records.len() + key_index.len());
    for (i, r) in records.iter().enumerate() {
        for k in &r.key_profile {
            sets.union(i, key_index[k]);
        }
    }

    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..records.len() {
        components.entry(sets.find(i)).or_default().push(i);
    }
    let mut groups: Vec<CompatibilityGroup> = components
        .into_values()
        .map(|idx| {
            let mut holders: BTreeMap<KeyFingerprint, usize> = BTreeMap::new();
            for &i in &idx {
                for k in &records[i].key_profile {
                    *holders.entry(*k).or_default() += 1;
                }
            }
            CompatibilityGroup {
                group_id: 0,
                members: idx.iter().map(|&i| records[i].image_id.clone()).collect(),
                shared_keys: holders.into_iter().filter(|(_, n)| *n > 1).map(|(k, _)| k).collect(),
            }
        })
        .collect();
    groups.sort_by(|a, b| a.members.first().cmp(&b.members.first()));
    for (i, g) in groups.iter_mut().enumerate() {
        g.group_id = i + 1;
    }
    groups
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RollbackExposure {
    NoSwId,
    SwIdVersionZero,
    SwIdVersioned,
}

impl fmt::Display for RollbackExposure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NoSwId => "NO_SW_ID",
            Self::SwIdVersionZero => "SW_ID_VERSION_ZERO",
            Self::SwIdVersioned => "SW_ID_VERSIONED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RollbackFlag {
    pub flag: RollbackExposure,
    /// SW_ID value as found in the certificate, uninterpreted.
    pub raw_sw_id: Option<String>,
    /// Upper 32 bits of SW_ID, read as the anti-rollback version.
    pub version: Option<u32>,
    /// Lower 32 bits of SW_ID, read as the image type.
    pub image_type: Option<u32>,
    /// SW_ID values that were not 16 hex digits.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub malformed: Vec<String>,
}

/// Reads the anti-rollback version out of the SW_ID of the record's signing
/// certificates. With several signing certificates the lowest version wins.
pub fn rollback_exposure(record: &ImageRecord) -> RollbackFlag {
    let mut malformed = Vec::new();
    let mut best: Option<(u32, u32, &str)> = None;
    for field in &record.sw_id_fields {
        let value = &field.value_hex;
        match (value.len() == 16)
            .then(|| u64::from_str_radix(value, 16).ok())
            .flatten()
        {
            Some(v) => {
                let (version, image_type) = ((v >> 32) as u32, v as u32);
                if best.is_none_or(|(b, _, _)| version < b) {
                    best = Some((version, image_type, value));
                }
            }
            None => malformed.push(field.raw_text.clone()),
        }
    }
    match best {
        None => RollbackFlag {
            flag: RollbackExposure::NoSwId,
            raw_sw_id: None,
            version: None,
            image_type: None,
            malformed,
        },
        Some((version, image_type, raw)) => RollbackFlag {
            flag: if version == 0 {
                RollbackExposure::SwIdVersionZero
            } else {
                RollbackExposure::SwIdVersioned
            },
            raw_sw_id: Some(raw.to_string()),
            version: Some(version),
            image_type: Some(image_type),
            malformed,
        },
    }
}
