// Licensed under the Apache-2.0 license

//! Aggregate JSON report and the plain-text renderings used by the CLI.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::catalog::ImageRecord;
use crate::compat::{
    cluster_images, rollback_exposure, CompatibilityGroup, CompatibilityVerdict, RollbackFlag, API_CAVEAT,
};
use crate::der_x509::{KeyFingerprint, OuAttributeField, ParsedCertificate};
use crate::scanner::{CandidateStatus, ScanResult};
use crate::sim::{ScenarioReport, ScenarioVerdict};

pub const REPORT_SCHEMA_VERSION: &str = "tzaudit-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Caveat attached to every rollback flag.
pub const ROLLBACK_CAVEAT: &str =
    "SW_ID exposure is reported from certificate metadata only; whether a device enforces it is unknown";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub offset: usize,
    pub length: usize,
    pub version: u8,
    pub serial: String,
    pub subject: String,
    pub issuer: String,
    pub not_before: DateTime<Utc>,
    pub not_after: DateTime<Utc>,
    pub key_fingerprint: KeyFingerprint,
    pub self_issued: bool,
    pub ou: Vec<OuAttributeField>,
}

impl From<&ParsedCertificate> for CertificateSummary {
    fn from(c: &ParsedCertificate) -> Self {
        Self {
            offset: c.source_offset,
            length: c.total_len,
            version: c.version,
            serial: c.serial_hex.clone(),
            subject: c.subject.to_string(),
            issuer: c.issuer.to_string(),
            not_before: c.not_before,
            not_after: c.not_after,
            key_fingerprint: c.key_fingerprint,
            self_issued: c.is_self_issued(),
            ou: c.ou_fields.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub image_id: String,
    pub image_len: usize,
    pub candidates: usize,
    pub rejected: usize,
    pub certificates: Vec<CertificateSummary>,
}

impl From<&ScanResult> for ScanSummary {
    fn from(r: &ScanResult) -> Self {
        let validated = r.validated().count();
        Self {
            image_id: r.image_id.clone(),
            image_len: r.image_len,
            candidates: r.candidates.len(),
            rejected: r.candidates.len() - validated,
            certificates: r.certificates.iter().map(CertificateSummary::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyProfileEntry {
    pub image_id: String,
    pub build_label: String,
    pub vendor_hint: String,
    pub signing_keys: BTreeSet<KeyFingerprint>,
    pub root_keys: BTreeSet<KeyFingerprint>,
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RollbackEntry {
    pub image_id: String,
    #[serde(flatten)]
    pub flag: RollbackFlag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub tool_version: String,
    pub scans: Vec<ScanSummary>,
    pub key_profiles: Vec<KeyProfileEntry>,
    pub groups: Vec<CompatibilityGroup>,
    pub rollback_flags: Vec<RollbackEntry>,
    pub scenarios: Vec<ScenarioReport>,
    pub caveats: Vec<String>,
}

impl Report {
    /// Builds a report over `records` (sorted by image id) and any scenario
    /// results.
    pub fn build(records: &[ImageRecord], scenarios: Vec<ScenarioReport>) -> Self {
        let mut sorted: Vec<&ImageRecord> = records.iter().collect();
        sorted.sort_by(|a, b| a.image_id.cmp(&b.image_id));
        Self {
            schema_version: REPORT_SCHEMA_VERSION.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            scans: sorted
                .iter()
                .flat_map(|r| r.scans.iter().map(ScanSummary::from))
                .collect(),
            key_profiles: sorted
                .iter()
                .map(|r| KeyProfileEntry {
                    image_id: r.image_id.clone(),
                    build_label: r.build_label.clone(),
                    vendor_hint: r.vendor_hint.clone(),
                    signing_keys: r.key_profile.clone(),
                    root_keys: r.root_keys.clone(),
                    fallback: r.key_profile_fallback,
                })
                .collect(),
            groups: cluster_images(records),
            rollback_flags: sorted
                .iter()
                .map(|r| RollbackEntry {
                    image_id: r.image_id.clone(),
                    flag: rollback_exposure(r),
                })
                .collect(),
            scenarios,
            caveats: vec![API_CAVEAT.to_string(), ROLLBACK_CAVEAT.to_string()],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn hex_preview(bytes: &[u8], n: usize) -> String {
    bytes
        .iter()
        .take(n)
        .map(|b| format!("{b:02X}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Hex-editor style listing: offset, leading bytes, status, decoded names.
pub fn render_scan_text(result: &ScanResult, image: &[u8]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: {} bytes, {} candidate(s), {} certificate(s)",
        result.image_id,
        result.image_len,
        result.candidates.len(),
        result.certificates.len()
    );
    let mut certs = result.certificates.iter();
    for cand in &result.candidates {
        let end = (cand.offset + 16).min(image.len());
        let preview = hex_preview(image.get(cand.offset..end).unwrap_or(&[]), 16);
        let _ = writeln!(
            out,
            "{:08X}  {:<47}  {:?} len={}",
            cand.offset, preview, cand.status, cand.declared_total_len
        );
        if cand.status == CandidateStatus::Validated {
            if let Some(c) = certs.next() {
                let _ = writeln!(out, "          subject: {}", c.subject);
                let _ = writeln!(out, "          issuer:  {}", c.issuer);
                let _ = writeln!(out, "          key:     {}", c.key_fingerprint);
                for ou in c.ou_fields.iter().filter(|f| f.is_structured()) {
                    let _ = writeln!(out, "          OU:      {}", ou.raw_text);
                }
            }
        } else if let Some(err) = &cand.error {
            let _ = writeln!(out, "          rejected: {err}");
        }
    }
    out
}

pub fn render_verdict_text(a: &str, b: &str, v: &CompatibilityVerdict) -> String {
    let mut out = format!("{a} <-> {b}: {}\n  {}\n", v.verdict, v.rationale);
    for k in &v.shared_keys {
        let _ = writeln!(out, "  shared key {k}");
    }
    let _ = writeln!(out, "  note: {}", v.caveat);
    out
}

pub fn render_groups_text(groups: &[CompatibilityGroup]) -> String {
    let mut out = String::new();
    for g in groups {
        let members: Vec<&str> = g.members.iter().map(String::as_str).collect();
        let _ = writeln!(out, "group {}: {}", g.group_id, members.join(", "));
        for k in &g.shared_keys {
            let _ = writeln!(out, "  shared key {}", k.short());
        }
    }
    out
}

pub fn render_scenario_text(r: &ScenarioReport) -> String {
    let mut out = format!("scenario {} (rollback {:?}", r.name, r.rollback);
    if r.per_version_keys {
        out.push_str(", per-version keys");
    }
    out.push_str(")\n");
    for e in &r.events {
        let verdict = e.verdict.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(out, "  [{}] {:<13} {:<14} {}", e.index, e.event, verdict, e.detail);
        if let Some(boot) = &e.boot {
            for s in &boot.stages {
                let flag = if s.vulnerable { "  (vulnerable)" } else { "" };
                let _ = writeln!(
                    out,
                    "        {} -> {} v{}: {}{}",
                    s.loader, s.artifact, s.version, s.verdict, flag
                );
            }
        }
    }
    for d in &r.downgrades {
        let _ = writeln!(
            out,
            "  downgrade: {} v{} -> v{} accepted at event {}{}",
            d.name,
            d.from_version,
            d.to_version,
            d.accepted_event,
            if d.vulnerable { ", vulnerable build running" } else { "" }
        );
    }
    let _ = writeln!(out, "verdict: {}", r.verdict);
    out
}

pub fn exit_code_for(verdict: ScenarioVerdict) -> i32 {
    match verdict {
        ScenarioVerdict::DowngradePossible => 5,
        ScenarioVerdict::Safe => 0,
    }
}
