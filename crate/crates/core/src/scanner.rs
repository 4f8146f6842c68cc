// Licensed under the Apache-2.0 license

//! Carving of embedded DER certificates from firmware images.
//!
//! A certificate starts with a SEQUENCE using a two-octet long-form length
//! whose first child is again such a SEQUENCE (the TBSCertificate):
//! `30 82 ?? ?? 30 82`. Every pattern hit becomes a candidate and is only
//! accepted after a full certificate parse of exactly the byte range its DER
//! header declares.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::der_x509::{parse_certificate_at, to_pem, DerError, ParsedCertificate};

/// Fixed bytes of the scan pattern; positions 2 and 3 are wildcards.
pub const SCAN_PATTERN: [Option<u8>; 6] = [Some(0x30), Some(0x82), None, None, Some(0x30), Some(0x82)];

/// Candidates declaring more than this many bytes are reported but not parsed.
pub const MAX_CANDIDATE_LEN: usize = 64 * 1024;

/// Images at least this large are searched in parallel windows.
const PARALLEL_THRESHOLD: usize = 1 << 20;
const WINDOW_LEN: usize = 256 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CandidateStatus {
    Validated,
    ParseFailed,
    Truncated,
    Oversize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCandidate {
    pub offset: usize,
    pub declared_total_len: usize,
    pub status: CandidateStatus,
    /// Parse error for rejected candidates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Distance to the next pattern hit, recorded for rejected candidates.
    /// Carving up to the next hit is the manual hex-editor approach; it is
    /// kept only as a hint for analysts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub next_hit_distance: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub image_id: String,
    pub image_len: usize,
    pub candidates: Vec<CertificateCandidate>,
    pub certificates: Vec<ParsedCertificate>,
}

impl ScanResult {
    pub fn validated(&self) -> impl Iterator<Item = &CertificateCandidate> {
        self.candidates
            .iter()
            .filter(|c| c.status == CandidateStatus::Validated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Der,
    Pem,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Der => "der",
            Self::Pem => "pem",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScanError {
    #[error("certificate index {index} out of range ({count} certificates)")]
    IndexOutOfRange { index: usize, count: usize },
}

#[inline]
fn is_hit(window: &[u8]) -> bool {
    window[0] == 0x30 && window[1] == 0x82 && window[4] == 0x30 && window[5] == 0x82
}

/// Every offset where the six-byte pattern matches, ascending.
pub fn find_pattern_hits(image: &[u8]) -> Vec<usize> {
    if image.len() >= PARALLEL_THRESHOLD {
        return find_pattern_hits_windowed(image, WINDOW_LEN);
    }
    image
        .windows(6)
        .enumerate()
        .filter(|(_, w)| is_hit(w))
        .map(|(i, _)| i)
        .collect()
}

/// Window-sharded search. Each window owns the hits that start inside it and
/// reads 5 bytes past its end, so hits straddling a boundary are found
/// exactly once.
pub fn find_pattern_hits_windowed(image: &[u8], window_len: usize) -> Vec<usize> {
    assert!(window_len > 0, "window length must be positive");
    let starts: Vec<usize> = (0..image.len()).step_by(window_len).collect();
    let mut per_window: Vec<Vec<usize>> = starts
        .par_iter()
        .map(|&start| {
            let end = (start + window_len + 5).min(image.len());
            image[start..end]
                .windows(6)
                .enumerate()
                .filter(|(i, w)| *i < window_len && is_hit(w))
                .map(|(i, _)| start + i)
                .collect()
        })
        .collect();
    let mut hits = Vec::with_capacity(per_window.iter().map(Vec::len).sum());
    for chunk in per_window.iter_mut() {
        hits.append(chunk);
    }
    hits
}

enum Probe {
    Validated(Box<ParsedCertificate>),
    Rejected(CandidateStatus, Option<DerError>),
}

fn probe(image: &[u8], offset: usize, declared: usize) -> Probe {
    if declared > MAX_CANDIDATE_LEN {
        return Probe::Rejected(CandidateStatus::Oversize, None);
    }
    if offset + declared > image.len() {
        return Probe::Rejected(CandidateStatus::Truncated, None);
    }
    match parse_certificate_at(&image[offset..offset + declared], offset) {
        Ok(cert) => Probe::Validated(Box::new(cert)),
        Err(e) => Probe::Rejected(CandidateStatus::ParseFailed, Some(e)),
    }
}

/// Finds and validates every embedded certificate in `image`.
///
/// Hits are examined in offset order. A hit whose declared range lies inside
/// an already validated certificate is dropped; every other hit is kept as a
/// candidate with its status.
pub fn scan_image(image: &[u8], image_id: &str) -> ScanResult {
    let hits = find_pattern_hits(image);
    let declared: Vec<usize> = hits
        .iter()
        .map(|&o| 4 + u16::from_be_bytes([image[o + 2], image[o + 3]]) as usize)
        .collect();
    let probes: Vec<Probe> = hits
        .par_iter()
        .zip(declared.par_iter())
        .map(|(&o, &len)| probe(image, o, len))
        .collect();

    let mut candidates = Vec::new();
    let mut certificates = Vec::new();
    let mut validated_ranges: Vec<(usize, usize)> = Vec::new();
    for (i, probe) in probes.into_iter().enumerate() {
        let (offset, len) = (hits[i], declared[i]);
        let inside_validated = validated_ranges
            .iter()
            .any(|&(start, end)| start < offset && offset + len <= end);
        if inside_validated {
            continue;
        }
        match probe {
            Probe::Validated(cert) => {
                validated_ranges.push((offset, offset + len));
                candidates.push(CertificateCandidate {
                    offset,
                    declared_total_len: len,
                    status: CandidateStatus::Validated,
                    error: None,
                    next_hit_distance: None,
                });
                certificates.push(*cert);
            }
            Probe::Rejected(status, err) => candidates.push(CertificateCandidate {
                offset,
                declared_total_len: len,
                status,
                error: err.map(|e| e.to_string()),
                next_hit_distance: hits.get(i + 1).map(|next| next - offset),
            }),
        }
    }

    ScanResult {
        image_id: image_id.to_string(),
        image_len: image.len(),
        candidates,
        certificates,
    }
}

/// The `index`-th validated certificate as DER or PEM bytes.
pub fn export_certificate(result: &ScanResult, index: usize, format: ExportFormat) -> Result<Vec<u8>, ScanError> {
    let cert = result.certificates.get(index).ok_or(ScanError::IndexOutOfRange {
        index,
        count: result.certificates.len(),
    })?;
    Ok(match format {
        ExportFormat::Der => cert.raw_der.clone(),
        ExportFormat::Pem => to_pem(&cert.raw_der).into_bytes(),
    })
}

/// `<image_id>.cert<N>.<der|pem>`, with path separators in the id replaced.
pub fn export_file_name(image_id: &str, index: usize, format: ExportFormat) -> String {
    let safe: String = image_id
        .chars()
        .map(|c| if matches!(c, '/' | '\\') { '_' } else { c })
        .collect();
    format!("{safe}.cert{index}.{}", format.extension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::der_x509::{from_pem, parse_certificate};
    use crate::synth::{self, fixtures};

    fn brute_force_hits(image: &[u8]) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..image.len() {
            let matches = SCAN_PATTERN.iter().enumerate().all(|(k, p)| match p {
                Some(b) => image.get(i + k) == Some(b),
                None => i + k < image.len(),
            });
            if matches {
                out.push(i);
            }
        }
        out
    }

    #[test]
    fn zero_image_has_no_hits() {
        assert!(find_pattern_hits(&[0u8; 4096]).is_empty());
        assert!(find_pattern_hits(&[]).is_empty());
        assert!(find_pattern_hits(&[0x30, 0x82, 0, 0, 0x30]).is_empty());
    }

    #[test]
    fn nexus6_region_hits() {
        let image = fixtures::nexus6_tz_image();
        let hits = find_pattern_hits(&image);
        assert!(hits.contains(&fixtures::NEXUS6_LEAF_OFFSET));
        assert!(!hits.contains(&fixtures::NEXUS6_SUBJECT_OFFSET));
        assert!(!hits.contains(&(fixtures::NEXUS6_SUBJECT_OFFSET + 1)));
    }

    #[test]
    fn windowed_search_matches_brute_force() {
        let mut image = synth::filler(10_000, "windows");
        // plant hits straddling every window boundary position
        for at in [0usize, 95, 96, 97, 98, 99, 100, 4000, 9994] {
            image[at..at + 6].copy_from_slice(&[0x30, 0x82, 0x11, 0x22, 0x30, 0x82]);
        }
        let expected = brute_force_hits(&image);
        for window in [1, 7, 100, 4096, 20_000] {
            assert_eq!(find_pattern_hits_windowed(&image, window), expected, "window {window}");
        }
        assert_eq!(find_pattern_hits(&image), expected);
    }

    #[test]
    fn nexus6_image_scan() {
        let image = fixtures::nexus6_tz_image();
        let result = scan_image(&image, "tz");
        assert_eq!(result.certificates.len(), 3);
        let first = &result.candidates[0];
        assert_eq!(first.offset, 0x1348);
        assert_eq!(first.declared_total_len, 1224);
        assert_eq!(first.status, CandidateStatus::Validated);
        assert_eq!(
            result.certificates[0].subject.common_name(),
            Some("Qualcomm Platform Signing Application User")
        );
        // back-to-back chain members are all found
        assert_eq!(result.candidates[1].offset, 0x1348 + 1224);
    }

    #[test]
    fn samsung_image_scan() {
        let result = scan_image(&fixtures::samsung_tz_mbn(), "tz.mbn");
        let first = &result.candidates[0];
        assert_eq!((first.offset, first.declared_total_len), (0x1308, 1257));
        assert_eq!(first.status, CandidateStatus::Validated);
        assert_eq!(result.certificates.len(), 3);
    }

    #[test]
    fn decoy_is_parse_failed() {
        let mut image = vec![0u8; 2048];
        image[100..106].copy_from_slice(&[0x30, 0x82, 0x01, 0x00, 0x30, 0x82]);
        let result = scan_image(&image, "decoy");
        assert_eq!(result.candidates.len(), 1);
        assert_eq!(result.candidates[0].status, CandidateStatus::ParseFailed);
        assert!(result.candidates[0].error.is_some());
        assert!(result.certificates.is_empty());
    }

    #[test]
    fn truncated_and_oversize() {
        let mut image = vec![0u8; 64];
        image[10..16].copy_from_slice(&[0x30, 0x82, 0x01, 0x00, 0x30, 0x82]);
        let result = scan_image(&image, "t");
        assert_eq!(result.candidates[0].status, CandidateStatus::Truncated);

        let mut image = vec![0u8; 70_000];
        image[0..6].copy_from_slice(&[0x30, 0x82, 0xFF, 0xFF, 0x30, 0x82]);
        let result = scan_image(&image, "o");
        assert_eq!(result.candidates[0].declared_total_len, 65_539);
        assert_eq!(result.candidates[0].status, CandidateStatus::Oversize);
    }

    #[test]
    fn trailing_cert_at_end_of_image() {
        let leaf = fixtures::nexus6_leaf();
        let result = scan_image(&leaf, "exact");
        assert_eq!(result.certificates.len(), 1);
        let cut = &leaf[..leaf.len() - 1];
        let result = scan_image(cut, "cut");
        assert_eq!(result.candidates[0].status, CandidateStatus::Truncated);
    }

    #[test]
    fn contained_hit_is_suppressed() {
        // a certificate whose subject contains a nested fake certificate header
        let mut spec = fixtures::nexus6_leaf_spec("nested");
        spec.tbs_content_len = None;
        spec.extensions.push(crate::synth::Extension {
            oid: "2.999.2".into(),
            critical: false,
            value: vec![
                0x30, 0x82, 0x00, 0x10, 0x30, 0x82, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
            ],
        });
        let cert = spec.encode();
        let mut image = vec![0u8; 16];
        image.extend(&cert);
        image.extend([0u8; 16]);
        let hits = find_pattern_hits(&image);
        assert!(hits.len() >= 2);
        let result = scan_image(&image, "nested");
        assert_eq!(result.candidates.len(), 1);
        assert_eq!(result.certificates.len(), 1);
    }

    #[test]
    fn overlapping_decoy_before_certificate() {
        // a decoy whose declared range covers a real certificate
        let leaf = fixtures::nexus6_leaf();
        let mut image = vec![0u8; 8];
        image.extend([0x30, 0x82, 0x06, 0x00, 0x30, 0x82, 0xFF, 0xFF, 0x00, 0x00]);
        image.extend(&leaf);
        image.extend(vec![0u8; 0x700]);
        let result = scan_image(&image, "overlap");
        assert_eq!(result.candidates.len(), 2);
        assert_eq!(result.candidates[0].status, CandidateStatus::ParseFailed);
        assert_eq!(result.candidates[0].next_hit_distance, Some(10));
        assert_eq!(result.candidates[1].offset, 18);
        assert_eq!(result.certificates.len(), 1);
    }

    #[test]
    fn export_round_trip() {
        let result = scan_image(&fixtures::samsung_tz_mbn(), "tz.mbn");
        let der = export_certificate(&result, 0, ExportFormat::Der).unwrap();
        let mut reparsed = parse_certificate(&der).unwrap();
        reparsed.source_offset = result.certificates[0].source_offset;
        assert_eq!(reparsed, result.certificates[0]);

        let pem = export_certificate(&result, 0, ExportFormat::Pem).unwrap();
        assert_eq!(from_pem(std::str::from_utf8(&pem).unwrap()), vec![der]);

        assert_eq!(
            export_certificate(&result, 3, ExportFormat::Der),
            Err(ScanError::IndexOutOfRange { index: 3, count: 3 })
        );
        assert_eq!(export_file_name("a/tz", 2, ExportFormat::Pem), "a_tz.cert2.pem");
    }
}
