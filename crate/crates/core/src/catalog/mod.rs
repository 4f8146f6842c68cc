// Licensed under the Apache-2.0 license

//! Trustlet file classification, package assembly, and the file-backed
//! catalog of scanned images.

mod layout;
mod package;
mod store;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use layout::{classify_path, VendorLayout};
pub use package::{assemble_package, PackageFile, PackageWarning, TrustletPackage};
pub use store::{load_catalog, Catalog, LoadDiagnostic, CATALOG_SCHEMA_VERSION};

use crate::compat::signing_profile;
use crate::der_x509::{KeyFingerprint, OuAttributeField, OuFieldName, ParsedCertificate};
use crate::scanner::{scan_image, ScanResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no files given")]
    EmptyPackage,
    #[error("files do not form one package: {detail}")]
    MixedLayouts { detail: String },
    #[error("split image {stem:?} has no .mdt file")]
    MissingMdt { stem: String },
    #[error("{path} duplicates another part of the package")]
    DuplicatePart { path: String },
    #[error("image id {0:?} is already in the catalog")]
    DuplicateImageId(String),
    #[error("unknown image id {0:?}")]
    UnknownImageId(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("catalog schema {found:?} is not supported (expected {expected:?})")]
    SchemaVersionMismatch { found: String, expected: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceFile {
    pub path: String,
    pub len: usize,
    pub sha256: String,
}

/// Where a record's bytes came from. The bytes themselves are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceRef {
    pub name: String,
    pub layout: VendorLayout,
    pub origin_path: String,
    pub files: Vec<SourceFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<PackageWarning>,
}

impl Default for SourceRef {
    fn default() -> Self {
        Self {
            name: String::new(),
            layout: VendorLayout::Unknown,
            origin_path: String::new(),
            files: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

/// One scanned firmware image or trustlet package.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRecord {
    pub image_id: String,
    pub vendor_hint: String,
    pub build_label: String,
    pub source: SourceRef,
    /// SHA-256 over the per-file digests, in package order.
    pub content_digest: String,
    /// One scan per package file.
    pub scans: Vec<ScanResult>,
    /// Fingerprints of the signing (leaf) certificates.
    pub key_profile: BTreeSet<KeyFingerprint>,
    /// Fingerprints of self-issued roots that terminate a chain.
    #[serde(default)]
    pub root_keys: BTreeSet<KeyFingerprint>,
    /// Set when no leaf could be identified and `key_profile` holds every key.
    #[serde(default)]
    pub key_profile_fallback: bool,
    pub sw_id_fields: Vec<OuAttributeField>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain_diagnostics: Vec<String>,
}

impl ImageRecord {
    /// Scans every file of `package` and derives the key profile.
    pub fn from_package(
        package: &TrustletPackage,
        image_id: &str,
        build_label: &str,
        vendor_hint: Option<&str>,
    ) -> Self {
        let multi = package.files.len() > 1;
        let scans: Vec<ScanResult> = package
            .files
            .par_iter()
            .map(|f| {
                let id = if multi {
                    format!("{image_id}/{}", layout::basename(&f.path))
                } else {
                    image_id.to_string()
                };
                scan_image(&f.bytes, &id)
            })
            .collect();

        let files: Vec<SourceFile> = package
            .files
            .iter()
            .map(|f| SourceFile {
                path: f.path.clone(),
                len: f.bytes.len(),
                sha256: hex::encode(Sha256::digest(&f.bytes)),
            })
            .collect();
        let mut hasher = Sha256::new();
        for f in &files {
            hasher.update(f.sha256.as_bytes());
        }

        let certs: Vec<ParsedCertificate> = scans.iter().flat_map(|s| s.certificates.iter().cloned()).collect();
        let profile = signing_profile(&certs);
        let sw_id_fields = profile
            .signing_certs
            .iter()
            .filter_map(|&i| certs[i].ou_field(&OuFieldName::SwId).cloned())
            .collect();

        Self {
            image_id: image_id.to_string(),
            vendor_hint: vendor_hint.unwrap_or(package.layout.vendor_hint()).to_string(),
            build_label: build_label.to_string(),
            source: SourceRef {
                name: package.name.clone(),
                layout: package.layout,
                origin_path: package.origin_path.clone(),
                files,
                warnings: package.warnings.clone(),
            },
            content_digest: hex::encode(hasher.finalize()),
            scans,
            key_profile: profile.signing_keys,
            root_keys: profile.root_keys,
            key_profile_fallback: profile.fallback,
            sw_id_fields,
            chain_diagnostics: profile.diagnostics,
        }
    }

    pub fn certificates(&self) -> impl Iterator<Item = &ParsedCertificate> {
        self.scans.iter().flat_map(|s| s.certificates.iter())
    }

    pub fn certificate_count(&self) -> usize {
        self.scans.iter().map(|s| s.certificates.len()).sum()
    }
}
