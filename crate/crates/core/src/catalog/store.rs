// Licensed under the Apache-2.0 license

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CatalogError, ImageRecord, TrustletPackage};

/// First line of every catalog file.
pub const CATALOG_SCHEMA_VERSION: &str = "tzaudit-catalog/1";

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    schema_version: String,
    #[serde(default)]
    fingerprint_digest: String,
}

impl Header {
    fn current() -> Self {
        Self {
            schema_version: CATALOG_SCHEMA_VERSION.to_string(),
            fingerprint_digest: "sha256".to_string(),
        }
    }
}

/// A record line that could not be decoded and was skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadDiagnostic {
    /// 1-based line number in the catalog file.
    pub line: usize,
    pub message: String,
}

/// Newline-delimited JSON store of [`ImageRecord`]s: a schema header line
/// followed by one record per line, in insertion order. Every mutation is
/// written through to `storage_path`.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub records: Vec<ImageRecord>,
    pub storage_path: PathBuf,
    pub diagnostics: Vec<LoadDiagnostic>,
}

impl PartialEq for Catalog {
    fn eq(&self, other: &Self) -> bool {
        self.records == other.records && self.storage_path == other.storage_path
    }
}

fn io_err(path: &Path, e: io::Error) -> CatalogError {
    CatalogError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Reads a catalog file. Undecodable record lines are skipped and reported
/// in [`Catalog::diagnostics`].
pub fn load_catalog(storage_path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
    let path = storage_path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_catalog(&text, path)
}

fn parse_catalog(text: &str, path: &Path) -> Result<Catalog, CatalogError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let mut catalog = Catalog {
        records: Vec::new(),
        storage_path: path.to_path_buf(),
        diagnostics: Vec::new(),
    };
    let Some((_, header)) = lines.next() else {
        return Ok(catalog);
    };
    let header: Header = serde_json::from_str(header).map_err(|_| CatalogError::SchemaVersionMismatch {
        found: "<missing header>".into(),
        expected: CATALOG_SCHEMA_VERSION.into(),
    })?;
    if header.schema_version != CATALOG_SCHEMA_VERSION {
        return Err(CatalogError::SchemaVersionMismatch {
            found: header.schema_version,
            expected: CATALOG_SCHEMA_VERSION.into(),
        });
    }

    let rest: Vec<(usize, &str)> = lines.collect();
    let parsed: Vec<Result<ImageRecord, LoadDiagnostic>> = rest
        .par_iter()
        .map(|&(idx, line)| {
            serde_json::from_str(line).map_err(|e| LoadDiagnostic {
                line: idx + 1,
                message: e.to_string(),
            })
        })
        .collect();
    for item in parsed {
        match item {
            Ok(record) if catalog.get(&record.image_id).is_some() => catalog.diagnostics.push(LoadDiagnostic {
                line: 0,
                message: format!("duplicate image id {:?} ignored", record.image_id),
            }),
            Ok(record) => catalog.records.push(record),
            Err(d) => catalog.diagnostics.push(d),
        }
    }
    Ok(catalog)
}

impl Catalog {
    /// Loads `storage_path`, or starts an empty catalog there if the file does
    /// not exist yet.
    pub fn open(storage_path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let path = storage_path.as_ref();
        match fs::read_to_string(path) {
            Ok(text) => parse_catalog(&text, path),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Self {
                records: Vec::new(),
                storage_path: path.to_path_buf(),
                diagnostics: Vec::new(),
            }),
            Err(e) => Err(io_err(path, e)),
        }
    }

    pub fn get(&self, image_id: &str) -> Option<&ImageRecord> {
        self.records.iter().find(|r| r.image_id == image_id)
    }

    pub fn require(&self, image_id: &str) -> Result<&ImageRecord, CatalogError> {
        self.get(image_id)
            .ok_or_else(|| CatalogError::UnknownImageId(image_id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Scans `package`, appends the resulting record, and persists it.
    ///
    /// With `replace`, an existing record with the same id is overwritten in
    /// place; otherwise a duplicate id is an error.
    pub fn ingest(
        &mut self,
        package: &TrustletPackage,
        image_id: &str,
        build_label: &str,
        vendor_hint: Option<&str>,
        replace: bool,
    ) -> Result<&ImageRecord, CatalogError> {
        if !replace && self.get(image_id).is_some() {
            return Err(CatalogError::DuplicateImageId(image_id.to_string()));
        }
        let record = ImageRecord::from_package(package, image_id, build_label, vendor_hint);
        self.insert(record, replace)
    }

    /// Adds an already built record and persists it.
    pub fn insert(&mut self, record: ImageRecord, replace: bool) -> Result<&ImageRecord, CatalogError> {
        match self.records.iter().position(|r| r.image_id == record.image_id) {
            Some(_) if !replace => Err(CatalogError::DuplicateImageId(record.image_id)),
            Some(i) => {
                if self.records[i] != record {
                    self.records[i] = record;
                    self.save()?;
                }
                Ok(&self.records[i])
            }
            None => {
                self.append(&record)?;
                self.records.push(record);
                Ok(self.records.last().unwrap())
            }
        }
    }

    fn append(&self, record: &ImageRecord) -> Result<(), CatalogError> {
        let path = &self.storage_path;
        let has_header = fs::metadata(path).map(|m| m.len() > 0).unwrap_or(false);
        if !has_header {
            let mut all = self.records.clone();
            all.push(record.clone());
            return write_all(path, &all);
        }
        let mut line = serde_json::to_string(record).expect("records serialize");
        line.push('\n');
        OpenOptions::new()
            .append(true)
            .open(path)
            .and_then(|mut f| f.write_all(line.as_bytes()))
            .map_err(|e| io_err(path, e))
    }

    /// Rewrites the whole file (header plus every record).
    pub fn save(&self) -> Result<(), CatalogError> {
        write_all(&self.storage_path, &self.records)
    }

    pub fn to_ndjson(&self) -> String {
        render(&self.records)
    }
}

fn render(records: &[ImageRecord]) -> String {
    let mut out = serde_json::to_string(&Header::current()).expect("header serializes");
    out.push('\n');
    let lines: Vec<String> = records
        .par_iter()
        .map(|r| serde_json::to_string(r).expect("records serialize"))
        .collect();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn write_all(path: &Path, records: &[ImageRecord]) -> Result<(), CatalogError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    let tmp = path.with_extension("ndjson.tmp");
    fs::write(&tmp, render(records)).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}
