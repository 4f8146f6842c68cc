// Licensed under the Apache-2.0 license

use std::io;

use serde::{Deserialize, Serialize};

use super::layout::{basename, classify_path, segment_number, split_part, VendorLayout};
use super::CatalogError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackageFile {
    pub path: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PackageWarning {
    /// A split image with only its `.mdt` part.
    NoSegments,
    /// Segment numbers are not 0, 1, 2, ... without gaps.
    NonContiguousSegments { missing: Vec<u32> },
}

/// A trustlet or TEE OS image as one or more files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrustletPackage {
    pub name: String,
    pub layout: VendorLayout,
    /// `.mdt` first, then segments in numeric order.
    pub files: Vec<PackageFile>,
    pub origin_path: String,
    pub warnings: Vec<PackageWarning>,
}

impl TrustletPackage {
    /// A single file treated as its own package.
    pub fn single(path: &str, bytes: Vec<u8>) -> Self {
        let name = basename(path);
        let layout = classify_path(path);
        let stem = match layout {
            VendorLayout::TrustonicTlbin | VendorLayout::HuaweiSec => name.rsplit_once('.').map_or(name, |(s, _)| s),
            _ => name,
        };
        Self {
            name: stem.to_string(),
            layout,
            files: vec![PackageFile {
                path: path.to_string(),
                bytes,
            }],
            origin_path: parent_dir(path).to_string(),
            warnings: Vec::new(),
        }
    }

    pub fn total_len(&self) -> usize {
        self.files.iter().map(|f| f.bytes.len()).sum()
    }
}

fn parent_dir(path: &str) -> &str {
    let name = basename(path);
    path[..path.len() - name.len()].trim_end_matches(['/', '\\'])
}

/// Groups the files of one trustlet into a package, loading each file's
/// bytes through `load`.
///
/// Split images must share a stem and include exactly one `.mdt`; every other
/// layout is a single file.
pub fn assemble_package<F>(paths: &[&str], mut load: F) -> Result<TrustletPackage, CatalogError>
where
    F: FnMut(&str) -> io::Result<Vec<u8>>,
{
    let first = *paths.first().ok_or(CatalogError::EmptyPackage)?;
    let layout = classify_path(first);
    let mut layouts: Vec<VendorLayout> = paths.iter().map(|p| classify_path(p)).collect();
    layouts.dedup();
    if layouts.len() > 1 {
        return Err(CatalogError::MixedLayouts {
            detail: format!(
                "layouts {}",
                layouts.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")
            ),
        });
    }
    let read = |load: &mut F, p: &str| {
        load(p).map_err(|e| CatalogError::Io {
            path: p.to_string(),
            message: e.to_string(),
        })
    };

    if layout != VendorLayout::QcSplit {
        if paths.len() > 1 {
            return Err(CatalogError::MixedLayouts {
                detail: format!("{layout} packages consist of a single file, got {}", paths.len()),
            });
        }
        let bytes = read(&mut load, first)?;
        return Ok(TrustletPackage::single(first, bytes));
    }

    let (stem, _) = split_part(basename(first)).expect("classified as split image");
    let mut mdt: Option<&str> = None;
    let mut segments: Vec<(u32, &str)> = Vec::new();
    for &path in paths {
        let (s, ext) = split_part(basename(path)).expect("classified as split image");
        if s != stem {
            return Err(CatalogError::MixedLayouts {
                detail: format!("stems {stem:?} and {s:?} differ"),
            });
        }
        if ext == "mdt" {
            if mdt.replace(path).is_some() {
                return Err(CatalogError::DuplicatePart { path: path.to_string() });
            }
        } else {
            let n = segment_number(ext).expect("segment extension");
            if segments.iter().any(|(m, _)| *m == n) {
                return Err(CatalogError::DuplicatePart { path: path.to_string() });
            }
            segments.push((n, path));
        }
    }
    let mdt = mdt.ok_or_else(|| CatalogError::MissingMdt { stem: stem.to_string() })?;
    segments.sort_unstable();

    let mut warnings = Vec::new();
    if segments.is_empty() {
        warnings.push(PackageWarning::NoSegments);
    } else {
        let last = segments.last().unwrap().0;
        let missing: Vec<u32> = (0..last).filter(|n| !segments.iter().any(|(m, _)| m == n)).collect();
        if !missing.is_empty() {
            warnings.push(PackageWarning::NonContiguousSegments { missing });
        }
    }

    let mut files = vec![PackageFile {
        path: mdt.to_string(),
        bytes: read(&mut load, mdt)?,
    }];
    for (_, path) in segments {
        files.push(PackageFile {
            path: path.to_string(),
            bytes: read(&mut load, path)?,
        });
    }
    Ok(TrustletPackage {
        name: stem.to_string(),
        layout,
        files,
        origin_path: parent_dir(mdt).to_string(),
        warnings,
    })
}
