// Licensed under the Apache-2.0 license

mod common;

use std::fs;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use tzaudit::catalog::{load_catalog, Catalog, CatalogError, CATALOG_SCHEMA_VERSION};

#[test]
fn appended_records_reload_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.ndjson");
    let mut rng = ChaCha20Rng::seed_from_u64(99);
    let mut catalog = Catalog::open(&path).unwrap();
    for i in 0..200 {
        catalog
            .insert(common::scanned_record(&mut rng, &format!("fw{i:03}")), false)
            .unwrap();
    }
    let loaded = load_catalog(&path).unwrap();
    assert!(loaded.diagnostics.is_empty());
    assert_eq!(loaded, catalog);
    assert!(loaded.records.iter().all(|r| r.certificate_count() == 1));
}

#[test]
fn foreign_schema_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.ndjson");
    fs::write(&path, "{\"schema_version\":\"tzaudit-catalog/9\"}\n").unwrap();
    match load_catalog(&path) {
        Err(CatalogError::SchemaVersionMismatch { found, expected }) => {
            assert_eq!(found, "tzaudit-catalog/9");
            assert_eq!(expected, CATALOG_SCHEMA_VERSION);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn truncated_last_line_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.ndjson");
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let mut catalog = Catalog::open(&path).unwrap();
    for i in 0..3 {
        catalog
            .insert(common::scanned_record(&mut rng, &format!("fw{i}")), false)
            .unwrap();
    }
    // a crash mid-append leaves half a line behind
    let mut f = fs::OpenOptions::new().append(true).open(&path).unwrap();
    f.write_all(b"{\"image_id\":\"half").unwrap();
    let loaded = load_catalog(&path).unwrap();
    assert_eq!(loaded.records.len(), 3);
    assert_eq!(loaded.diagnostics.len(), 1);
    assert_eq!(loaded.diagnostics[0].line, 5);
}
