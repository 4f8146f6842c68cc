// Licensed under the Apache-2.0 license

//! Build an NDJSON catalog from a few firmware layouts and read it back.
//!
//! ```text
//! cargo run --example trustlet_catalog -- /tmp/catalog.ndjson
//! ```

use std::collections::BTreeMap;
use std::error::Error;

use tzaudit::catalog::{assemble_package, classify_path, load_catalog, Catalog, TrustletPackage};
use tzaudit::synth::{filler, fixtures};

fn main() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let path = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| dir.path().join("catalog.ndjson"));

    for name in [
        "tz.mbn",
        "widevine.mdt",
        "widevine.b03",
        "07060000000000000000000000000000.tlbin",
        "6b9fd5d8-13b4-4e1a-8d4f-5fe0b7b4e5a1.sec",
        "keymaster",
    ] {
        println!("{name:<44} {}", classify_path(name));
    }

    // a split Qualcomm trustlet: the chain sits in the .mdt, code in .bNN
    let mut mdt = filler(0x80, "mdt");
    mdt.extend(fixtures::nexus6_leaf());
    mdt.extend(fixtures::nexus6_attestation_ca());
    mdt.extend(fixtures::nexus6_root());
    let files: BTreeMap<&str, Vec<u8>> = BTreeMap::from([
        ("nexus6/widevine.mdt", mdt),
        ("nexus6/widevine.b00", filler(0x400, "b00")),
        ("nexus6/widevine.b01", filler(0x400, "b01")),
    ]);
    let split = assemble_package(
        &["nexus6/widevine.b01", "nexus6/widevine.mdt", "nexus6/widevine.b00"],
        |p| {
            files
                .get(p)
                .cloned()
                .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::NotFound, p.to_string()))
        },
    )?;

    let mut catalog = Catalog::open(&path)?;
    catalog.ingest(&split, "nexus6-widevine", "N6F26Y", None, true)?;
    catalog.ingest(
        &TrustletPackage::single("nexus6/tz", fixtures::nexus6_tz_image()),
        "nexus6-tz",
        "N6F26Y",
        None,
        true,
    )?;
    catalog.ingest(
        &TrustletPackage::single("s7/tz.mbn", fixtures::samsung_tz_mbn()),
        "s7-tz",
        "G930U",
        Some("samsung"),
        true,
    )?;

    let reloaded = load_catalog(&path)?;
    assert_eq!(reloaded, catalog);
    println!("\n{} records in {}", reloaded.len(), path.display());
    for r in &reloaded.records {
        let files: Vec<&str> = r.source.files.iter().map(|f| f.path.as_str()).collect();
        println!(
            "  {:<16} {:<14} {:<9} certs={} signing keys={} files={files:?}",
            r.image_id,
            r.source.layout.to_string(),
            r.vendor_hint,
            r.certificate_count(),
            r.key_profile.len()
        );
    }
    Ok(())
}
