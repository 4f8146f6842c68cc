// Licensed under the Apache-2.0 license

//! Which images can stand in for each other? Images are compatible when
//! their signing certificates share a public key.

use tzaudit::catalog::{ImageRecord, TrustletPackage};
use tzaudit::compat::{build_chains, cluster_images, compare_images};
use tzaudit::report::{render_groups_text, render_verdict_text};
use tzaudit::synth::fixtures;

fn record(id: &str, path: &str, image: Vec<u8>) -> ImageRecord {
    ImageRecord::from_package(&TrustletPackage::single(path, image), id, "", None)
}

fn main() {
    // a second Nexus build: new leaf certificate, same signing key
    let mut rebuilt = fixtures::nexus6_leaf_spec(fixtures::NEXUS6_SIGNING_KEY);
    rebuilt.serial = vec![0x00, 0xA1, 0x07];
    let records = vec![
        record(
            "nexus6-LMY48M",
            "lmy48m/tz",
            fixtures::nexus6_tz_image_with_leaf(rebuilt.encode()),
        ),
        record("nexus6-N6F26Y", "n6f26y/tz", fixtures::nexus6_tz_image()),
        record("s7-G930U", "g930u/tz.mbn", fixtures::samsung_tz_mbn()),
    ];

    let certs: Vec<_> = records[1].certificates().cloned().collect();
    for chain in &build_chains(&certs).chains {
        let names: Vec<String> = chain
            .certs(&certs)
            .map(|c| c.subject.common_name().unwrap_or("?").to_string())
            .collect();
        println!("chain: {}", names.join(" <- "));
    }
    println!();

    for (a, b) in [(0, 1), (1, 2)] {
        let v = compare_images(&records[a], &records[b]);
        print!(
            "{}",
            render_verdict_text(&records[a].image_id, &records[b].image_id, &v)
        );
    }
    println!();
    print!("{}", render_groups_text(&cluster_images(&records)));
}
