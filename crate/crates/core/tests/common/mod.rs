// Licensed under the Apache-2.0 license

#![allow(dead_code)]

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use tzaudit::synth::{fixtures, random_certificate};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Every certificate checked against the external decoder, by file stem.
pub fn oracle_certificates() -> Vec<(String, Vec<u8>)> {
    let mut set = vec![
        ("nexus6_leaf".to_string(), fixtures::nexus6_leaf()),
        ("nexus6_attestation_ca".to_string(), fixtures::nexus6_attestation_ca()),
        ("nexus6_root".to_string(), fixtures::nexus6_root()),
        ("samsung_leaf".to_string(), fixtures::samsung_leaf()),
        ("samsung_attestation_ca".to_string(), fixtures::samsung_attestation_ca()),
        ("samsung_root".to_string(), fixtures::samsung_root()),
        ("utf8_unknown_attribute".to_string(), fixtures::utf8_unknown_attribute()),
    ];
    let mut rng = ChaCha20Rng::seed_from_u64(0x7A_A0D1);
    for i in 0..12 {
        set.push((format!("random_{i:02}"), random_certificate(&mut rng)));
    }
    set
}

use rand::Rng;
use std::collections::BTreeSet;
use tzaudit::catalog::{ImageRecord, TrustletPackage};
use tzaudit::der_x509::KeyFingerprint;

/// A record whose key profile is drawn from a pool of `pool` fingerprints.
/// Some records get no keys at all.
pub fn keyed_record(rng: &mut ChaCha20Rng, image_id: &str, pool: u8) -> ImageRecord {
    let n = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=3) };
    let key_profile: BTreeSet<KeyFingerprint> = (0..n).map(|_| KeyFingerprint([rng.gen_range(0..pool); 32])).collect();
    ImageRecord {
        image_id: image_id.to_string(),
        key_profile,
        ..Default::default()
    }
}

/// A record produced by really scanning a small image holding one random
/// certificate.
pub fn scanned_record(rng: &mut ChaCha20Rng, image_id: &str) -> ImageRecord {
    let mut image = vec![0u8; 64];
    image.extend(random_certificate(rng));
    image.extend([0u8; 32]);
    let package = TrustletPackage::single(&format!("fw/{image_id}.mbn"), image);
    ImageRecord::from_package(&package, image_id, "TEST", None)
}

/// Transitive closure of `related` by repeated relaxation over an
/// adjacency matrix. Returns the member sets.
pub fn closure_groups(
    records: &[ImageRecord],
    related: impl Fn(&ImageRecord, &ImageRecord) -> bool,
) -> BTreeSet<BTreeSet<String>> {
    let n = records.len();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        reach[i][i] = true;
        for j in 0..n {
            if related(&records[i], &records[j]) {
                reach[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (cell, r) in reach[i].iter_mut().zip(via) {
                    *cell |= r;
                }
            }
        }
    }
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| reach[i][j])
                .map(|j| records[j].image_id.clone())
                .collect()
        })
        .collect()
}
