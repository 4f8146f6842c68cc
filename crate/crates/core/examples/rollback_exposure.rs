// Licensed under the Apache-2.0 license

//! Read the anti-rollback version from the SW_ID OU of signing
//! certificates. A version of zero means old signed builds stay loadable.

use tzaudit::catalog::{ImageRecord, TrustletPackage};
use tzaudit::compat::rollback_exposure;
use tzaudit::synth::fixtures;

fn main() {
    let bumped = fixtures::samsung_leaf_spec(fixtures::SAMSUNG_SIGNING_KEY, "0000000300000007").encode();
    let images = [
        ("nexus6/tz", fixtures::nexus6_tz_image()),
        ("s7/tz.mbn", fixtures::samsung_tz_mbn()),
        ("s7-next/tz.mbn", fixtures::samsung_tz_mbn_with_leaf(bumped)),
    ];
    for (path, bytes) in images {
        let record = ImageRecord::from_package(&TrustletPackage::single(path, bytes), path, "", None);
        let flag = rollback_exposure(&record);
        println!(
            "{path:<16} {:<20} SW_ID={:<18} version={:<4} image type={}",
            flag.flag.to_string(),
            flag.raw_sw_id.as_deref().unwrap_or("-"),
            flag.version.map_or("-".into(), |v| v.to_string()),
            flag.image_type.map_or("-".into(), |v| format!("{v:#x}")),
        );
    }
}
