// Licensed under the Apache-2.0 license

//! Carve certificates out of a firmware image.
//!
//! ```text
//! cargo run --example scan_firmware -- path/to/tz.mbn
//! ```
//!
//! Without an argument the synthetic Nexus 6 `tz` image is scanned.

use std::error::Error;

use tzaudit::report::render_scan_text;
use tzaudit::scanner::{find_pattern_hits, scan_image, CandidateStatus};
use tzaudit::synth::fixtures;

fn main() -> Result<(), Box<dyn Error>> {
    let (id, image) = match std::env::args().nth(1) {
        Some(path) => (path.clone(), std::fs::read(&path)?),
        None => ("nexus6/tz".to_string(), fixtures::nexus6_tz_image()),
    };

    let hits = find_pattern_hits(&image);
    println!("pattern 30 82 ?? ?? 30 82 matched at {hits:X?}");

    let result = scan_image(&image, &id);
    print!("{}", render_scan_text(&result, &image));

    let rejected = result
        .candidates
        .iter()
        .filter(|c| c.status != CandidateStatus::Validated)
        .count();
    println!("{} validated, {rejected} rejected", result.certificates.len());
    Ok(())
}
