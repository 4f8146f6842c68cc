// Licensed under the Apache-2.0 license

//! Produce the aggregate JSON report for a small catalog plus the bundled
//! widevine scenario.

use tzaudit::catalog::{ImageRecord, TrustletPackage};
use tzaudit::report::Report;
use tzaudit::sim::{canned_scenario, run_scenario};
use tzaudit::synth::fixtures;

fn main() {
    let records = vec![
        ImageRecord::from_package(
            &TrustletPackage::single("nexus6/tz", fixtures::nexus6_tz_image()),
            "nexus6",
            "N6F26Y",
            None,
        ),
        ImageRecord::from_package(
            &TrustletPackage::single("s7/tz.mbn", fixtures::samsung_tz_mbn()),
            "s7",
            "G930U",
            None,
        ),
    ];
    let scenario = run_scenario(&canned_scenario("cve-2015-6639").expect("bundled")).expect("valid scenario");
    let report = Report::build(&records, vec![scenario]);
    println!("{}", report.to_json());
}
