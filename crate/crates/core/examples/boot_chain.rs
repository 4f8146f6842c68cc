// Licensed under the Apache-2.0 license

//! Drive the load-verification model directly: an MSM8960-style chain where
//! SBL1 loads SBL2 and SBL2 loads tz and SBL3.

use std::collections::{BTreeMap, BTreeSet};

use sha2::{Digest, Sha256};
use tzaudit::sim::{boot, BootChain, DevicePolicy, DeviceState, RollbackPolicy, SignedArtifact};

fn signed(name: &str, version: u64, key: &str, vulnerable: bool) -> SignedArtifact {
    SignedArtifact {
        name: name.into(),
        version,
        label: None,
        key_id: key.into(),
        payload_digest: Sha256::digest(format!("{name}-{version}")).into(),
        vulnerable,
    }
}

fn device(rollback: RollbackPolicy) -> DeviceState {
    let trusted: BTreeMap<String, BTreeSet<String>> = ["SBL1", "SBL2", "SBL3", "tz"]
        .iter()
        .map(|n| (n.to_string(), BTreeSet::from(["oem".to_string()])))
        .collect();
    let mut state = DeviceState::new(DevicePolicy {
        trusted_keys: trusted,
        rollback,
        ..Default::default()
    });
    for name in ["SBL1", "SBL2", "SBL3"] {
        state.install(&signed(name, 1, "oem", false)).unwrap();
    }
    state.install(&signed("tz", 1, "oem", true)).unwrap();
    state.install(&signed("tz", 2, "oem", false)).unwrap();
    state
}

fn main() {
    let chain = BootChain::new(&[("ROM", &["SBL1"]), ("SBL1", &["SBL2"]), ("SBL2", &["tz", "SBL3"])]);

    for rollback in [RollbackPolicy::None, RollbackPolicy::VersionCounter] {
        let mut state = device(rollback);
        // attacker with write access to the tz partition
        state.replace(&signed("tz", 1, "oem", true));
        let report = boot(&state, &chain).unwrap();
        println!("rollback {rollback:?}:");
        for s in &report.stages {
            println!("  {:<5} -> {:<5} v{}  {}", s.loader, s.artifact, s.version, s.verdict);
        }
        match &report.aborted_at {
            Some(at) => println!("  boot aborted at {at}"),
            None => println!(
                "  boot completed, vulnerable images running: {:?}",
                report.vulnerable_loaded
            ),
        }
    }

    let mut forged = device(RollbackPolicy::None);
    forged.replace(&signed("tz", 3, "attacker", false));
    let report = boot(&forged, &chain).unwrap();
    println!("foreign key: aborted at {:?}", report.aborted_at);
}
