// Licensed under the Apache-2.0 license

//! Run the bundled downgrade scenarios, or a scenario file given on the
//! command line.
//!
//! ```text
//! cargo run --example downgrade_scenarios
//! cargo run --example downgrade_scenarios -- my-scenario.json
//! ```

use std::error::Error;

use tzaudit::report::render_scenario_text;
use tzaudit::sim::{canned_names, canned_scenario, run_scenario, ScenarioConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let configs: Vec<ScenarioConfig> = match std::env::args().nth(1) {
        Some(path) => vec![ScenarioConfig::from_json(&std::fs::read_to_string(path)?)?],
        None => canned_names().filter_map(canned_scenario).collect(),
    };
    for config in &configs {
        let report = run_scenario(config)?;
        println!("{}", render_scenario_text(&report));
    }
    Ok(())
}
