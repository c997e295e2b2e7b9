//! Threshold by modality sweep over the packaged fixtures.
//!
//! cargo run -p ronar-core --example threshold_sweep

use std::path::PathBuf;

use ronar_core::episode_log::load_episode;
use ronar_core::eval::{sweep, SweepConfig};
use ronar_core::task_sim::fixture_specs;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let episodes = fixture_specs()
        .iter()
        .map(|s| load_episode(dir.join(format!("{}.jsonl", s.episode_id))))
        .collect::<Result<Vec<_>, _>>()?;
    let result = sweep(&episodes, &SweepConfig::default())?;
    println!("avg frames / capture rate over {} episodes", episodes.len());
    println!("{}", result.table());
    Ok(())
}
