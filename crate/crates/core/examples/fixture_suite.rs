//! Regenerates the packaged synthetic episodes and their manifest.
//!
//! cargo run -p ronar-core --example fixture_suite -- [out-dir]

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    let manifest = ronar_core::task_sim::write_fixture_suite(&dir)?;
    for m in &manifest {
        let samples: usize = m.streams.values().sum();
        println!("{:<24} {:>6} samples {:>2} failures  {}", m.episode_id, samples, m.ground_truth.len(), &m.sha256[..12]);
    }
    println!("wrote {} episodes to {}", manifest.len(), dir.display());
    Ok(())
}
