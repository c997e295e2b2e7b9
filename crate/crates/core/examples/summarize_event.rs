//! Experience summaries for the first key events of a fixture, mock provider.
//!
//! cargo run -p ronar-core --example summarize_event

use std::path::PathBuf;

use ronar_core::episode_log::load_episode;
use ronar_core::pipeline::{run_episode, PipelineConfig};
use ronar_core::provider::MockProvider;
use ronar_core::task_sim::ensure_fixture_images;
use ronar_core::vision::FsImageSource;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    ensure_fixture_images(&dir)?;
    let ep = load_episode(dir.join("synthetic_hat_01.jsonl"))?;
    let run = run_episode(&ep, &FsImageSource::new(&ep.base_dir), &MockProvider::new(), &PipelineConfig::default())?;
    for s in run.summaries.iter().take(2) {
        println!("--- event {} ---\n{}", s.event_index, s.render());
    }
    Ok(())
}
