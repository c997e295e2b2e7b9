//! Progressive narration of a fixture in alert, info and debug modes.
//!
//! cargo run -p ronar-core --example narrate_episode

use std::path::PathBuf;

use ronar_core::episode_log::load_episode;
use ronar_core::narrator::{NarrationHistory, NarrationMode, Narrator};
use ronar_core::pipeline::{run_episode, PipelineConfig};
use ronar_core::provider::{MockProvider, RequestIds};
use ronar_core::summarizer::TaskSpec;
use ronar_core::task_sim::ensure_fixture_images;
use ronar_core::vision::FsImageSource;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    ensure_fixture_images(&dir)?;
    let ep = load_episode(dir.join("synthetic_cup_01.jsonl"))?;
    let provider = MockProvider::new();
    let run = run_episode(&ep, &FsImageSource::new(&ep.base_dir), &provider, &PipelineConfig::default())?;

    let ids = RequestIds::new(ep.episode_id.clone());
    let narrator = Narrator::new(&provider, &ids, &ep.robot_config, TaskSpec::from_episode(&ep));
    for mode in [NarrationMode::Alert, NarrationMode::Info, NarrationMode::Debug] {
        let mut history = NarrationHistory::new();
        for s in &run.summaries {
            narrator.narrate(&mut history, s, mode)?;
        }
        println!("{mode:?}:");
        for n in history.instances() {
            println!("  [{:>6.2} s] {}", n.created_at, n.text);
        }
    }
    Ok(())
}
