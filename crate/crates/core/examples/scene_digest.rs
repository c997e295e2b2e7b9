//! Scene graph and environment digest at each key event of a fixture.
//!
//! cargo run -p ronar-core --example scene_digest

use std::path::PathBuf;

use ronar_core::episode_log::load_episode;
use ronar_core::key_event::compute_stats;
use ronar_core::pipeline::{detect_key_events, prepare_frames, PipelineConfig};
use ronar_core::provider::{MockProvider, RequestIds};
use ronar_core::scene_graph::{environment_digest, LogDetector};
use ronar_core::summarizer::SummaryContext;
use ronar_core::task_sim::ensure_fixture_images;
use ronar_core::vision::FsImageSource;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    ensure_fixture_images(&dir)?;
    let ep = load_episode(dir.join("synthetic_microwave_01.jsonl"))?;
    let cfg = PipelineConfig::default();
    let images = FsImageSource::new(&ep.base_dir);
    let frames = prepare_frames(&ep, &images, &cfg)?;
    let events = detect_key_events(&frames, &compute_stats(&frames)?, &images, &cfg)?;

    let detector = LogDetector::new(&ep);
    let provider = MockProvider::new();
    let ids = RequestIds::new("scene");
    let ctx = SummaryContext::new(&ep, &frames, &detector, &provider, &ids);
    for e in events.iter().take(4) {
        let graph = ctx.scene(e)?;
        println!("t={:.2} s, {} objects, {} relations", e.timestamp, graph.objects.len(), graph.triplets.len());
        println!("{}\n", environment_digest(&graph));
    }
    Ok(())
}
