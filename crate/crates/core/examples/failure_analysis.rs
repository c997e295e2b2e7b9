//! The four failure-analysis questions over a narrated fixture. Loc needs a
//! timestamp in the answer, so the mock is told to echo one.
//!
//! cargo run -p ronar-core --example failure_analysis

use std::path::PathBuf;

use ronar_core::episode_log::load_episode;
use ronar_core::narrator::{analyze_failure, format_loc_answer, AnalysisRequest, FailureTask};
use ronar_core::pipeline::{run_episode, PipelineConfig};
use ronar_core::provider::{GenerationParams, MockOptions, MockProvider, RequestIds};
use ronar_core::task_sim::ensure_fixture_images;
use ronar_core::vision::FsImageSource;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    ensure_fixture_images(&dir)?;
    let ep = load_episode(dir.join("synthetic_cup_01.jsonl"))?;
    let run = run_episode(&ep, &FsImageSource::new(&ep.base_dir), &MockProvider::new(), &PipelineConfig::default())?;
    let failure = ep.failure_labels[0].t;
    let range = ep.time_range().unwrap();
    let ids = RequestIds::new("analysis");
    println!("labelled failure at {failure:.2} s");

    for task in [FailureTask::Pred, FailureTask::Loc, FailureTask::Exp, FailureTask::Rec] {
        let provider = MockProvider::with_options(MockOptions {
            echo: vec![format_loc_answer(failure)],
            ..Default::default()
        });
        let req = AnalysisRequest {
            task,
            summaries: &run.summaries,
            history: &run.history,
            query_time: failure,
            time_range: range,
        };
        let a = analyze_failure(&provider, &ids, &GenerationParams::default(), &req)?;
        println!("{task:?}: timestamp {:?}, cites {:?}, {}", a.timestamp, a.cited_events, a.confidence_note);
    }
    Ok(())
}
