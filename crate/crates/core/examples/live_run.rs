//! Steps a live simulation with a manipulation failure and prints what an
//! operator would see as it happens.
//!
//! cargo run -p ronar-core --example live_run

use std::sync::Arc;

use ronar_core::episode_log::align;
use ronar_core::key_event::compute_stats;
use ronar_core::live::{LiveOutput, LiveRun};
use ronar_core::narrator::NarrationMode;
use ronar_core::pipeline::PipelineConfig;
use ronar_core::provider::MockProvider;
use ronar_core::task_sim::{find_task, generate_episode, FailureKind, FailureSpec, Policy, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let task = find_task("cup").unwrap();
    let cfg = PipelineConfig::default();
    // Normalization comes from a clean reference run of the same task.
    let reference = generate_episode(&task, vec![], SimConfig::new("reference", 0))?;
    let stats = compute_stats(&align(&reference.episode, cfg.interval)?)?;

    let failures = vec![FailureSpec::new("pick_cup", 2.5, FailureKind::Manipulation)];
    let mut sim = SimConfig::new("live_demo", 3);
    sim.policy = Policy::Autonomous;
    let mut live = LiveRun::new(&task, failures, sim, stats, Arc::new(MockProvider::new()), cfg)?;
    while !live.finished() {
        for out in live.step(NarrationMode::Alert)? {
            match out {
                LiveOutput::Transition(t) => println!("[{:>6.2}] {} -> {}", live.time(), t.from_state, t.to_state),
                LiveOutput::Failure(f) => println!("[{:>6.2}] FAILURE {} at {:.2}", live.time(), f.reason, f.t),
                LiveOutput::KeyEvent { event, narration, .. } => {
                    println!("[{:>6.2}] key event at {:.2}: {}", live.time(), event.timestamp, narration.text)
                }
                LiveOutput::Finished { state, t } => println!("[{t:>6.2}] finished in {state}"),
            }
        }
    }
    Ok(())
}
