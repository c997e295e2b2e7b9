//! Simulates every catalog task with one injected failure and writes the
//! episodes to a temp directory.
//!
//! cargo run -p ronar-core --example simulate_task -- [out-dir]

use std::path::PathBuf;

use ronar_core::episode_log::load_episode;
use ronar_core::task_sim::{catalog, generate_episode, ActionKind, FailureKind, FailureSpec, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("ronar-sim"));
    for task in catalog() {
        let target = task.states.iter().find(|s| ActionKind::infer(s) == ActionKind::Manipulate).unwrap();
        let failures = vec![FailureSpec::new(target, 2.0, FailureKind::Manipulation)];
        let g = generate_episode(&task, failures, SimConfig::new(format!("{}_demo", task.short), 7))?;
        let path = g.write(&out)?;
        let ep = load_episode(&path)?;
        let (_, end) = ep.time_range().unwrap();
        println!("{:<16} {:>5.1} s  {}", task.name, end, g.path.join(" > "));
        for f in &g.ground_truth {
            println!("{:<16} failure at {:.2} s in {}: {}", "", f.t, f.state, f.reason);
        }
    }
    println!("episodes in {}", out.display());
    Ok(())
}
