//! Aligns a fixture episode onto the 0.2 s grid and prints the motion deltas.
//!
//! cargo run -p ronar-core --example align_episode -- [episode.jsonl]

use std::path::PathBuf;

use ronar_core::episode_log::{align, load_episode, DEFAULT_INTERVAL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/synthetic_cup_01.jsonl"));
    let ep = load_episode(&path)?;
    let frames = align(&ep, DEFAULT_INTERVAL)?;
    println!("{}: {} streams, {} frames", ep.episode_id, ep.streams.len(), frames.len());
    println!("{:>7} {:>8} {:>8} {:>8} {:>8}  state", "t", "d_pos", "d_rot", "d_cam", "d_arm");
    for f in frames.iter().step_by(10) {
        let d = f.deltas;
        println!(
            "{:>7.2} {:>8.4} {:>8.4} {:>8.4} {:>8.4}  {}",
            f.timestamp,
            d.d_pos,
            d.d_rot,
            d.d_cam,
            d.d_arm,
            f.planner_state.as_deref().unwrap_or("-")
        );
    }
    Ok(())
}
