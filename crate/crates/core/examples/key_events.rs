//! Key events of a fixture episode under each modality set.
//!
//! cargo run -p ronar-core --example key_events -- [threshold]

use std::path::PathBuf;

use ronar_core::episode_log::{align, load_episode, DEFAULT_INTERVAL};
use ronar_core::key_event::{classify, compute_stats, ModalitySet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let threshold: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(80.0);
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let ep = load_episode(dir.join("synthetic_cup_01.jsonl"))?;
    let frames = align(&ep, DEFAULT_INTERVAL)?;
    let stats = compute_stats(&frames)?;
    let failures: Vec<String> = ep.failure_labels.iter().map(|f| format!("{:.1}", f.t)).collect();
    println!("failure labels at {} s, threshold {threshold}", failures.join(", "));
    for m in ModalitySet::table_order() {
        let events = classify(&frames, &stats, threshold, m)?;
        let times: Vec<String> = events.iter().map(|e| format!("{:.1}", e.timestamp)).collect();
        println!("{:<7} {:>3} events: {}", m.to_string(), events.len(), times.join(" "));
    }
    Ok(())
}
