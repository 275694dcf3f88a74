//! Fixation/saccade statistics of one synthetic track.
//!
//! Run with `cargo run --example macro_statistics [class]`.

use gazetopo::gaze::{generate_synthetic, segment_events, SynthConfig};
use gazetopo::macro_stats::{macro_feature_names, macro_features};

fn main() {
    let class: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let config = SynthConfig::preset(3, 1);
    let tracks = generate_synthetic(&config, 42).expect("valid preset");
    let track = &tracks[class.min(2)];

    let (fixations, saccades) = segment_events(track).expect("synthetic tracks are complete");
    println!("{}: {} fixations, {} saccades", track.track_id, fixations.len(), saccades.len());

    let features = macro_features(track).expect("track has at least two samples");
    for (name, value) in macro_feature_names().iter().zip(&features.values) {
        println!("{name:<30} {value:.4}");
    }
}
