//! Repeated-split classification of synthetic subjects.
//!
//! Generates 3 classes x 40 tracks, then evaluates the macro statistics and
//! the X/Y/Amp star-filtration curves with 10 random 80/20 splits.
//!
//! Run with `cargo run --release --example synthetic_experiment [seed]`.

use gazetopo::gaze::{generate_synthetic, SynthConfig};
use gazetopo::pipeline::{run_experiment, ExperimentConfig};

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let data = generate_synthetic(&SynthConfig::preset(3, 40), seed).expect("valid preset");
    let config = ExperimentConfig {
        feature_sets: vec!["macro".into(), "ts_x+ts_y+ts_amp".into()],
        repetitions: 10,
        seed,
        ..ExperimentConfig::default()
    };
    let start = std::time::Instant::now();
    let report = run_experiment(&data, &config).expect("experiment runs");
    println!("{} tracks, classes {:?}", report.n_tracks, report.classes);
    for r in &report.results {
        println!("{:<20} {:>5} columns  accuracy {:.4} ± {:.4}", r.feature_set, r.columns, r.mean, r.std);
        println!("{:<20} runs: {:?}", "", r.accuracies);
    }
    println!("elapsed {:.1?}", start.elapsed());
}
