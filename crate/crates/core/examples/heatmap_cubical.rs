//! Attention heatmap of a synthetic track and its cubical persistence.
//!
//! Superlevel dimension-0 pairs are the attention hot spots: one essential
//! class born at the global maximum, and one finite pair per secondary peak,
//! stored as `(merge level, peak density)`.
//!
//! Run with `cargo run --release --example heatmap_cubical`.

use gazetopo::gaze::{generate_synthetic, to_heatmap, Bandwidth, SynthConfig};
use gazetopo::persistence::{sublevel_cubical_2d, Direction};

fn main() {
    let mut config = SynthConfig::preset(3, 1);
    config.track_length = 2000;
    let track = &generate_synthetic(&config, 11).expect("valid preset")[2];
    let map = to_heatmap(track, 32, 32, Bandwidth::Auto).expect("gaze points are spread out");
    println!("{}: bandwidth {:.3}, peak cell {:?}", track.track_id, map.bandwidth, map.argmax());

    for direction in [Direction::Sublevel, Direction::Superlevel] {
        for d in sublevel_cubical_2d(&map, direction) {
            println!("{:?} H{}: {} pairs", direction, d.dimension, d.len());
        }
    }
    let mut peaks = sublevel_cubical_2d(&map, Direction::Superlevel)[0].pairs.clone();
    peaks.sort_by(|a, b| b.persistence().total_cmp(&a.persistence()));
    for p in peaks.iter().take(5) {
        if p.is_essential() {
            println!("global maximum: density {:.5}", p.birth);
        } else {
            println!("secondary peak: density {:.5}, merges at {:.5}", p.death, p.birth);
        }
    }
}
