//! Vietoris-Rips persistence of a noisy circle: one long-lived loop.
//!
//! Run with `cargo run --example rips_point_cloud`.

use gazetopo::gaze::PointCloud;
use gazetopo::persistence::vietoris_rips;

fn main() {
    let n = 24;
    let points = (0..n)
        .map(|i| {
            let t = i as f64 / n as f64 * std::f64::consts::TAU;
            let r = 1.0 + 0.05 * (7.0 * t).sin();
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    let cloud = PointCloud::new(points);
    let diagrams = vietoris_rips(&cloud, 1, 3.0).expect("valid arguments");

    println!("H0: {} pairs, {} essential", diagrams[0].len(), diagrams[0].essential_count());
    for p in diagrams[1].sorted_pairs() {
        println!("H1: born {:.4}, dies {:.4}, persistence {:.4}", p.birth, p.death, p.persistence());
    }
}
