//! Lower- and upper-star persistence of the X, Y and Amp series, and the
//! stability of lower-star diagrams under small perturbations.
//!
//! Run with `cargo run --example time_series_persistence`.

use gazetopo::gaze::{generate_synthetic, to_time_series, Channel, SynthConfig, TimeSeries};
use gazetopo::persistence::{bottleneck_distance, lower_star_1d, upper_star_1d};

fn main() {
    let mut config = SynthConfig::preset(1, 1);
    config.track_length = 1000;
    let track = &generate_synthetic(&config, 5).expect("valid preset")[0];

    for channel in [Channel::X, Channel::Y, Channel::Amp] {
        let series = to_time_series(track, channel).expect("complete track");
        let lower = lower_star_1d(&series);
        let upper = upper_star_1d(&series);
        let longest = lower.pairs.iter().filter(|p| !p.is_essential()).map(|p| p.persistence()).fold(0.0, f64::max);
        println!(
            "{:>3}: {} lower-star pairs (longest finite {:.3}), {} upper-star pairs",
            channel.name(),
            lower.len(),
            longest,
            upper.len()
        );
    }

    // Perturb X by at most 0.01; the diagram moves by at most 0.01.
    let x = to_time_series(track, Channel::X).expect("complete track");
    let wiggled: Vec<f64> = x.values.iter().enumerate().map(|(i, v)| v + 0.01 * ((i as f64) * 0.7).sin()).collect();
    let d = bottleneck_distance(&lower_star_1d(&x), &lower_star_1d(&TimeSeries::new(wiggled, Channel::X)));
    println!("bottleneck distance after a 0.01 perturbation: {d:.6}");
}
