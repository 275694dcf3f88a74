//! The random forest on a noisy XOR problem, where no single split helps
//! but depth-2 trees separate the classes.
//!
//! Run with `cargo run --release --example random_forest`.

use gazetopo::pipeline::{accuracy, predict, train_forest, FeatureMatrix, ForestConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn xor(n: usize, seed: u64) -> FeatureMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, 0.05).expect("valid std");
    let mut m = FeatureMatrix { schema: vec!["a".into(), "b".into()], ..FeatureMatrix::default() };
    for i in 0..n {
        let (a, b) = (i % 2, (i / 2) % 2);
        m.rows.push(vec![a as f64 + noise.sample(&mut rng), b as f64 + noise.sample(&mut rng)]);
        m.labels.push(if a == b { "same".into() } else { "different".into() });
        m.track_ids.push(format!("p{i}"));
    }
    m
}

fn main() {
    let train = xor(200, 1);
    let test = xor(200, 2);
    let model = train_forest(&train, &ForestConfig { seed: 3, ..ForestConfig::default() }).expect("two classes");
    let predicted = predict(&model, &test).expect("same schema");
    println!("{} trees, classes {:?}", model.tree_count(), model.classes);
    println!("held-out accuracy {:.3}", accuracy(&predicted, &test.labels));
}
