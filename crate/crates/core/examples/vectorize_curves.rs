//! Betti, persistence, landscape and entropy curves of a small diagram.
//!
//! Run with `cargo run --example vectorize_curves`.

use gazetopo::persistence::{FiltrationKind, PersistenceDiagram, PersistencePair};
use gazetopo::vectorize::{betti_curve, entropy_curve, landscape, persistence_curve, persistence_entropy, CurveGrid};

fn main() {
    let d = PersistenceDiagram::new(
        0,
        FiltrationKind::LowerStar,
        vec![PersistencePair::new(0.0, 4.0), PersistencePair::new(1.0, 3.0), PersistencePair::essential(0.5)],
    );
    let grid = CurveGrid::new(0.0, 5.0, 11).expect("valid grid");
    let betti = betti_curve(&d, &grid);
    let pers = persistence_curve(&d, &grid);
    let land = landscape(&d, &grid, 2);
    let ent = entropy_curve(&d, &grid);

    println!("{:>5} {:>6} {:>8} {:>6} {:>6} {:>8}", "eps", "betti", "persist", "L1", "L2", "entropy");
    for (i, eps) in grid.points().iter().enumerate() {
        println!(
            "{:>5.2} {:>6} {:>8.3} {:>6.3} {:>6.3} {:>8.4}",
            eps,
            betti.values[i],
            pers.values[i],
            land.values[i],
            land.values[grid.knots + i],
            ent.values[i]
        );
    }
    println!("persistence entropy of the finite pairs: {:.4}", persistence_entropy(&d));
}
