use super::union_find::UnionFind;
use super::{FiltrationKind, PersistenceDiagram, PersistencePair};
use crate::gaze::TimeSeries;

/// 0-dimensional sublevel persistence of `values` on the path graph.
///
/// Vertices enter at their value and each edge at the larger endpoint value.
/// When two components meet, the one whose minimum is younger dies (ties:
/// the minimum with the larger index is younger). The global minimum is the
/// single essential class.
pub fn lower_star_values(values: &[f64]) -> PersistenceDiagram {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    let mut uf = UnionFind::new(n);
    // Vertex holding the minimum of each root's component.
    let oldest: Vec<usize> = (0..n).collect();
    let mut active = vec![false; n];
    let mut pairs = Vec::new();

    for &v in &order {
        active[v] = true;
        let neighbors = [v.checked_sub(1), (v + 1 < n).then_some(v + 1)];
        for u in neighbors.into_iter().flatten().filter(|&u| active[u]) {
            let (ru, rv) = (uf.find(u), uf.find(v));
            if ru == rv {
                continue;
            }
            let (keep, die) = if rank[oldest[ru]] < rank[oldest[rv]] { (ru, rv) } else { (rv, ru) };
            let birth = values[oldest[die]];
            if values[v] > birth {
                pairs.push(PersistencePair::new(birth, values[v]));
            }
            uf.attach(keep, die);
        }
    }
    if let Some(&min) = order.first() {
        pairs.push(PersistencePair::essential(values[min]));
    }

    let mut d = PersistenceDiagram::new(0, FiltrationKind::LowerStar, pairs);
    d.normalize();
    d
}

/// Superlevel counterpart: lower-star persistence of the negated series,
/// mapped back so that finite pairs read (merge value, local maximum) and the
/// essential class is born at the global maximum.
pub fn upper_star_values(values: &[f64]) -> PersistenceDiagram {
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    lower_star_values(&negated).negated(FiltrationKind::UpperStar)
}

pub fn lower_star_1d(series: &TimeSeries) -> PersistenceDiagram {
    lower_star_values(&series.values)
}

pub fn upper_star_1d(series: &TimeSeries) -> PersistenceDiagram {
    upper_star_values(&series.values)
}
