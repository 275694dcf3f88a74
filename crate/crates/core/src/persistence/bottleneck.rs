use super::{PersistenceDiagram, PersistencePair};

fn linf(a: &PersistencePair, b: &PersistencePair) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

fn half_persistence(p: &PersistencePair) -> f64 {
    0.5 * (p.death - p.birth)
}

/// Exact bottleneck distance under the L∞ norm.
///
/// Finite pairs may be matched to the diagonal; essential pairs are matched
/// among themselves by sorted birth. Differing numbers of essential pairs
/// give `+∞`. The finite part is solved exactly by binary search over the
/// candidate costs with a bipartite perfect-matching test.
pub fn bottleneck_distance(a: &PersistenceDiagram, b: &PersistenceDiagram) -> f64 {
    let split = |d: &PersistenceDiagram| {
        let (ess, fin): (Vec<PersistencePair>, Vec<PersistencePair>) = d.pairs.iter().partition(|p| p.is_essential());
        let mut births: Vec<f64> = ess.iter().map(|p| p.birth).collect();
        births.sort_by(f64::total_cmp);
        (births, fin)
    };
    let (ess_a, fin_a) = split(a);
    let (ess_b, fin_b) = split(b);
    if ess_a.len() != ess_b.len() {
        return f64::INFINITY;
    }
    let essential_cost = ess_a.iter().zip(&ess_b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);

    let mut candidates: Vec<f64> = Vec::with_capacity(fin_a.len() * fin_b.len() + fin_a.len() + fin_b.len() + 1);
    candidates.push(0.0);
    candidates.extend(fin_a.iter().chain(&fin_b).map(half_persistence));
    for p in &fin_a {
        candidates.extend(fin_b.iter().map(|q| linf(p, q)));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // The largest candidate always admits a matching (everything to the diagonal).
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_perfect_matching(&fin_a, &fin_b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    essential_cost.max(candidates[lo])
}

/// Left side: `a` then one diagonal slot per `b` pair; right side: `b` then
/// one diagonal slot per `a` pair.
fn has_perfect_matching(a: &[PersistencePair], b: &[PersistencePair], r: f64) -> bool {
    let (n, m) = (a.len(), b.len());
    let size = n + m;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for i in 0..n {
        for j in 0..m {
            if linf(&a[i], &b[j]) <= r {
                adj[i].push(j);
            }
        }
        if half_persistence(&a[i]) <= r {
            adj[i].push(m + i);
        }
    }
    for j in 0..m {
        if half_persistence(&b[j]) <= r {
            adj[n + j].push(j);
        }
        adj[n + j].extend((0..n).map(|i| m + i));
    }

    let mut match_right: Vec<Option<usize>> = vec![None; size];
    for left in 0..size {
        let mut seen = vec![false; size];
        if !augment(left, &adj, &mut seen, &mut match_right) {
            return false;
        }
    }
    true
}

fn augment(left: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &right in &adj[left] {
        if seen[right] {
            continue;
        }
        seen[right] = true;
        if match_right[right].is_none_or(|other| augment(other, adj, seen, match_right)) {
            match_right[right] = Some(left);
            return true;
        }
    }
    false
}
