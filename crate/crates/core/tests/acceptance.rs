//! Acceptance suite. Each criterion runs against an independent oracle and
//! prints one PASS/FAIL line with its runtime; the process fails if any
//! criterion fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use gazetopo::gaze::{generate_synthetic, preprocess, segment_events, Channel, HeatMap, PointCloud, SynthConfig, TimeSeries};
use gazetopo::macro_stats::{
    convex_hull_area, integral_amplitude, macro_feature_names, macro_features, saccade_amplitude, MacroFeatureVector,
};
use gazetopo::persistence::{
    bottleneck_distance, lower_star_1d, sublevel_cubical_2d, vietoris_rips, Direction, PersistenceDiagram,
    PersistencePair,
};
use gazetopo::pipeline::{run_experiment, ExperimentConfig};
use gazetopo::vectorize::{betti_curve, entropy_curve, landscape, persistence_curve, CurveGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Pairs = Vec<(f64, f64)>;

fn sorted(mut v: Pairs) -> Pairs {
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    v
}

fn pairs_of(d: &PersistenceDiagram) -> Pairs {
    sorted(d.pairs.iter().map(|p| (p.birth, p.death)).collect())
}

// ---------------------------------------------------------------------------
// Lower-star persistence

/// Sweeps thresholds upward, tracking the maximal runs of the sublevel set.
/// When runs merge, the one with the lowest minimum survives and the others
/// die at the current threshold.
fn sweep_oracle(values: &[f64]) -> Pairs {
    let mut levels: Vec<f64> = values.to_vec();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    // Alive components from the previous level: (start, end, birth).
    let mut prev: Vec<(usize, usize, f64)> = Vec::new();
    let mut pairs = Vec::new();
    for &t in &levels {
        let mut runs = Vec::new();
        let mut i = 0;
        while i < values.len() {
            if values[i] <= t {
                let start = i;
                while i < values.len() && values[i] <= t {
                    i += 1;
                }
                runs.push((start, i - 1));
            } else {
                i += 1;
            }
        }
        let mut next = Vec::new();
        for &(s, e) in &runs {
            let mut births: Vec<f64> = prev.iter().filter(|&&(ps, pe, _)| s <= ps && pe <= e).map(|c| c.2).collect();
            births.sort_by(f64::total_cmp);
            match births.split_first() {
                None => next.push((s, e, t)),
                Some((&oldest, rest)) => {
                    pairs.extend(rest.iter().filter(|&&b| b < t).map(|&b| (b, t)));
                    next.push((s, e, oldest));
                }
            }
        }
        prev = next;
    }
    pairs.extend(prev.iter().map(|c| (c.2, f64::INFINITY)));
    sorted(pairs)
}

fn lower_star_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..1000 {
        let n = rng.random_range(1..=64);
        let values: Vec<f64> = (0..n).map(|_| rng.random_range(0..16) as f64).collect();
        let got = pairs_of(&lower_star_1d(&TimeSeries::new(values.clone(), Channel::X)));
        let want = sweep_oracle(&values);
        if got != want {
            return Err(format!("case {case}: {values:?}: got {got:?}, oracle {want:?}"));
        }
    }
    Ok("1000 series match the threshold sweep".into())
}

fn lower_star_stability() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for case in 0..200 {
        let n = rng.random_range(2..=200);
        let values: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let perturbed: Vec<f64> = values.iter().map(|v| v + rng.random_range(-0.01..=0.01)).collect();
        let a = lower_star_1d(&TimeSeries::new(values, Channel::X));
        let b = lower_star_1d(&TimeSeries::new(perturbed, Channel::X));
        let d = bottleneck_distance(&a, &b);
        if d > 0.01 + 1e-12 {
            return Err(format!("case {case}: bottleneck {d}"));
        }
        worst = worst.max(d);
    }
    Ok(format!("max bottleneck distance {worst:.6} over 200 perturbations"))
}

// ---------------------------------------------------------------------------
// Vietoris-Rips persistence

/// Full Rips complex up to triangles (only simplices of diameter at most
/// `scale`), dense Z/2 column reduction without any shortcuts.
fn rips_oracle(points: &[[f64; 2]], scale: f64) -> (Pairs, Pairs) {
    let n = points.len();
    let dist = |i: usize, j: usize| (points[i][0] - points[j][0]).hypot(points[i][1] - points[j][1]);
    let mut simplices: Vec<(f64, Vec<usize>)> = (0..n).map(|i| (0.0, vec![i])).collect();
    for i in 0..n {
        for j in i + 1..n {
            if dist(i, j) <= scale {
                simplices.push((dist(i, j), vec![i, j]));
            }
            for k in j + 1..n {
                let diam = dist(i, j).max(dist(i, k)).max(dist(j, k));
                if diam <= scale {
                    simplices.push((diam, vec![i, j, k]));
                }
            }
        }
    }
    simplices.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.len().cmp(&b.1.len())).then(a.1.cmp(&b.1)));
    let m = simplices.len();
    let index: BTreeMap<Vec<usize>, usize> = simplices.iter().enumerate().map(|(i, s)| (s.1.clone(), i)).collect();
    let mut cols: Vec<Vec<bool>> = simplices
        .iter()
        .map(|(_, v)| {
            let mut col = vec![false; m];
            if v.len() > 1 {
                for skip in 0..v.len() {
                    let face: Vec<usize> = v.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
                    col[index[&face]] = true;
                }
            }
            col
        })
        .collect();
    let low = |c: &Vec<bool>| c.iter().rposition(|&x| x);
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for j in 0..m {
        while let Some(l) = low(&cols[j]) {
            match owner.get(&l) {
                Some(&k) => {
                    let other = cols[k].clone();
                    cols[j].iter_mut().zip(other).for_each(|(a, b)| *a ^= b);
                }
                None => {
                    owner.insert(l, j);
                    break;
                }
            }
        }
    }
    let (mut h0, mut h1) = (Vec::new(), Vec::new());
    for (&birth, &death) in &owner {
        let (b, d) = (simplices[birth].0, simplices[death].0);
        if d > b {
            match simplices[birth].1.len() {
                1 => h0.push((b, d)),
                2 => h1.push((b, d)),
                _ => {}
            }
        }
    }
    for j in 0..m {
        let paired = owner.contains_key(&j) || low(&cols[j]).is_some();
        if !paired {
            match simplices[j].1.len() {
                1 => h0.push((simplices[j].0, f64::INFINITY)),
                2 => h1.push((simplices[j].0, f64::INFINITY)),
                _ => {}
            }
        }
    }
    (sorted(h0), sorted(h1))
}

/// Kruskal minimum spanning tree weights.
fn mst_weights(points: &[[f64; 2]]) -> Vec<f64> {
    let n = points.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push(((points[i][0] - points[j][0]).hypot(points[i][1] - points[j][1]), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut comp: Vec<usize> = (0..n).collect();
    let mut weights = Vec::new();
    for (w, i, j) in edges {
        let (ci, cj) = (comp[i], comp[j]);
        if ci != cj {
            comp.iter_mut().filter(|c| **c == cj).for_each(|c| *c = ci);
            weights.push(w);
        }
    }
    weights
}

fn rips_oracle_equivalence() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut truncated = 0;
    for case in 0..500 {
        let n = rng.random_range(1..=8);
        let points: Vec<[f64; 2]> = (0..n).map(|_| [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)]).collect();
        // Every other case truncates the filtration below the diameter.
        let scale = if case % 2 == 0 { 2.0 } else { rng.random_range(0.1..1.0) };
        truncated += usize::from(case % 2 == 1);
        let cloud = PointCloud::new(points.clone());
        let d = vietoris_rips(&cloud, 1, scale).map_err(|e| e.to_string())?;
        let (h0, h1) = rips_oracle(&points, scale);
        if pairs_of(&d[0]) != h0 || pairs_of(&d[1]) != h1 {
            return Err(format!("case {case}: {points:?} at {scale}: got {:?} {:?}, oracle {h0:?} {h1:?}", d[0], d[1]));
        }
        if case % 2 == 0 {
            let mut deaths: Vec<f64> = d[0].pairs.iter().filter(|p| !p.is_essential()).map(|p| p.death).collect();
            deaths.sort_by(f64::total_cmp);
            let mst = mst_weights(&points);
            if deaths.len() != mst.len() || deaths.iter().zip(&mst).any(|(a, b)| (a - b).abs() > 1e-12) {
                return Err(format!("case {case}: H0 deaths {deaths:?} vs MST {mst:?}"));
            }
        }
    }
    Ok(format!("500 clouds match the dense reduction ({truncated} truncated); MST weights match"))
}

fn rips_fixed_cases() -> Result<String, String> {
    let square = PointCloud::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
    let d = vietoris_rips(&square, 1, 10.0).map_err(|e| e.to_string())?;
    let h1 = &d[1].pairs;
    let ok = h1.len() == 1 && (h1[0].birth - 1.0).abs() <= 1e-12 && (h1[0].death - 2f64.sqrt()).abs() <= 1e-12;
    if !ok {
        return Err(format!("unit square H1 = {h1:?}"));
    }
    let tri = PointCloud::new(vec![[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]);
    let d = vietoris_rips(&tri, 1, 10.0).map_err(|e| e.to_string())?;
    if !d[1].is_empty() {
        return Err(format!("equilateral triangle H1 = {:?}", d[1].pairs));
    }
    Ok("unit square H1 = {(1, sqrt 2)}, equilateral triangle H1 empty".into())
}

// ---------------------------------------------------------------------------
// Cubical persistence

fn flood_components(rows: usize, cols: usize, inside: &dyn Fn(usize) -> bool) -> usize {
    let mut seen = vec![false; rows * cols];
    let mut count = 0;
    for s in 0..rows * cols {
        if seen[s] || !inside(s) {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            let (r, c) = (v / cols, v % cols);
            let mut nb = Vec::new();
            if r > 0 {
                nb.push(v - cols);
            }
            if r + 1 < rows {
                nb.push(v + cols);
            }
            if c > 0 {
                nb.push(v - 1);
            }
            if c + 1 < cols {
                nb.push(v + 1);
            }
            for u in nb {
                if !seen[u] && inside(u) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    count
}

fn euler_characteristic(rows: usize, cols: usize, inside: &dyn Fn(usize) -> bool) -> i64 {
    let at = |r: usize, c: usize| inside(r * cols + c);
    let mut chi = 0i64;
    for r in 0..rows {
        for c in 0..cols {
            chi += i64::from(at(r, c));
            if c + 1 < cols {
                chi -= i64::from(at(r, c) && at(r, c + 1));
            }
            if r + 1 < rows {
                chi -= i64::from(at(r, c) && at(r + 1, c));
            }
            if r + 1 < rows && c + 1 < cols {
                chi += i64::from(at(r, c) && at(r, c + 1) && at(r + 1, c) && at(r + 1, c + 1));
            }
        }
    }
    chi
}

fn cubical_consistency() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checks = 0;
    for case in 0..200 {
        let (rows, cols) = (rng.random_range(2..=12), rng.random_range(2..=12));
        let values: Vec<f64> = (0..rows * cols).map(|_| rng.random_range(0..10) as f64).collect();
        let map = HeatMap::from_grid(rows, cols, values.clone()).map_err(|e| e.to_string())?;
        let sub = sublevel_cubical_2d(&map, Direction::Sublevel);
        let sup = sublevel_cubical_2d(&map, Direction::Superlevel);
        // Thresholds strictly between consecutive levels, plus both ends.
        let thresholds: Vec<f64> = (-1..=10).map(|v| v as f64 + 0.5).collect();
        for &t in &thresholds {
            // Sublevel set {v <= t}: a pair is alive when birth <= t < death.
            let alive = |d: &PersistenceDiagram| d.pairs.iter().filter(|p| p.birth <= t && t < p.death).count() as i64;
            let below = |i: usize| values[i] <= t;
            let (b0, b1) = (alive(&sub[0]), alive(&sub[1]));
            if b0 != flood_components(rows, cols, &below) as i64 || b0 - b1 != euler_characteristic(rows, cols, &below) {
                return Err(format!("case {case} sublevel t={t}: b0={b0} b1={b1}"));
            }
            // Superlevel set {v >= t}: a finite pair (merge level, peak) is
            // alive for merge < t <= peak; an essential pair for t <= birth.
            let alive_up = |d: &PersistenceDiagram| {
                d.pairs
                    .iter()
                    .filter(|p| if p.is_essential() { t <= p.birth } else { p.birth < t && t <= p.death })
                    .count() as i64
            };
            let above = |i: usize| values[i] >= t;
            let (u0, u1) = (alive_up(&sup[0]), alive_up(&sup[1]));
            if u0 != flood_components(rows, cols, &above) as i64 || u0 - u1 != euler_characteristic(rows, cols, &above) {
                return Err(format!("case {case} superlevel t={t}: b0={u0} b1={u1}"));
            }
            checks += 2;
        }
    }
    Ok(format!("{checks} threshold checks on 200 grids (sublevel and superlevel)"))
}

// ---------------------------------------------------------------------------
// Vectorization

fn random_diagram(rng: &mut ChaCha8Rng) -> PersistenceDiagram {
    let n = rng.random_range(0..=100);
    let pairs = (0..n)
        .map(|_| {
            let b: f64 = rng.random_range(-2.0..8.0);
            if rng.random_bool(0.1) {
                PersistencePair::essential(b)
            } else {
                PersistencePair::new(b, b + rng.random_range(0.0..6.0))
            }
        })
        .collect();
    PersistenceDiagram::new(0, gazetopo::persistence::FiltrationKind::LowerStar, pairs)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn vectorization_oracles() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..500 {
        let d = random_diagram(&mut rng);
        let start = rng.random_range(-3.0..3.0);
        let grid = CurveGrid::new(start, start + rng.random_range(0.5..10.0), rng.random_range(2..=60)).unwrap();
        let levels = rng.random_range(1..=4);
        let step = (grid.end - grid.start) / (grid.knots - 1) as f64;
        let eps: Vec<f64> =
            (0..grid.knots).map(|i| if i + 1 == grid.knots { grid.end } else { grid.start + i as f64 * step }).collect();
        let clip = |p: &PersistencePair| p.death.min(grid.end);
        let total: f64 = d.pairs.iter().map(|p| (clip(p) - p.birth).max(0.0)).sum();

        let betti = betti_curve(&d, &grid).values;
        let pers = persistence_curve(&d, &grid).values;
        let land = landscape(&d, &grid, levels).values;
        let ent = entropy_curve(&d, &grid).values;
        for (i, &e) in eps.iter().enumerate() {
            let b = d.pairs.iter().filter(|p| p.birth <= e && e < p.death).count() as f64;
            let pc: f64 = d.pairs.iter().filter(|p| p.birth < e && e < clip(p)).map(|p| clip(p) - p.birth).sum();
            let mut tents: Vec<f64> = d.pairs.iter().map(|p| (e - p.birth).min(clip(p) - e).max(0.0)).collect();
            tents.sort_by(|a, b| b.total_cmp(a));
            let en: f64 = d
                .pairs
                .iter()
                .filter(|p| p.birth <= e && e < p.death)
                .map(|p| (clip(p) - p.birth).max(0.0) / total)
                .filter(|&q| q > 0.0)
                .map(|q| -q * q.ln())
                .sum();
            if betti[i] != b || !close(pers[i], pc) || !close(ent[i], en) {
                return Err(format!("case {case} knot {i}: betti {} vs {b}, pers {} vs {pc}, entropy {} vs {en}", betti[i], pers[i], ent[i]));
            }
            for k in 0..levels {
                let want = tents.get(k).copied().unwrap_or(0.0);
                let got = land[k * grid.knots + i];
                if !close(got, want) {
                    return Err(format!("case {case} knot {i} level {k}: landscape {got} vs {want}"));
                }
                if k > 0 && land[(k - 1) * grid.knots + i] < got {
                    return Err(format!("case {case} knot {i}: landscape levels not decreasing"));
                }
                if got < 0.0 {
                    return Err(format!("case {case}: negative landscape"));
                }
            }
        }
    }
    Ok("500 diagrams match direct enumeration; landscape levels ordered".into())
}

// ---------------------------------------------------------------------------
// Macro statistics

/// Extreme points are those outside every triangle and segment of the
/// others; sorted by angle around their centroid they form the hull.
fn brute_hull_area(points: &[[f64; 2]]) -> f64 {
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut unique: Vec<[f64; 2]> = points.to_vec();
    unique.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    unique.dedup();
    let n = unique.len();
    let in_triangle = |p: [f64; 2], a: [f64; 2], b: [f64; 2], c: [f64; 2]| {
        let (d1, d2, d3) = (cross(a, b, p), cross(b, c, p), cross(c, a, p));
        let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
        let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
        !(neg && pos)
    };
    let on_segment = |p: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        cross(a, b, p) == 0.0
            && p[0] >= a[0].min(b[0])
            && p[0] <= a[0].max(b[0])
            && p[1] >= a[1].min(b[1])
            && p[1] <= a[1].max(b[1])
    };
    let mut extreme = Vec::new();
    'outer: for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        for (x, &a) in others.iter().enumerate() {
            for (y, &b) in others.iter().enumerate().skip(x + 1) {
                if on_segment(unique[i], unique[a], unique[b]) {
                    continue 'outer;
                }
                for &c in others.iter().skip(y + 1) {
                    let (pa, pb, pc) = (unique[a], unique[b], unique[c]);
                    if cross(pa, pb, pc) != 0.0 && in_triangle(unique[i], pa, pb, pc) {
                        continue 'outer;
                    }
                }
            }
        }
        extreme.push(unique[i]);
    }
    if extreme.len() < 3 {
        return 0.0;
    }
    let m = extreme.len() as f64;
    let cx = extreme.iter().map(|p| p[0]).sum::<f64>() / m;
    let cy = extreme.iter().map(|p| p[1]).sum::<f64>() / m;
    extreme.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
    let k = extreme.len();
    let twice: f64 = (0..k).map(|i| cross([0.0, 0.0], extreme[i], extreme[(i + 1) % k])).sum();
    0.5 * twice.abs()
}

fn macro_statistics() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..500 {
        let n = rng.random_range(1..=12);
        // Integer clouds exercise duplicates and collinear points.
        let points: Vec<[f64; 2]> = if case % 3 == 0 {
            (0..n).map(|_| [rng.random_range(0..4) as f64, rng.random_range(0..4) as f64]).collect()
        } else {
            (0..n).map(|_| [rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)]).collect()
        };
        let got = convex_hull_area(&PointCloud::new(points.clone()));
        let want = brute_hull_area(&points);
        if (got - want).abs() > 1e-12 * want.max(f64::MIN_POSITIVE) && got != want {
            return Err(format!("case {case}: hull area {got} vs {want} for {points:?}"));
        }
    }

    let tracks = generate_synthetic(&SynthConfig::preset(3, 34), 9).map_err(|e| e.to_string())?;
    let mut saccades = 0;
    let tracks: Vec<_> = tracks.iter().map(|t| preprocess(t, 30.0)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    for t in &tracks {
        let (_, sacc) = segment_events(t).map_err(|e| e.to_string())?;
        for s in &sacc {
            if integral_amplitude(s) < saccade_amplitude(s) {
                return Err(format!("{}: IAMP < AMP on a saccade", t.track_id));
            }
        }
        saccades += sacc.len();
    }
    let names = macro_feature_names();
    for t in tracks.iter().take(100) {
        let f = macro_features(t).map_err(|e| e.to_string())?;
        if f.values.len() != MacroFeatureVector::LEN || names.len() != f.values.len() || f.values.iter().any(|v| !v.is_finite()) {
            return Err(format!("{}: schema or finiteness violated", t.track_id));
        }
    }
    Ok(format!("500 hulls match; IAMP >= AMP on {saccades} saccades; {}-column schema on 100 tracks", names.len()))
}

// ---------------------------------------------------------------------------
// End-to-end experiment and determinism

/// Seeded results of the end-to-end run, kept as regression anchors.
const ANCHOR_MACRO: f64 = 1.0;
const ANCHOR_TS: f64 = 1.0;

fn end_to_end() -> Result<String, String> {
    let data = generate_synthetic(&SynthConfig::preset(3, 40), 7).map_err(|e| e.to_string())?;
    let config = ExperimentConfig {
        feature_sets: vec!["macro".into(), "ts_x+ts_y+ts_amp".into()],
        repetitions: 10,
        seed: 7,
        ..ExperimentConfig::default()
    };
    let report = run_experiment(&data, &config).map_err(|e| e.to_string())?;
    let (m, ts) = (&report.results[0], &report.results[1]);
    let summary = format!("macro {:.4} ± {:.4}, ts_x+ts_y+ts_amp {:.4} ± {:.4}", m.mean, m.std, ts.mean, ts.std);
    if m.mean < 0.9 || ts.mean < 0.9 {
        return Err(format!("accuracy below 0.90: {summary}"));
    }
    if m.mean != ANCHOR_MACRO || ts.mean != ANCHOR_TS {
        return Err(format!("regression anchors moved: {summary}"));
    }
    Ok(summary)
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).expect("temp dir is writable");
}

fn determinism() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    write(&dir.path().join("synth.toml"), "classes = 3\ntracks_per_class = 8\ntrack_length = 800\n");
    write(
        &dir.path().join("exp.toml"),
        "feature_sets = [\"macro\", \"ts_x+ts_y+ts_amp\", \"heatmap+landscape+vr\"]\n\
         repetitions = 4\ntrees = 30\nknots = 40\nheatmap_size = 16\nvr_max_points = 24\n\
         synth_config = \"synth.toml\"\n",
    );
    let run = |name: &str, jobs: Option<&str>| -> Result<Vec<u8>, String> {
        let out = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_gazetopo"));
        cmd.arg("experiment").arg("--config").arg(dir.path().join("exp.toml")).args(["--seed", "7", "--out"]).arg(&out);
        if let Some(j) = jobs {
            cmd.args(["--jobs", j]);
        }
        let status = cmd.output().map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("experiment failed: {}", String::from_utf8_lossy(&status.stderr)));
        }
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let first = run("a.json", None)?;
    for (name, jobs) in [("b.json", None), ("c.json", None), ("j1.json", Some("1")), ("j4.json", Some("4"))] {
        if run(name, jobs)? != first {
            return Err(format!("{name} differs from the first run"));
        }
    }
    Ok(format!("3 runs and --jobs 1/4 give identical {}-byte reports", first.len()))
}

// ---------------------------------------------------------------------------

type Criterion = (&'static str, Duration, fn() -> Result<String, String>);

fn main() {
    let criteria: [Criterion; 9] = [
        ("lower-star oracle equivalence", Duration::from_secs(10), lower_star_oracle),
        ("lower-star stability", Duration::from_secs(30), lower_star_stability),
        ("VR oracle equivalence", Duration::from_secs(60), rips_oracle_equivalence),
        ("VR fixed cases", Duration::MAX, rips_fixed_cases),
        ("cubical consistency", Duration::from_secs(60), cubical_consistency),
        ("vectorization oracles", Duration::MAX, vectorization_oracles),
        ("macro statistics", Duration::MAX, macro_statistics),
        ("end-to-end experiment", Duration::from_secs(120), end_to_end),
        ("determinism", Duration::MAX, determinism),
    ];
    // Silence the default panic printout; failures are reported below.
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.1?}, budget {budget:.0?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name:<32} {elapsed:>9.2?}  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name:<32} {elapsed:>9.2?}  {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
