use serde::{Deserialize, Serialize};

use super::reduction::reduce;
use super::union_find::UnionFind;
use super::{FiltrationKind, PersistenceDiagram, PersistencePair};
use crate::gaze::HeatMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Sublevel,
    Superlevel,
}

/// Cubical persistence (dimensions 0 and 1) of a grid.
///
/// Grid cells are the vertices of the complex. Edges join 4-neighbours and
/// enter at the larger endpoint value; each 2x2 block of vertices spans a
/// square entering at its maximum. Superlevel persistence is sublevel
/// persistence of the negated grid, mapped back.
pub fn sublevel_cubical_2d(map: &HeatMap, direction: Direction) -> Vec<PersistenceDiagram> {
    match direction {
        Direction::Sublevel => grid_persistence(map.rows, map.cols, &map.values),
        Direction::Superlevel => {
            let negated: Vec<f64> = map.values.iter().map(|v| -v).collect();
            grid_persistence(map.rows, map.cols, &negated)
                .iter()
                .map(|d| d.negated(FiltrationKind::SuperlevelCubical))
                .collect()
        }
    }
}

fn grid_persistence(rows: usize, cols: usize, values: &[f64]) -> Vec<PersistenceDiagram> {
    vec![
        PersistenceDiagram::new(0, FiltrationKind::SublevelCubical, dim0(rows, cols, values)),
        PersistenceDiagram::new(1, FiltrationKind::SublevelCubical, dim1(rows, cols, values)),
    ]
    .into_iter()
    .map(|mut d| {
        d.normalize();
        d
    })
    .collect()
}

fn dim0(rows: usize, cols: usize, values: &[f64]) -> Vec<PersistencePair> {
    let n = rows * cols;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut uf = UnionFind::new(n);
    let oldest: Vec<usize> = (0..n).collect();
    let mut active = vec![false; n];
    let mut pairs = Vec::new();

    for &v in &order {
        active[v] = true;
        let (r, c) = (v / cols, v % cols);
        let neighbors = [
            (r > 0).then(|| v - cols),
            (r + 1 < rows).then(|| v + cols),
            (c > 0).then(|| v - 1),
            (c + 1 < cols).then(|| v + 1),
        ];
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
    pairs
}

/// Loops are born by edges and killed by squares; the full grid is
/// contractible, so every loop dies and only square columns need reducing.
fn dim1(rows: usize, cols: usize, values: &[f64]) -> Vec<PersistencePair> {
    if rows < 2 || cols < 2 {
        return Vec::new();
    }
    let idx = |r: usize, c: usize| r * cols + c;
    let h_edges = rows * (cols - 1);
    let h_edge = |r: usize, c: usize| r * (cols - 1) + c;
    let v_edge = |r: usize, c: usize| h_edges + r * cols + c;

    // Cells 0..n_edges are edges, the rest squares; value of each.
    let mut cell_value = Vec::new();
    let mut cell_faces: Vec<Vec<usize>> = Vec::new();
    for r in 0..rows {
        for c in 0..cols - 1 {
            cell_value.push(values[idx(r, c)].max(values[idx(r, c + 1)]));
            cell_faces.push(Vec::new());
        }
    }
    for r in 0..rows - 1 {
        for c in 0..cols {
            cell_value.push(values[idx(r, c)].max(values[idx(r + 1, c)]));
            cell_faces.push(Vec::new());
        }
    }
    for r in 0..rows - 1 {
        for c in 0..cols - 1 {
            let m = values[idx(r, c)].max(values[idx(r, c + 1)]).max(values[idx(r + 1, c)]).max(values[idx(r + 1, c + 1)]);
            cell_value.push(m);
            cell_faces.push(vec![h_edge(r, c), h_edge(r + 1, c), v_edge(r, c), v_edge(r, c + 1)]);
        }
    }

    let n_edges = h_edges + (rows - 1) * cols;
    let dim_of = |cell: usize| usize::from(cell >= n_edges);
    let mut order: Vec<usize> = (0..cell_value.len()).collect();
    order.sort_by(|&a, &b| cell_value[a].total_cmp(&cell_value[b]).then(dim_of(a).cmp(&dim_of(b))).then(a.cmp(&b)));
    let mut position = vec![0usize; order.len()];
    for (p, &cell) in order.iter().enumerate() {
        position[cell] = p;
    }
    let boundaries: Vec<Vec<usize>> = order
        .iter()
        .map(|&cell| {
            let mut b: Vec<usize> = cell_faces[cell].iter().map(|&f| position[f]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let dims: Vec<usize> = order.iter().map(|&cell| dim_of(cell)).collect();

    reduce(&boundaries, &dims)
        .pairs
        .into_iter()
        .map(|(b, d)| (cell_value[order[b]], cell_value[order[d]]))
        .filter(|(b, d)| d > b)
        .map(|(b, d)| PersistencePair::new(b, d))
        .collect()
}
