use super::reduction::reduce;
use super::{FiltrationKind, PersistenceDiagram, PersistenceError, PersistencePair};
use crate::gaze::PointCloud;

/// Euclidean distance matrix (computed with `f64::hypot`).
pub fn pairwise_distances(cloud: &PointCloud) -> Vec<Vec<f64>> {
    let p = &cloud.points;
    p.iter()
        .map(|a| p.iter().map(|b| (a[0] - b[0]).hypot(a[1] - b[1])).collect())
        .collect()
}

struct Simplex {
    value: f64,
    vertices: Vec<usize>,
}

/// Vietoris–Rips persistence in dimensions `0..=max_dim` (`max_dim ≤ 1`).
///
/// A simplex enters at its diameter (the longest edge), vertices at 0.
/// Simplices with diameter above `max_scale` are left out, so classes still
/// alive at the truncation scale are reported as essential. Cells are ordered
/// by value, then dimension, then lexicographic vertex list, and the boundary
/// matrix is reduced over Z/2.
pub fn vietoris_rips(cloud: &PointCloud, max_dim: usize, max_scale: f64) -> Result<Vec<PersistenceDiagram>, PersistenceError> {
    if !(max_scale > 0.0) {
        return Err(PersistenceError::InvalidArgument(format!("max_scale must be positive, got {max_scale}")));
    }
    if max_dim > 1 {
        return Err(PersistenceError::InvalidArgument(format!("max_dim must be 0 or 1, got {max_dim}")));
    }
    let n = cloud.len();
    let dist = pairwise_distances(cloud);

    let mut simplices: Vec<Simplex> = (0..n).map(|i| Simplex { value: 0.0, vertices: vec![i] }).collect();
    for i in 0..n {
        for j in i + 1..n {
            if dist[i][j] <= max_scale {
                simplices.push(Simplex { value: dist[i][j], vertices: vec![i, j] });
            }
        }
    }
    if max_dim >= 1 {
        for i in 0..n {
            for j in i + 1..n {
                if dist[i][j] > max_scale {
                    continue;
                }
                for k in j + 1..n {
                    let diam = dist[i][j].max(dist[i][k]).max(dist[j][k]);
                    if diam <= max_scale {
                        simplices.push(Simplex { value: diam, vertices: vec![i, j, k] });
                    }
                }
            }
        }
    }
    simplices.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });

    let mut vertex_col = vec![0usize; n];
    let mut edge_col = vec![usize::MAX; n * n];
    let mut boundaries = Vec::with_capacity(simplices.len());
    let mut dims = Vec::with_capacity(simplices.len());
    for (col, s) in simplices.iter().enumerate() {
        let v = &s.vertices;
        let mut b = match v.len() {
            1 => {
                vertex_col[v[0]] = col;
                vec![]
            }
            2 => {
                edge_col[v[0] * n + v[1]] = col;
                vec![vertex_col[v[0]], vertex_col[v[1]]]
            }
            _ => vec![edge_col[v[0] * n + v[1]], edge_col[v[0] * n + v[2]], edge_col[v[1] * n + v[2]]],
        };
        b.sort_unstable();
        boundaries.push(b);
        dims.push(v.len() - 1);
    }

    let pairing = reduce(&boundaries, &dims);
    let mut diagrams: Vec<PersistenceDiagram> =
        (0..=max_dim).map(|d| PersistenceDiagram::new(d, FiltrationKind::VietorisRips, Vec::new())).collect();
    for (b, d) in pairing.pairs {
        let (birth, death) = (simplices[b].value, simplices[d].value);
        if dims[b] <= max_dim && death > birth {
            diagrams[dims[b]].pairs.push(PersistencePair::new(birth, death));
        }
    }
    for e in pairing.essential {
        if dims[e] <= max_dim {
            diagrams[dims[e]].pairs.push(PersistencePair::essential(simplices[e].value));
        }
    }
    diagrams.iter_mut().for_each(PersistenceDiagram::normalize);
    Ok(diagrams)
}
