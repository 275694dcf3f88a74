use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{GazeError, Point, ScanPath};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Bandwidth {
    /// Scott's rule: `n^(-1/6)` times the mean of the per-axis (population)
    /// standard deviations.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extent {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

/// Gaussian-KDE attention map. Row `r` runs along y, column `c` along x;
/// values are stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatMap {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
    pub extent: Extent,
    pub bandwidth: f64,
}

impl HeatMap {
    /// Wraps a raw grid; used for cubical persistence on arbitrary data.
    pub fn from_grid(rows: usize, cols: usize, values: Vec<f64>) -> Result<HeatMap, GazeError> {
        if rows < 2 || cols < 2 || values.len() != rows * cols {
            return Err(GazeError::InvalidArgument(format!(
                "grid must be at least 2x2 with rows*cols values, got {rows}x{cols} with {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(GazeError::InvalidArgument("grid values must be finite".into()));
        }
        let extent = Extent { x_min: 0.0, x_max: cols as f64, y_min: 0.0, y_max: rows as f64 };
        Ok(HeatMap { rows, cols, values, extent, bandwidth: 0.0 })
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    pub fn cell_size(&self) -> (f64, f64) {
        let e = &self.extent;
        ((e.x_max - e.x_min) / self.cols as f64, (e.y_max - e.y_min) / self.rows as f64)
    }

    pub fn cell_center(&self, row: usize, col: usize) -> Point {
        let (dx, dy) = self.cell_size();
        [self.extent.x_min + (col as f64 + 0.5) * dx, self.extent.y_min + (row as f64 + 0.5) * dy]
    }

    /// Cell containing `p`, clamped to the grid.
    pub fn cell_of(&self, p: Point) -> (usize, usize) {
        let (dx, dy) = self.cell_size();
        let col = ((p[0] - self.extent.x_min) / dx).floor().clamp(0.0, (self.cols - 1) as f64);
        let row = ((p[1] - self.extent.y_min) / dy).floor().clamp(0.0, (self.rows - 1) as f64);
        (row as usize, col as usize)
    }

    pub fn argmax(&self) -> (usize, usize) {
        let i = (0..self.values.len())
            .max_by(|&a, &b| self.values[a].total_cmp(&self.values[b]).then(b.cmp(&a)))
            .unwrap_or(0);
        (i / self.cols, i % self.cols)
    }
}

/// Isotropic Gaussian KDE of the gaze points, evaluated at cell centers of a
/// `grid_h` x `grid_w` grid spanning the point bounding box padded by three
/// bandwidths.
pub fn to_heatmap(path: &ScanPath, grid_h: usize, grid_w: usize, bandwidth: Bandwidth) -> Result<HeatMap, GazeError> {
    if grid_h < 2 || grid_w < 2 {
        return Err(GazeError::InvalidArgument(format!("heatmap grid must be at least 2x2, got {grid_h}x{grid_w}")));
    }
    let points = path.points()?;
    if points.len() < 2 {
        return Err(GazeError::DegenerateTrack(format!("{} has fewer than 2 samples", path.track_id)));
    }
    let h = match bandwidth {
        Bandwidth::Fixed(h) if h > 0.0 && h.is_finite() => h,
        Bandwidth::Fixed(h) => return Err(GazeError::InvalidArgument(format!("bandwidth must be positive, got {h}"))),
        Bandwidth::Auto => scott_bandwidth(&points).ok_or(GazeError::ZeroVariance)?,
    };

    let (mut x_min, mut x_max, mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in &points {
        x_min = x_min.min(p[0]);
        x_max = x_max.max(p[0]);
        y_min = y_min.min(p[1]);
        y_max = y_max.max(p[1]);
    }
    let pad = 3.0 * h;
    let extent = Extent { x_min: x_min - pad, x_max: x_max + pad, y_min: y_min - pad, y_max: y_max + pad };

    let mut map = HeatMap { rows: grid_h, cols: grid_w, values: vec![0.0; grid_h * grid_w], extent, bandwidth: h };
    let norm = 1.0 / (points.len() as f64 * 2.0 * PI * h * h);
    let inv = 1.0 / (2.0 * h * h);
    for r in 0..grid_h {
        for c in 0..grid_w {
            let g = map.cell_center(r, c);
            let s: f64 = points
                .iter()
                .map(|p| {
                    let (dx, dy) = (g[0] - p[0], g[1] - p[1]);
                    (-(dx * dx + dy * dy) * inv).exp()
                })
                .sum();
            map.values[r * grid_w + c] = s * norm;
        }
    }
    if map.values.iter().sum::<f64>() <= 0.0 {
        return Err(GazeError::DegenerateTrack(format!("{}: density underflows on the grid", path.track_id)));
    }
    Ok(map)
}

fn scott_bandwidth(points: &[Point]) -> Option<f64> {
    let n = points.len() as f64;
    let std = |axis: usize| {
        let mean = points.iter().map(|p| p[axis]).sum::<f64>() / n;
        (points.iter().map(|p| (p[axis] - mean).powi(2)).sum::<f64>() / n).sqrt()
    };
    let h = n.powf(-1.0 / 6.0) * 0.5 * (std(0) + std(1));
    (h > 0.0).then_some(h)
}
