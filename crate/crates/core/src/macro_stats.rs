//! Classical macro-event statistics of a labeled scanpath: counts, lengths
//! and amplitudes of fixations and saccades, the track's total path length
//! and the area of its convex hull.

use serde::Serialize;
use thiserror::Error;

use crate::gaze::{self, GazeError, Point, PointCloud, ScanPath};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MacroError {
    #[error("segment has a single point, no elementary step exists")]
    DegenerateSegment,
    #[error(transparent)]
    Gaze(#[from] GazeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SegmentKind {
    Fixation,
    Saccade,
}

/// A maximal run of fixation- or saccade-labeled samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub points: Vec<Point>,
    /// First sample index in the source track.
    pub start_index: usize,
    /// Last sample index (inclusive).
    pub end_index: usize,
}

impl Segment {
    pub fn new(kind: SegmentKind, points: Vec<Point>) -> Segment {
        let end_index = points.len().saturating_sub(1);
        Segment { kind, points, start_index: 0, end_index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn steps(points: &[Point]) -> impl Iterator<Item = f64> + '_ {
    points.windows(2).map(|w| gaze::dist(w[0], w[1]))
}

/// Distance between the first and last point.
pub fn saccade_amplitude(seg: &Segment) -> f64 {
    match (seg.points.first(), seg.points.last()) {
        (Some(&a), Some(&b)) => gaze::dist(a, b),
        _ => 0.0,
    }
}

/// Sum of elementary step lengths.
pub fn integral_amplitude(seg: &Segment) -> f64 {
    steps(&seg.points).fold(0.0, |a, b| a + b)
}

pub fn track_integral_amplitude(path: &ScanPath) -> Result<f64, GazeError> {
    Ok(steps(&path.points()?).fold(0.0, |a, b| a + b))
}

/// Largest elementary step.
pub fn peak_amplitude(seg: &Segment) -> Result<f64, MacroError> {
    steps(&seg.points).reduce(f64::max).ok_or(MacroError::DegenerateSegment)
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull vertices in counter-clockwise order (monotone chain). Collinear
/// and duplicate points are dropped; degenerate inputs give fewer than three
/// vertices.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Shoelace area of a simple polygon given in order.
pub fn polygon_area(vertices: &[Point]) -> f64 {
    if vertices.len() < 3 {
        return 0.0;
    }
    let n = vertices.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum();
    (0.5 * twice).abs()
}

pub fn convex_hull_area(cloud: &PointCloud) -> f64 {
    polygon_area(&convex_hull(&cloud.points))
}

/// Min, max, mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Summary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
}

impl Summary {
    pub fn to_array(self) -> [f64; 4] {
        [self.min, self.max, self.mean, self.std]
    }
}

/// Empty input summarizes to all zeros.
pub fn summarize(values: &[f64]) -> Summary {
    if values.is_empty() {
        return Summary::default();
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // Constant input: avoid rounding noise in mean and std.
    if min == max {
        return Summary { min, max, mean: min, std: 0.0 };
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Summary { min, max, mean, std: var.sqrt() }
}

const SUMMARY_SUFFIX: [&str; 4] = ["min", "max", "mean", "std"];
const SUMMARIZED: [&str; 6] = [
    "fixation_length",
    "saccade_length",
    "saccade_amplitude",
    "fixation_iamp",
    "saccade_iamp",
    "saccade_peak_amplitude",
];

/// Column names of [`MacroFeatureVector`], in order.
pub fn macro_feature_names() -> Vec<String> {
    let mut names = vec!["n_fixations".to_string(), "n_saccades".to_string()];
    for stat in SUMMARIZED {
        names.extend(SUMMARY_SUFFIX.iter().map(|s| format!("{stat}_{s}")));
    }
    names.push("track_iamp".into());
    names.push("convex_hull_area".into());
    names
}

/// Fixed-schema macro-event feature vector of one track.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MacroFeatureVector {
    pub values: Vec<f64>,
}

impl MacroFeatureVector {
    pub const LEN: usize = 2 + 4 * SUMMARIZED.len() + 2;

    pub fn get(&self, name: &str) -> Option<f64> {
        macro_feature_names().iter().position(|n| n == name).map(|i| self.values[i])
    }

    pub fn csv_header() -> String {
        let mut h = String::from("track_id");
        for n in macro_feature_names() {
            h.push(',');
            h.push_str(&n);
        }
        h
    }

    pub fn csv_row(&self, track_id: &str) -> String {
        let mut row = track_id.to_string();
        for v in &self.values {
            row.push(',');
            row.push_str(&v.to_string());
        }
        row
    }
}

/// All macro-event statistics of a preprocessed, labeled track.
///
/// Peak amplitude is undefined for single-sample saccades; those are left
/// out of the peak-amplitude summary only.
pub fn macro_features(path: &ScanPath) -> Result<MacroFeatureVector, MacroError> {
    let points = path.points()?;
    if points.len() < 2 {
        return Err(GazeError::DegenerateTrack(format!("{} has fewer than 2 samples", path.track_id)).into());
    }
    let (fixations, saccades) = gaze::segment_events(path)?;
    let lens = |segs: &[Segment]| segs.iter().map(|s| s.len() as f64).collect::<Vec<_>>();
    let iamps = |segs: &[Segment]| segs.iter().map(integral_amplitude).collect::<Vec<_>>();

    let sets = [
        lens(&fixations),
        lens(&saccades),
        saccades.iter().map(saccade_amplitude).collect(),
        iamps(&fixations),
        iamps(&saccades),
        saccades.iter().filter_map(|s| peak_amplitude(s).ok()).collect::<Vec<_>>(),
    ];

    let mut values = Vec::with_capacity(MacroFeatureVector::LEN);
    values.push(fixations.len() as f64);
    values.push(saccades.len() as f64);
    for set in &sets {
        values.extend(summarize(set).to_array());
    }
    values.push(steps(&points).fold(0.0, |a, b| a + b));
    values.push(convex_hull_area(&PointCloud::new(points)));
    Ok(MacroFeatureVector { values })
}
