use serde::{Deserialize, Serialize};

use super::{dist, GazeError, Point, ScanPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    X,
    Y,
    /// Elementary step length between consecutive samples.
    Amp,
}

impl Channel {
    pub fn name(self) -> &'static str {
        match self {
            Channel::X => "x",
            Channel::Y => "y",
            Channel::Amp => "amp",
        }
    }
}

/// A 1D signal extracted from a scanpath.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub values: Vec<f64>,
    pub channel: Channel,
    pub track_id: String,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, channel: Channel) -> Self {
        TimeSeries { values, channel, track_id: String::new() }
    }
}

/// Extracts the X, Y or step-amplitude series of a preprocessed path.
pub fn to_time_series(path: &ScanPath, channel: Channel) -> Result<TimeSeries, GazeError> {
    let points = path.points()?;
    if points.len() < 2 {
        return Err(GazeError::DegenerateTrack(format!("{} has fewer than 2 samples", path.track_id)));
    }
    let values = match channel {
        Channel::X => points.iter().map(|p| p[0]).collect(),
        Channel::Y => points.iter().map(|p| p[1]).collect(),
        Channel::Amp => points.windows(2).map(|w| dist(w[0], w[1])).collect(),
    };
    Ok(TimeSeries { values, channel, track_id: path.track_id.clone() })
}

/// Unordered multiset of gaze positions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud {
    pub points: Vec<Point>,
}

impl PointCloud {
    pub fn new(points: Vec<Point>) -> Self {
        PointCloud { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Multiset equality, ignoring point order.
    pub fn same_multiset(&self, other: &PointCloud) -> bool {
        let sorted = |c: &PointCloud| {
            let mut v = c.points.clone();
            v.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
            v
        };
        self.len() == other.len() && sorted(self) == sorted(other)
    }

    /// Keeps at most `max_points` points, taken at evenly spaced indices.
    pub fn subsample(&self, max_points: usize) -> PointCloud {
        let n = self.points.len();
        if n <= max_points || max_points == 0 {
            return self.clone();
        }
        let points = (0..max_points).map(|k| self.points[k * n / max_points]).collect();
        PointCloud { points }
    }
}

pub fn to_point_cloud(path: &ScanPath) -> Result<PointCloud, GazeError> {
    Ok(PointCloud { points: path.points()? })
}
