//! Gaze recordings: parsing, cleaning, and the derived data representations
//! (time series, point cloud, heatmap) that feed the topological features.

mod heatmap;
mod parse;
mod preprocess;
mod repr;
mod segment;
pub mod synth;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use heatmap::{to_heatmap, Bandwidth, Extent, HeatMap};
pub use parse::{parse_track, write_track};
pub use preprocess::{preprocess, DEFAULT_SPIKE_THRESHOLD};
pub use repr::{to_point_cloud, to_time_series, Channel, PointCloud, TimeSeries};
pub use segment::{label_runs, segment_events};
pub use synth::{generate_synthetic, ClassParams, SynthConfig};

/// A 2D gaze position in degrees of visual angle.
pub type Point = [f64; 2];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GazeError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: timestamp {t} does not increase on the previous sample")]
    NonIncreasingTimestamp { line: usize, t: i64 },
    #[error("degenerate track: {0}")]
    DegenerateTrack(String),
    #[error("track contains missing coordinates; preprocess it first")]
    NotPreprocessed,
    #[error("all points are identical; pass an explicit bandwidth")]
    ZeroVariance,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid synthetic config: {0}")]
    Config(String),
}

/// Event label attached to each sample by the tracker's parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Fixation,
    Saccade,
    Blink,
    Unknown,
}

impl Label {
    /// Numeric code used in track files, `None` for an unlabeled sample.
    pub fn code(self) -> Option<u8> {
        match self {
            Label::Fixation => Some(0),
            Label::Saccade => Some(1),
            Label::Blink => Some(2),
            Label::Unknown => None,
        }
    }

    pub fn from_code(code: i64) -> Label {
        match code {
            0 => Label::Fixation,
            1 => Label::Saccade,
            2 => Label::Blink,
            _ => Label::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawSample {
    /// Milliseconds.
    pub t: i64,
    /// Gaze position, `None` when the tracker lost the eye.
    pub pos: Option<Point>,
    pub label: Label,
}

impl RawSample {
    pub fn new(t: i64, x: f64, y: f64, label: Label) -> Self {
        RawSample { t, pos: Some([x, y]), label }
    }

    pub fn missing(t: i64, label: Label) -> Self {
        RawSample { t, pos: None, label }
    }
}

/// Recording task of the GazeBase protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Task {
    #[serde(rename = "FIX")]
    Fix,
    #[serde(rename = "HS")]
    Hs,
    #[serde(rename = "RS")]
    Rs,
    #[serde(rename = "TEXT")]
    Text,
    #[serde(rename = "GAME")]
    Game,
}

impl Task {
    pub const ALL: [Task; 5] = [Task::Fix, Task::Hs, Task::Rs, Task::Text, Task::Game];

    pub fn name(self) -> &'static str {
        match self {
            Task::Fix => "FIX",
            Task::Hs => "HS",
            Task::Rs => "RS",
            Task::Text => "TEXT",
            Task::Game => "GAME",
        }
    }

    /// Task code used in GazeBase file names.
    pub fn file_code(self) -> &'static str {
        match self {
            Task::Fix => "FXS",
            Task::Hs => "HSS",
            Task::Rs => "RAN",
            Task::Text => "TEX",
            Task::Game => "BLG",
        }
    }

    pub fn from_name(s: &str) -> Option<Task> {
        Task::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s) || t.file_code().eq_ignore_ascii_case(s))
    }
}

/// One gaze recording.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPath {
    pub track_id: String,
    pub subject_id: String,
    /// `None` for recordings outside the five-task protocol (e.g. synthetic).
    pub task: Option<Task>,
    pub round: u8,
    pub session: u8,
    pub samples: Vec<RawSample>,
}

impl ScanPath {
    pub fn new(track_id: impl Into<String>, samples: Vec<RawSample>) -> Self {
        let track_id = track_id.into();
        ScanPath {
            subject_id: track_id.clone(),
            track_id,
            task: None,
            round: 0,
            session: 0,
            samples,
        }
    }

    /// Builds a path from bare coordinates with 1 ms sampling, all samples
    /// labeled `label`.
    pub fn from_points(track_id: impl Into<String>, points: &[Point], label: Label) -> Self {
        let samples = points
            .iter()
            .enumerate()
            .map(|(i, p)| RawSample::new(i as i64, p[0], p[1], label))
            .collect();
        ScanPath::new(track_id, samples)
    }

    /// Fills subject, round, session and task from a GazeBase-style file stem
    /// `S_<round><subject>_S<session>_<TASK>[_suffix]`, e.g. `S_1002_S1_HSS`.
    /// Returns `false` and leaves metadata unchanged when the stem does not match.
    pub fn apply_gazebase_name(&mut self, stem: &str) -> bool {
        let parts: Vec<&str> = stem.split('_').collect();
        if parts.len() < 4 || parts[0] != "S" || !parts[2].starts_with('S') {
            return false;
        }
        let id = parts[1];
        if id.len() < 2 || !id.bytes().all(|b| b.is_ascii_digit()) {
            return false;
        }
        let Ok(round) = id[..1].parse::<u8>() else { return false };
        let Ok(session) = parts[2][1..].parse::<u8>() else { return false };
        self.round = round;
        self.session = session;
        self.subject_id = id[1..].to_string();
        self.task = Task::from_name(parts[3]);
        true
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// True when every sample carries coordinates.
    pub fn is_complete(&self) -> bool {
        self.samples.iter().all(|s| s.pos.is_some())
    }

    /// Coordinates of a complete path.
    pub fn points(&self) -> Result<Vec<Point>, GazeError> {
        self.samples
            .iter()
            .map(|s| s.pos.ok_or(GazeError::NotPreprocessed))
            .collect()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.samples.iter().map(|s| s.label)
    }
}

pub(crate) fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gazebase_name() {
        let mut p = ScanPath::new("x", vec![]);
        assert!(p.apply_gazebase_name("S_1002_S2_HSS"));
        assert_eq!(p.subject_id, "002");
        assert_eq!(p.round, 1);
        assert_eq!(p.session, 2);
        assert_eq!(p.task, Some(Task::Hs));

        let mut q = ScanPath::new("x", vec![]);
        assert!(!q.apply_gazebase_name("track_01"));
        assert_eq!(q.subject_id, "x");
    }

    #[test]
    fn label_codes() {
        for l in [Label::Fixation, Label::Saccade, Label::Blink] {
            assert_eq!(Label::from_code(l.code().unwrap() as i64), l);
        }
        assert_eq!(Label::from_code(7), Label::Unknown);
    }
}
