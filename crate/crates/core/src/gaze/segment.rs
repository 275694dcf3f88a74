use std::ops::Range;

use super::{GazeError, Label, ScanPath};
use crate::macro_stats::{Segment, SegmentKind};

/// Maximal runs of identically labeled samples, covering every index once.
pub fn label_runs(path: &ScanPath) -> Vec<(Label, Range<usize>)> {
    let mut runs: Vec<(Label, Range<usize>)> = Vec::new();
    for (i, label) in path.labels().enumerate() {
        match runs.last_mut() {
            Some((l, r)) if *l == label => r.end = i + 1,
            _ => runs.push((label, i..i + 1)),
        }
    }
    runs
}

/// Splits a preprocessed path into fixation and saccade segments. Blink and
/// unlabeled runs belong to neither list.
pub fn segment_events(path: &ScanPath) -> Result<(Vec<Segment>, Vec<Segment>), GazeError> {
    let points = path.points()?;
    let mut fixations = Vec::new();
    let mut saccades = Vec::new();
    for (label, range) in label_runs(path) {
        let kind = match label {
            Label::Fixation => SegmentKind::Fixation,
            Label::Saccade => SegmentKind::Saccade,
            Label::Blink | Label::Unknown => continue,
        };
        let seg = Segment {
            kind,
            points: points[range.clone()].to_vec(),
            start_index: range.start,
            end_index: range.end - 1,
        };
        match kind {
            SegmentKind::Fixation => fixations.push(seg),
            SegmentKind::Saccade => saccades.push(seg),
        }
    }
    Ok((fixations, saccades))
}
