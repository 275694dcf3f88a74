use super::{dist, GazeError, Point, RawSample, ScanPath};

/// Default spike threshold, degrees per sample.
pub const DEFAULT_SPIKE_THRESHOLD: f64 = 30.0;

/// Removes isolated high-amplitude error points and fills gaps.
///
/// A sample is a spike when its step from the last kept sample exceeds
/// `spike_threshold` while the step from that kept sample straight to the next
/// valid sample does not. Spikes are marked missing, interior gaps are filled
/// by linear interpolation in time, and leading/trailing gaps are dropped.
/// Removal and interpolation repeat until nothing changes, so the result is a
/// fixed point and `preprocess` is idempotent.
pub fn preprocess(path: &ScanPath, spike_threshold: f64) -> Result<ScanPath, GazeError> {
    if !(spike_threshold > 0.0 && spike_threshold.is_finite()) {
        return Err(GazeError::InvalidArgument(format!(
            "spike threshold must be positive, got {spike_threshold}"
        )));
    }
    let valid = path.samples.iter().filter(|s| s.pos.is_some()).count();
    if valid < 2 {
        return Err(GazeError::DegenerateTrack(format!(
            "{} has {valid} valid samples, need at least 2",
            path.track_id
        )));
    }

    let first = path.samples.iter().position(|s| s.pos.is_some()).unwrap();
    let last = path.samples.iter().rposition(|s| s.pos.is_some()).unwrap();
    let mut cur = path.samples[first..=last].to_vec();

    let cap = cur.len() + 1;
    for round in 0..=cap {
        let mut next = cur.clone();
        mark_spikes(&mut next, spike_threshold);
        interpolate(&mut next);
        if next == cur {
            break;
        }
        if round == cap {
            log::warn!("{}: spike removal did not settle after {cap} passes", path.track_id);
        }
        cur = next;
    }

    Ok(ScanPath { samples: cur, ..path.clone() })
}

fn mark_spikes(samples: &mut [RawSample], threshold: f64) {
    let valid: Vec<usize> = (0..samples.len()).filter(|&i| samples[i].pos.is_some()).collect();
    let mut kept: Option<Point> = None;
    for (k, &i) in valid.iter().enumerate() {
        let pos = samples[i].pos.unwrap();
        if let (Some(prev), Some(&succ)) = (kept, valid.get(k + 1)) {
            let succ = samples[succ].pos.unwrap();
            if dist(pos, prev) > threshold && dist(succ, prev) <= threshold {
                samples[i].pos = None;
                continue;
            }
        }
        kept = Some(pos);
    }
}

/// Fills interior gaps; assumes the first and last samples are valid.
fn interpolate(samples: &mut [RawSample]) {
    let mut anchor = 0;
    for i in 1..samples.len() {
        let Some(b) = samples[i].pos else { continue };
        if i > anchor + 1 {
            let a = samples[anchor].pos.unwrap();
            let (ta, tb) = (samples[anchor].t as f64, samples[i].t as f64);
            for s in &mut samples[anchor + 1..i] {
                let w = (s.t as f64 - ta) / (tb - ta);
                s.pos = Some([a[0] + (b[0] - a[0]) * w, a[1] + (b[1] - a[1]) * w]);
            }
        }
        anchor = i;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaze::Label;
    use proptest::prelude::*;

    fn xs(path: &ScanPath) -> Vec<f64> {
        path.samples.iter().map(|s| s.pos.unwrap()[0]).collect()
    }

    #[test]
    fn spike_is_replaced_by_interpolation() {
        let p = ScanPath::from_points("t", &[[0.0, 0.0], [0.1, 0.0], [50.0, 0.0], [0.2, 0.0]], Label::Fixation);
        let q = preprocess(&p, 10.0).unwrap();
        let got = xs(&q);
        let want = [0.0, 0.1, 0.15, 0.2];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-15, "{got:?}");
        }
    }

    #[test]
    fn clean_track_unchanged() {
        let p = ScanPath::from_points("t", &[[0.0, 0.0], [1.0, 0.5], [2.0, 1.0]], Label::Saccade);
        assert_eq!(preprocess(&p, 10.0).unwrap(), p);
    }

    #[test]
    fn all_missing_is_degenerate() {
        let p = ScanPath::new("t", (0..5).map(|t| RawSample::missing(t, Label::Blink)).collect());
        assert!(matches!(preprocess(&p, 10.0), Err(GazeError::DegenerateTrack(_))));
        let one = ScanPath::new("t", vec![RawSample::new(0, 1.0, 1.0, Label::Fixation), RawSample::missing(1, Label::Blink)]);
        assert!(matches!(preprocess(&one, 10.0), Err(GazeError::DegenerateTrack(_))));
    }

    #[test]
    fn gaps_filled_in_time_and_edges_dropped() {
        let p = ScanPath::new("t", vec![
            RawSample::missing(0, Label::Blink),
            RawSample::new(10, 0.0, 0.0, Label::Fixation),
            RawSample::missing(12, Label::Blink),
            RawSample::missing(13, Label::Blink),
            RawSample::new(20, 10.0, -10.0, Label::Fixation),
            RawSample::missing(25, Label::Blink),
        ]);
        let q = preprocess(&p, 30.0).unwrap();
        assert_eq!(q.samples.len(), 4);
        assert_eq!(q.samples[0].t, 10);
        assert_eq!(q.samples[1].pos, Some([2.0, -2.0]));
        assert_eq!(q.samples[2].pos, Some([3.0, -3.0]));
        assert_eq!(q.samples[2].label, Label::Blink);
    }

    #[test]
    fn rejects_bad_threshold() {
        let p = ScanPath::from_points("t", &[[0.0, 0.0], [1.0, 0.0]], Label::Fixation);
        assert!(preprocess(&p, 0.0).is_err());
        assert!(preprocess(&p, f64::NAN).is_err());
    }

    fn arb_path() -> impl Strategy<Value = ScanPath> {
        prop::collection::vec(prop::option::weighted(0.85, (-40.0..40.0f64, -40.0..40.0f64)), 2..40).prop_map(|v| {
            let samples = v
                .into_iter()
                .enumerate()
                .map(|(i, p)| match p {
                    Some((x, y)) => RawSample::new(i as i64 * 2, x, y, Label::Fixation),
                    None => RawSample::missing(i as i64 * 2, Label::Blink),
                })
                .collect();
            ScanPath::new("p", samples)
        })
    }

    proptest! {
        #[test]
        fn idempotent(p in arb_path(), thr in 1.0..40.0f64) {
            if let Ok(q) = preprocess(&p, thr) {
                prop_assert!(q.is_complete());
                prop_assert!(q.len() >= 2);
                prop_assert_eq!(preprocess(&q, thr).unwrap(), q);
            }
        }
    }
}
