//! Synthetic labeled scanpaths.
//!
//! Each class is a "subject" with its own saccade rate, fixation dispersion
//! and saccade amplitude distribution. A track alternates fixations (a
//! mean-reverting drift around a center) and saccades (a smooth
//! raised-cosine transition to a new center whose duration follows the main
//! sequence `21 + 2.2·amplitude` ms).
//!
//! Config file keys (TOML, unknown keys rejected):
//!
//! | key | meaning | default |
//! |---|---|---|
//! | `classes` | number of classes | 3 |
//! | `tracks_per_class` | tracks generated per class | 40 |
//! | `track_length` | samples per track | 3000 |
//! | `sample_period_ms` | sampling period | 2 |
//! | `noise` | white sensor noise std, degrees | 0.02 |
//! | `saccade_rate` | per-class saccades per second | `1 + k` |
//! | `fixation_dispersion` | per-class drift std, degrees | `0.15 + 0.15k` |
//! | `saccade_amplitude_mean` | per-class mean amplitude, degrees | `4 + 4k` |
//! | `saccade_amplitude_std` | per-class amplitude std, degrees | `1 + 0.5k` |
//!
//! Per-class keys are arrays of length `classes`; `k` is the zero-based class
//! index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal};
use serde::{Deserialize, Serialize};

use super::{GazeError, Label, RawSample, ScanPath};
use crate::seed::derive_seed;

/// Keys of the synthetic config file with their meaning and default.
pub const CONFIG_KEYS: &[(&str, &str, &str)] = &[
    ("classes", "number of classes", "3"),
    ("tracks_per_class", "tracks generated per class", "40"),
    ("track_length", "samples per track", "3000"),
    ("sample_period_ms", "sampling period", "2"),
    ("noise", "white sensor noise std, degrees", "0.02"),
    ("saccade_rate", "per-class saccades per second (array)", "1 + k"),
    ("fixation_dispersion", "per-class drift std, degrees (array)", "0.15 + 0.15k"),
    ("saccade_amplitude_mean", "per-class mean amplitude, degrees (array)", "4 + 4k"),
    ("saccade_amplitude_std", "per-class amplitude std, degrees (array)", "1 + 0.5k"),
];

const X_RANGE: f64 = 15.0;
const Y_RANGE: f64 = 9.0;
const DRIFT_MEMORY: f64 = 0.95;
const MIN_FIXATION_MS: f64 = 60.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    /// Saccades per second; 0 gives a single fixation per track.
    pub saccade_rate: f64,
    pub fixation_dispersion: f64,
    pub saccade_amplitude_mean: f64,
    pub saccade_amplitude_std: f64,
}

impl ClassParams {
    pub fn preset(k: usize) -> ClassParams {
        let k = k as f64;
        ClassParams {
            saccade_rate: 1.0 + k,
            fixation_dispersion: 0.15 + 0.15 * k,
            saccade_amplitude_mean: 4.0 + 4.0 * k,
            saccade_amplitude_std: 1.0 + 0.5 * k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub tracks_per_class: usize,
    pub track_length: usize,
    pub sample_period_ms: i64,
    pub noise: f64,
    pub classes: Vec<ClassParams>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SynthFile {
    classes: Option<usize>,
    tracks_per_class: Option<usize>,
    track_length: Option<usize>,
    sample_period_ms: Option<i64>,
    noise: Option<f64>,
    saccade_rate: Option<Vec<f64>>,
    fixation_dispersion: Option<Vec<f64>>,
    saccade_amplitude_mean: Option<Vec<f64>>,
    saccade_amplitude_std: Option<Vec<f64>>,
}

impl SynthConfig {
    pub fn preset(classes: usize, tracks_per_class: usize) -> SynthConfig {
        SynthConfig {
            tracks_per_class,
            track_length: 3000,
            sample_period_ms: 2,
            noise: 0.02,
            classes: (0..classes).map(ClassParams::preset).collect(),
        }
    }

    /// Parses the flat key-value config format documented on this module.
    pub fn from_toml(text: &str) -> Result<SynthConfig, GazeError> {
        let file: SynthFile = toml::from_str(text).map_err(|e| GazeError::Config(e.to_string()))?;
        let n = file.classes.unwrap_or(3);
        let mut cfg = SynthConfig::preset(n, file.tracks_per_class.unwrap_or(40));
        if let Some(v) = file.track_length {
            cfg.track_length = v;
        }
        if let Some(v) = file.sample_period_ms {
            cfg.sample_period_ms = v;
        }
        if let Some(v) = file.noise {
            cfg.noise = v;
        }
        let lists: [(&str, Option<Vec<f64>>, fn(&mut ClassParams) -> &mut f64); 4] = [
            ("saccade_rate", file.saccade_rate, |c| &mut c.saccade_rate),
            ("fixation_dispersion", file.fixation_dispersion, |c| &mut c.fixation_dispersion),
            ("saccade_amplitude_mean", file.saccade_amplitude_mean, |c| &mut c.saccade_amplitude_mean),
            ("saccade_amplitude_std", file.saccade_amplitude_std, |c| &mut c.saccade_amplitude_std),
        ];
        for (key, values, field) in lists {
            let Some(values) = values else { continue };
            if values.len() != n {
                return Err(GazeError::Config(format!("`{key}` has {} entries, expected {n}", values.len())));
            }
            for (c, v) in cfg.classes.iter_mut().zip(values) {
                *field(c) = v;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), GazeError> {
        let err = |m: String| Err(GazeError::Config(m));
        if self.classes.is_empty() {
            return err("at least one class is required".into());
        }
        if self.tracks_per_class == 0 {
            return err("tracks_per_class must be positive".into());
        }
        if self.track_length < 2 {
            return err("track_length must be at least 2".into());
        }
        if self.sample_period_ms <= 0 {
            return err("sample_period_ms must be positive".into());
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return err("noise must be non-negative".into());
        }
        for (k, c) in self.classes.iter().enumerate() {
            let ok = c.saccade_rate >= 0.0
                && c.saccade_rate.is_finite()
                && c.fixation_dispersion >= 0.0
                && c.fixation_dispersion.is_finite()
                && c.saccade_amplitude_mean > 0.0
                && c.saccade_amplitude_mean.is_finite()
                && c.saccade_amplitude_std >= 0.0
                && c.saccade_amplitude_std.is_finite();
            if !ok {
                return err(format!("class {k} has a negative or non-finite rate, dispersion or amplitude"));
            }
        }
        Ok(())
    }
}

/// Subject id of synthetic class `k`.
pub fn class_subject(k: usize) -> String {
    format!("{:03}", k + 1)
}

/// Generates `classes × tracks_per_class` tracks, class-major. Identical seed
/// and config give bit-identical output.
pub fn generate_synthetic(config: &SynthConfig, seed: u64) -> Result<Vec<ScanPath>, GazeError> {
    config.validate()?;
    let mut out = Vec::with_capacity(config.classes.len() * config.tracks_per_class);
    for (k, params) in config.classes.iter().enumerate() {
        for i in 0..config.tracks_per_class {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[k as u64, i as u64]));
            let samples = generate_track(config, params, &mut rng);
            let subject = class_subject(k);
            let mut path = ScanPath::new(format!("S_1{subject}_S1_SYN_{i:03}"), samples);
            path.subject_id = subject;
            path.round = 1;
            path.session = 1;
            out.push(path);
        }
    }
    Ok(out)
}

fn generate_track(config: &SynthConfig, params: &ClassParams, rng: &mut ChaCha8Rng) -> Vec<RawSample> {
    let period = config.sample_period_ms as f64;
    let unit = Normal::new(0.0, 1.0).unwrap();
    let amplitude = Normal::new(params.saccade_amplitude_mean, params.saccade_amplitude_std).unwrap();
    let fixation_ms = (params.saccade_rate > 0.0).then(|| Exp::new(params.saccade_rate / 1000.0).unwrap());
    let drift_step = params.fixation_dispersion * (1.0 - DRIFT_MEMORY * DRIFT_MEMORY).sqrt();

    let mut samples = Vec::with_capacity(config.track_length);
    let mut center = [rng.random_range(-0.8 * X_RANGE..0.8 * X_RANGE), rng.random_range(-0.8 * Y_RANGE..0.8 * Y_RANGE)];
    let push = |samples: &mut Vec<RawSample>, p: [f64; 2], label: Label, rng: &mut ChaCha8Rng| {
        let t = samples.len() as i64 * config.sample_period_ms;
        let x = p[0] + config.noise * unit.sample(rng);
        let y = p[1] + config.noise * unit.sample(rng);
        samples.push(RawSample::new(t, x, y, label));
    };

    while samples.len() < config.track_length {
        let n_fix = match &fixation_ms {
            Some(d) => ((MIN_FIXATION_MS + d.sample(rng)) / period).ceil() as usize,
            None => usize::MAX,
        };
        let mut drift = [params.fixation_dispersion * unit.sample(rng), params.fixation_dispersion * unit.sample(rng)];
        for _ in 0..n_fix {
            if samples.len() >= config.track_length {
                break;
            }
            for d in &mut drift {
                *d = DRIFT_MEMORY * *d + drift_step * unit.sample(rng);
            }
            push(&mut samples, [center[0] + drift[0], center[1] + drift[1]], Label::Fixation, rng);
        }
        if samples.len() >= config.track_length {
            break;
        }

        let start = [center[0] + drift[0], center[1] + drift[1]];
        let amp = amplitude.sample(rng).abs().max(0.5);
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        let mut dir = [angle.cos(), angle.sin()];
        if (start[0] + amp * dir[0]).abs() > X_RANGE {
            dir[0] = -dir[0];
        }
        if (start[1] + amp * dir[1]).abs() > Y_RANGE {
            dir[1] = -dir[1];
        }
        let target = [
            (start[0] + amp * dir[0]).clamp(-X_RANGE, X_RANGE),
            (start[1] + amp * dir[1]).clamp(-Y_RANGE, Y_RANGE),
        ];
        let n_sac = (((21.0 + 2.2 * amp) / period).ceil() as usize).max(2);
        for k in 1..=n_sac {
            if samples.len() >= config.track_length {
                break;
            }
            let s = k as f64 / n_sac as f64;
            let w = 0.5 * (1.0 - (std::f64::consts::PI * s).cos());
            push(&mut samples, [start[0] + (target[0] - start[0]) * w, start[1] + (target[1] - start[1]) * w], Label::Saccade, rng);
        }
        center = target;
    }
    samples
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(classes: usize, per_class: usize) -> SynthConfig {
        SynthConfig { track_length: 600, ..SynthConfig::preset(classes, per_class) }
    }

    #[test]
    fn cardinality_and_labels() {
        let tracks = generate_synthetic(&small(3, 20), 1).unwrap();
        assert_eq!(tracks.len(), 60);
        for (i, t) in tracks.iter().enumerate() {
            assert_eq!(t.len(), 600);
            assert_eq!(t.subject_id, class_subject(i / 20));
            assert!(t.labels().all(|l| matches!(l, Label::Fixation | Label::Saccade)));
            assert!(t.samples.windows(2).all(|w| w[0].t < w[1].t));
        }
        assert!(tracks.iter().any(|t| t.labels().any(|l| l == Label::Saccade)));
    }

    #[test]
    fn deterministic() {
        let cfg = small(2, 3);
        let a = generate_synthetic(&cfg, 42).unwrap();
        let b = generate_synthetic(&cfg, 42).unwrap();
        let bits = |v: &[ScanPath]| -> Vec<u64> {
            v.iter().flat_map(|p| p.samples.iter().flat_map(|s| s.pos.unwrap().map(f64::to_bits))).collect()
        };
        assert_eq!(bits(&a), bits(&b));
        assert_ne!(bits(&a), bits(&generate_synthetic(&cfg, 43).unwrap()));
    }

    #[test]
    fn zero_rate_is_all_fixation() {
        let mut cfg = small(2, 4);
        cfg.classes[1].saccade_rate = 0.0;
        let tracks = generate_synthetic(&cfg, 3).unwrap();
        assert!(tracks[4..].iter().all(|t| t.labels().all(|l| l == Label::Fixation)));
    }

    #[test]
    fn config_file() {
        let cfg = SynthConfig::from_toml("classes = 2\ntracks_per_class = 5\nsaccade_rate = [0.0, 3.0]\n").unwrap();
        assert_eq!(cfg.classes.len(), 2);
        assert_eq!(cfg.classes[1].saccade_rate, 3.0);
        assert_eq!(cfg.classes[1].fixation_dispersion, ClassParams::preset(1).fixation_dispersion);

        assert!(SynthConfig::from_toml("colour = 1\n").is_err());
        assert!(SynthConfig::from_toml("classes = 2\nsaccade_rate = [1.0]\n").is_err());
        assert!(SynthConfig::from_toml("sample_period_ms = 0\n").is_err());
        assert!(SynthConfig::from_toml("track_length = 0\n").is_err());
        assert!(SynthConfig::from_toml("classes = 1\nsaccade_rate = [-1.0]\n").is_err());
    }
}
