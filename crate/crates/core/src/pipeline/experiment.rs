use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::features::{assemble_from_extracted, extract_features, fit_grids, parse_feature_set, FeatureParams, TrackFeatures};
use super::forest::{accuracy, predict, train_forest, ForestConfig};
use super::{FeatureGroup, PipelineError};
use crate::gaze::{self, generate_synthetic, preprocess, ScanPath, SynthConfig, Task, DEFAULT_SPIKE_THRESHOLD};
use crate::persistence::FiltrationKind;
use crate::seed::derive_seed;
use crate::vectorize::{CurveGrid, CurveKind};

/// Keys of the experiment config file with their meaning and default.
pub const CONFIG_KEYS: &[(&str, &str, &str)] = &[
    ("feature_sets", "feature sets to evaluate; groups joined by `+` (heatmap, landscape, macro, ts_amp, ts_x, ts_y, vr)", "[\"macro\", \"ts_x+ts_y+ts_amp\"]"),
    ("task", "keep only tracks of this task (FIX, HS, RS, TEXT, GAME)", "all tracks"),
    ("split_ratio", "fraction of each class used for training", "0.8"),
    ("repetitions", "number of random splits", "75"),
    ("seed", "master seed for splits and forests", "0"),
    ("spike_threshold", "jump (degrees) above which an isolated sample is a spike", "30.0"),
    ("knots", "grid points per curve", "100"),
    ("curves", "curves per diagram for ts_*, heatmap and vr groups (betti, persistence, entropy)", "[\"betti\", \"entropy\"]"),
    ("landscape_levels", "landscape levels per diagram in the landscape group", "2"),
    ("star_filtrations", "filtrations of the X/Y/Amp series (lower_star, upper_star)", "both"),
    ("heatmap_size", "heatmap grid side length", "32"),
    ("vr_max_points", "point-cloud subsample size for Rips persistence", "48"),
    ("vr_max_scale", "Rips truncation scale, degrees", "10.0"),
    ("trees", "trees per forest", "100"),
    ("max_depth", "maximum tree depth", "unlimited"),
    ("max_features", "features tried per split", "ceil(sqrt(columns))"),
    ("bootstrap", "bootstrap-resample the rows of each tree", "true"),
    ("data_dir", "directory of track CSVs (GazeBase names, or one subdirectory per class); relative to the config file", "-"),
    ("synth_config", "synthetic-data config file, used when data_dir is absent; relative to the config file", "-"),
    ("synth_seed", "seed of the synthetic generator", "seed"),
];

/// Experiment settings; every field maps to one key of the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub feature_sets: Vec<String>,
    pub task: Option<Task>,
    pub split_ratio: f64,
    pub repetitions: usize,
    pub seed: u64,
    pub spike_threshold: f64,
    pub knots: usize,
    pub curves: Vec<CurveKind>,
    pub landscape_levels: usize,
    pub star_filtrations: Vec<FiltrationKind>,
    pub heatmap_size: usize,
    pub vr_max_points: usize,
    pub vr_max_scale: f64,
    pub trees: usize,
    pub max_depth: Option<usize>,
    pub max_features: Option<usize>,
    pub bootstrap: bool,
    pub data_dir: Option<String>,
    pub synth_config: Option<String>,
    pub synth_seed: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let p = FeatureParams::default();
        let f = ForestConfig::default();
        ExperimentConfig {
            feature_sets: vec!["macro".into(), "ts_x+ts_y+ts_amp".into()],
            task: None,
            split_ratio: 0.8,
            repetitions: 75,
            seed: 0,
            spike_threshold: DEFAULT_SPIKE_THRESHOLD,
            knots: CurveGrid::DEFAULT_KNOTS,
            curves: p.curves,
            landscape_levels: p.landscape_levels,
            star_filtrations: p.star_filtrations,
            heatmap_size: p.heatmap_size,
            vr_max_points: p.vr_max_points,
            vr_max_scale: p.vr_max_scale,
            trees: f.trees,
            max_depth: f.max_depth,
            max_features: f.max_features,
            bootstrap: f.bootstrap,
            data_dir: None,
            synth_config: None,
            synth_seed: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<ExperimentConfig, PipelineError> {
        let c: ExperimentConfig = toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if !(self.split_ratio > 0.0 && self.split_ratio < 1.0) {
            return Err(PipelineError::Config(format!("split_ratio must lie in (0, 1), got {}", self.split_ratio)));
        }
        if self.repetitions == 0 {
            return Err(PipelineError::Config("repetitions must be at least 1".into()));
        }
        if self.feature_sets.is_empty() {
            return Err(PipelineError::Config("feature_sets must not be empty".into()));
        }
        if !(self.spike_threshold > 0.0 && self.spike_threshold.is_finite()) {
            return Err(PipelineError::Config("spike_threshold must be positive".into()));
        }
        self.groups()?;
        self.feature_params().validate()?;
        self.forest(0).validate()
    }

    pub fn feature_params(&self) -> FeatureParams {
        FeatureParams {
            knots: self.knots,
            curves: self.curves.clone(),
            landscape_levels: self.landscape_levels,
            star_filtrations: self.star_filtrations.clone(),
            heatmap_size: self.heatmap_size,
            vr_max_points: self.vr_max_points,
            vr_max_scale: self.vr_max_scale,
        }
    }

    pub fn forest(&self, seed: u64) -> ForestConfig {
        ForestConfig {
            trees: self.trees,
            max_depth: self.max_depth,
            max_features: self.max_features,
            bootstrap: self.bootstrap,
            seed,
        }
    }

    /// Parsed feature sets, in config order.
    pub fn groups(&self) -> Result<Vec<BTreeSet<FeatureGroup>>, PipelineError> {
        self.feature_sets.iter().map(|s| parse_feature_set(s)).collect()
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> PipelineError {
    PipelineError::Io { path: path.display().to_string(), message: e.to_string() }
}

/// Loads the tracks named by `data_dir` or `synth_config`, resolving relative
/// paths against `base`.
///
/// In `data_dir`, top-level `*.csv` files must carry GazeBase names (subject
/// and task are read from the name); files in a subdirectory take the
/// subdirectory name as their class. Files are read in name order.
pub fn load_dataset(config: &ExperimentConfig, base: &Path) -> Result<Vec<ScanPath>, PipelineError> {
    if let Some(dir) = &config.data_dir {
        return load_dir(&base.join(dir));
    }
    if let Some(file) = &config.synth_config {
        let path = base.join(file);
        let text = std::fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
        let synth = SynthConfig::from_toml(&text)
            .map_err(|e| PipelineError::Config(format!("{}: {e}", path.display())))?;
        return Ok(generate_synthetic(&synth, config.synth_seed.unwrap_or(config.seed))?);
    }
    Err(PipelineError::Config("one of data_dir or synth_config is required".into()))
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| io_error(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|e| io_error(dir, e)))
        .collect::<Result<_, _>>()?;
    entries.sort();
    Ok(entries)
}

fn read_track(file: &Path) -> Result<ScanPath, PipelineError> {
    let text = std::fs::read_to_string(file).map_err(|e| io_error(file, e))?;
    let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    gaze::parse_track(stem, &text).map_err(|source| PipelineError::Track { path: file.display().to_string(), source })
}

/// Loads track files and directories (directories as for `data_dir`).
/// Metadata of single files is read from GazeBase names when they match.
pub fn load_paths(inputs: &[PathBuf]) -> Result<Vec<ScanPath>, PipelineError> {
    let mut tracks = Vec::new();
    for input in inputs {
        if input.is_dir() {
            tracks.extend(load_dir(input)?);
        } else {
            let mut t = read_track(input)?;
            let stem = t.track_id.clone();
            t.apply_gazebase_name(&stem);
            tracks.push(t);
        }
    }
    Ok(tracks)
}

fn is_csv(p: &Path) -> bool {
    p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn load_dir(dir: &Path) -> Result<Vec<ScanPath>, PipelineError> {
    let mut tracks = Vec::new();
    for entry in sorted_entries(dir)? {
        if entry.is_dir() {
            let class = entry.file_name().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            for file in sorted_entries(&entry)?.into_iter().filter(|p| is_csv(p)) {
                let mut t = read_track(&file)?;
                let stem = t.track_id.clone();
                t.apply_gazebase_name(&stem);
                t.subject_id = class.clone();
                tracks.push(t);
            }
        } else if is_csv(&entry) {
            let mut t = read_track(&entry)?;
            let stem = t.track_id.clone();
            if !t.apply_gazebase_name(&stem) {
                return Err(PipelineError::Config(format!(
                    "{}: top-level track files need GazeBase names like S_1002_S1_HSS.csv",
                    entry.display()
                )));
            }
            tracks.push(t);
        }
    }
    Ok(tracks)
}

/// Stratified split: within each class (in sorted class order) the row
/// indices are shuffled and the first `round(ratio·n)` of them, clamped to
/// `1..=n-1`, go to training (a singleton class goes to training). Both index lists come back sorted.
pub fn stratified_split(labels: &[String], ratio: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for idx in by_class.values_mut() {
        idx.shuffle(rng);
        let n = idx.len();
        let k = if n < 2 { n } else { ((ratio * n as f64).round() as usize).clamp(1, n - 1) };
        train.extend_from_slice(&idx[..k]);
        test.extend_from_slice(&idx[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureSetResult {
    pub feature_set: String,
    pub groups: Vec<FeatureGroup>,
    pub columns: usize,
    pub mean: f64,
    /// Population standard deviation over repetitions.
    pub std: f64,
    pub accuracies: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedTrack {
    pub track_id: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub n_tracks: usize,
    /// Tracks per class.
    pub classes: BTreeMap<String, usize>,
    pub excluded: Vec<ExcludedTrack>,
    pub results: Vec<FeatureSetResult>,
}

impl ExperimentReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per feature set.
    pub fn summary_csv(&self) -> String {
        let mut s = String::from("feature_set,columns,repetitions,mean,std\n");
        for r in &self.results {
            s.push_str(&format!("{},{},{},{},{}\n", r.feature_set, r.columns, r.accuracies.len(), r.mean, r.std));
        }
        s
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Runs the repeated-split protocol on raw tracks.
///
/// Tracks are filtered by task, preprocessed and featurized once; tracks that
/// fail are excluded and listed in the report. Each repetition `r` splits with
/// `derive_seed(seed, [0, r])` and trains feature set `f` with forest seed
/// `derive_seed(seed, [1, r, f])`, so results do not depend on scheduling.
pub fn run_experiment(data: &[ScanPath], config: &ExperimentConfig) -> Result<ExperimentReport, PipelineError> {
    config.validate()?;
    let sets = config.groups()?;
    let params = config.feature_params();

    let selected: Vec<&ScanPath> = data.iter().filter(|p| config.task.is_none() || p.task == config.task).collect();
    let cleaned: Vec<Result<ScanPath, _>> =
        selected.par_iter().map(|p| preprocess(p, config.spike_threshold)).collect();
    let mut excluded = Vec::new();
    let mut paths = Vec::with_capacity(cleaned.len());
    for (p, r) in selected.iter().zip(cleaned) {
        match r {
            Ok(c) => paths.push(c),
            Err(e) => {
                log::warn!("excluding track {}: {e}", p.track_id);
                excluded.push(ExcludedTrack { track_id: p.track_id.clone(), reason: e.to_string() });
            }
        }
    }

    let union: BTreeSet<FeatureGroup> = sets.iter().flatten().copied().collect();
    let (tracks, failed) = extract_features(&paths, &union, &params);
    excluded.extend(failed.into_iter().map(|(track_id, reason)| ExcludedTrack { track_id, reason }));

    let mut classes: BTreeMap<String, usize> = BTreeMap::new();
    for t in &tracks {
        *classes.entry(t.label.clone()).or_default() += 1;
    }
    if classes.len() < 2 {
        return Err(PipelineError::Config(format!("need at least 2 classes, found {}", classes.len())));
    }
    if let Some((c, n)) = classes.iter().find(|(_, &n)| n < 2) {
        return Err(PipelineError::Config(format!("class `{c}` has {n} usable track(s); at least 2 are needed")));
    }
    log::info!("{} tracks in {} classes, {} excluded", tracks.len(), classes.len(), excluded.len());

    let labels: Vec<String> = tracks.iter().map(|t| t.label.clone()).collect();
    let per_rep: Vec<Vec<(usize, f64)>> = (0..config.repetitions)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, &[0, r as u64]));
            let (train_idx, test_idx) = stratified_split(&labels, config.split_ratio, &mut rng);
            let train: Vec<&TrackFeatures> = train_idx.iter().map(|&i| &tracks[i]).collect();
            let test: Vec<&TrackFeatures> = test_idx.iter().map(|&i| &tracks[i]).collect();
            let grids = fit_grids(&train, params.knots)?;
            sets.iter()
                .enumerate()
                .map(|(f, groups)| {
                    let train_m = assemble_from_extracted(&train, groups, &grids, &params)?;
                    let test_m = assemble_from_extracted(&test, groups, &grids, &params)?;
                    let model = train_forest(&train_m, &config.forest(derive_seed(config.seed, &[1, r as u64, f as u64])))?;
                    let acc = accuracy(&predict(&model, &test_m)?, &test_m.labels);
                    log::debug!("repetition {r}, feature set {}: accuracy {acc}", config.feature_sets[f]);
                    Ok((train_m.n_cols(), acc))
                })
                .collect()
        })
        .collect::<Result<_, PipelineError>>()?;

    let results = sets
        .iter()
        .enumerate()
        .map(|(f, groups)| {
            let accuracies: Vec<f64> = per_rep.iter().map(|rep| rep[f].1).collect();
            let (mean, std) = mean_std(&accuracies);
            FeatureSetResult {
                feature_set: config.feature_sets[f].clone(),
                groups: groups.iter().copied().collect(),
                columns: per_rep[0][f].0,
                mean,
                std,
                accuracies,
            }
        })
        .collect();

    Ok(ExperimentReport { config: config.clone(), n_tracks: tracks.len(), classes, excluded, results })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(counts: &[usize]) -> Vec<String> {
        counts.iter().enumerate().flat_map(|(c, &n)| std::iter::repeat_n(format!("c{c}"), n)).collect()
    }

    #[test]
    fn split_is_stratified_and_partitions() {
        let l = labels(&[10, 7, 2, 5]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (train, test) = stratified_split(&l, 0.8, &mut rng);
        let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..l.len()).collect::<Vec<_>>());
        for (c, n) in [(0, 10), (1, 7), (2, 2), (3, 5)] {
            let name = format!("c{c}");
            let k = train.iter().filter(|&&i| l[i] == name).count();
            assert!((k as f64 - 0.8 * n as f64).abs() <= 1.0, "class {c}: {k} of {n}");
            assert!(k >= 1 && k < n);
        }
    }

    #[test]
    fn config_parsing() {
        let c = ExperimentConfig::from_toml("feature_sets = [\"macro\"]\nrepetitions = 3\ntask = \"HS\"\n").unwrap();
        assert_eq!(c.repetitions, 3);
        assert_eq!(c.task, Some(Task::Hs));
        assert_eq!(c.split_ratio, 0.8);
        assert!(matches!(ExperimentConfig::from_toml("repetitons = 3"), Err(PipelineError::Config(_))));
        assert!(ExperimentConfig::from_toml("split_ratio = 1.0").is_err());
        assert!(ExperimentConfig::from_toml("repetitions = 0").is_err());
        assert!(ExperimentConfig::from_toml("feature_sets = [\"macro+bogus\"]").is_err());
        assert!(ExperimentConfig::from_toml("trees = 0").is_err());
        assert!(ExperimentConfig::from_toml("star_filtrations = [\"rips\"]").is_err());
    }

    #[test]
    fn every_field_is_documented() {
        let value = serde_json::to_value(ExperimentConfig::default()).unwrap();
        let fields: BTreeSet<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        let documented: BTreeSet<&str> = CONFIG_KEYS.iter().map(|k| k.0).collect();
        assert_eq!(fields, documented);
    }

    fn small_synth(per_class: usize) -> Vec<ScanPath> {
        let mut cfg = SynthConfig::preset(3, per_class);
        cfg.track_length = 600;
        generate_synthetic(&cfg, 7).unwrap()
    }

    #[test]
    fn single_repetition_has_zero_std() {
        let data = small_synth(6);
        let c = ExperimentConfig { feature_sets: vec!["macro".into()], repetitions: 1, trees: 10, ..ExperimentConfig::default() };
        let r = run_experiment(&data, &c).unwrap();
        assert_eq!(r.results[0].std, 0.0);
        assert_eq!(r.results[0].accuracies.len(), 1);
        assert_eq!(r.n_tracks, 18);
    }

    #[test]
    fn report_is_reproducible_and_consistent() {
        let data = small_synth(6);
        let c = ExperimentConfig { repetitions: 4, trees: 15, knots: 20, ..ExperimentConfig::default() };
        let a = run_experiment(&data, &c).unwrap();
        let b = run_experiment(&data, &c).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        for r in &a.results {
            let (m, s) = mean_std(&r.accuracies);
            assert!((m - r.mean).abs() <= 1e-12 && (s - r.std).abs() <= 1e-12);
            assert!(r.accuracies.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
        assert_eq!(a.results[1].columns, 3 * 2 * 2 * 20);
        assert!(a.summary_csv().starts_with("feature_set,columns,repetitions,mean,std\nmacro,28,4,"));
    }

    #[test]
    fn tiny_class_is_a_config_error() {
        let mut data = small_synth(3);
        data.truncate(7);
        let c = ExperimentConfig { feature_sets: vec!["macro".into()], repetitions: 1, ..ExperimentConfig::default() };
        match run_experiment(&data, &c) {
            Err(PipelineError::Config(m)) => assert!(m.contains("`003`"), "{m}"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn task_filter() {
        let mut data = small_synth(4);
        for (i, p) in data.iter_mut().enumerate() {
            p.task = Some(if i % 2 == 0 { Task::Hs } else { Task::Text });
        }
        let c = ExperimentConfig {
            feature_sets: vec!["macro".into()],
            repetitions: 1,
            trees: 5,
            task: Some(Task::Hs),
            ..ExperimentConfig::default()
        };
        assert_eq!(run_experiment(&data, &c).unwrap().n_tracks, 6);
    }
}
