//! Command-line front end.
//!
//! Data goes to files (`--out`) or standard output, logs to standard error.
//! Outputs are written to a temporary sibling and renamed into place, so a
//! failed run leaves no partial artifacts. On failure a single JSON line
//! `{"error": "config"|"data", "message": ..., "file": ..., "line": ...}` is
//! printed to standard error and the process exits with 2 (bad config or
//! arguments) or 3 (bad or missing data).

use std::collections::BTreeSet;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::gaze::{self, generate_synthetic, preprocess, Bandwidth, Channel, GazeError, ScanPath, SynthConfig};
use crate::persistence::{
    diagrams_from_csv, diagrams_to_csv, diagrams_to_json, lower_star_1d, sublevel_cubical_2d, upper_star_1d,
    vietoris_rips, DiagramSource, Direction, FiltrationKind, PersistenceDiagram, PersistenceError,
};
use crate::pipeline::{
    self, assemble_from_extracted, extract_features, fit_grids, load_dataset, load_paths, parse_feature_set,
    run_experiment, train_forest, ExperimentConfig, FeatureGroup, PipelineError, TrackFeatures,
};
use crate::vectorize::{landscape, vectorize, CurveGrid, CurveKind};

#[derive(Debug, Parser)]
#[command(name = "gazetopo", version, about = "Topological and macro-event features of eye-movement recordings")]
pub struct Cli {
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Only log errors.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    /// Worker threads for track processing; defaults to the available cores.
    /// Results do not depend on this value.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a track CSV (`n,x,y,label`), writing it back normalized.
    Parse(ParseArgs),
    /// Remove spikes and interpolate missing samples.
    Preprocess(PreprocessArgs),
    /// Persistence diagrams of one representation of each track.
    Persistence(PersistenceArgs),
    /// Evaluate a curve on a diagram CSV produced by `persistence`.
    Vectorize(VectorizeArgs),
    /// Feature matrix CSV of a set of tracks.
    #[command(after_long_help = experiment_keys_help())]
    Features(FeaturesArgs),
    /// Train a random forest on one set of tracks and label another.
    #[command(after_long_help = experiment_keys_help())]
    Classify(ClassifyArgs),
    /// Repeated-split classification experiment; writes a JSON report.
    #[command(after_long_help = experiment_keys_help())]
    Experiment(ExperimentArgs),
    /// Generate synthetic labeled tracks, one CSV per track.
    #[command(after_long_help = synth_keys_help())]
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    pub input: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    pub input: PathBuf,
    /// Jump size (degrees) above which an isolated sample counts as a spike.
    #[arg(long, default_value_t = gaze::DEFAULT_SPIKE_THRESHOLD)]
    pub spike_threshold: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Representation {
    #[value(name = "ts_x")]
    TsX,
    #[value(name = "ts_y")]
    TsY,
    #[value(name = "ts_amp")]
    TsAmp,
    Cloud,
    Heatmap,
}

impl Representation {
    fn name(self) -> &'static str {
        match self {
            Representation::TsX => "ts_x",
            Representation::TsY => "ts_y",
            Representation::TsAmp => "ts_amp",
            Representation::Cloud => "cloud",
            Representation::Heatmap => "heatmap",
        }
    }

    fn default_filtration(self) -> FiltrationKind {
        match self {
            Representation::Cloud => FiltrationKind::VietorisRips,
            Representation::Heatmap => FiltrationKind::SublevelCubical,
            _ => FiltrationKind::LowerStar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct PersistenceArgs {
    /// Track CSV files. With more than one, `--out` names a directory.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub rep: Representation,
    /// lower_star or upper_star for series, rips for the cloud, sublevel or
    /// superlevel for the heatmap. Defaults to the first of each.
    #[arg(long)]
    pub filtration: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, default_value_t = gaze::DEFAULT_SPIKE_THRESHOLD)]
    pub spike_threshold: f64,
    /// Point-cloud subsample size for Rips persistence.
    #[arg(long, default_value_t = 48)]
    pub vr_max_points: usize,
    /// Rips truncation scale.
    #[arg(long, default_value_t = 10.0)]
    pub vr_max_scale: f64,
    /// Heatmap grid side length.
    #[arg(long, default_value_t = 32)]
    pub heatmap_size: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VectorizeArgs {
    /// Diagram CSV (`dim,birth,death`).
    pub input: PathBuf,
    /// betti, persistence, landscape or entropy.
    #[arg(long, default_value = "betti")]
    pub curve: String,
    /// Homology dimension to vectorize.
    #[arg(long, default_value_t = 0)]
    pub dim: usize,
    #[arg(long, default_value_t = CurveGrid::DEFAULT_KNOTS)]
    pub knots: usize,
    /// Grid start; with `--end`, overrides the range covering the diagram.
    #[arg(long, requires = "end")]
    pub start: Option<f64>,
    #[arg(long, requires = "start")]
    pub end: Option<f64>,
    /// Landscape levels.
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// Track CSV files or directories.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Feature groups joined by `+`; overrides the first config feature set.
    #[arg(long)]
    pub groups: Option<String>,
    /// Experiment config supplying feature parameters.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Training track files or directories.
    #[arg(long, required = true, num_args = 1..)]
    pub train: Vec<PathBuf>,
    /// Tracks to label.
    #[arg(long, required = true, num_args = 1..)]
    pub test: Vec<PathBuf>,
    #[arg(long)]
    pub groups: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Forest seed; overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Predictions CSV (`track_id,label,predicted`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Master seed; overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report JSON; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary CSV, one row per feature set.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Synthetic config; the 3-class preset when absent.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

fn key_table(title: &str, keys: &[(&str, &str, &str)]) -> String {
    let width = keys.iter().map(|k| k.0.len()).max().unwrap_or(0);
    let mut s = format!("{title}\n");
    for (key, meaning, default) in keys {
        s.push_str(&format!("  {key:<width$}  {meaning} [default: {default}]\n"));
    }
    s
}

fn experiment_keys_help() -> String {
    key_table("Experiment config keys (TOML, unknown keys rejected):", pipeline::CONFIG_KEYS)
}

fn synth_keys_help() -> String {
    key_table(
        "Synthetic config keys (TOML, unknown keys rejected; k is the zero-based class index):",
        gaze::synth::CONFIG_KEYS,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Config,
    Data,
}

/// A failure reported on stderr as one JSON line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub error: ErrorKind,
    pub message: String,
    pub file: Option<String>,
    pub line: Option<usize>,
}

impl CliError {
    fn config(message: impl Into<String>) -> CliError {
        CliError { error: ErrorKind::Config, message: message.into(), file: None, line: None }
    }

    fn data(message: impl Into<String>) -> CliError {
        CliError { error: ErrorKind::Data, message: message.into(), file: None, line: None }
    }

    fn in_file(mut self, path: &Path) -> CliError {
        self.file.get_or_insert_with(|| path.display().to_string());
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.error {
            ErrorKind::Config => 2,
            ErrorKind::Data => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

fn gaze_line(e: &GazeError) -> Option<usize> {
    match e {
        GazeError::Parse { line, .. } | GazeError::NonIncreasingTimestamp { line, .. } => Some(*line),
        _ => None,
    }
}

impl From<GazeError> for CliError {
    fn from(e: GazeError) -> CliError {
        let mut c = match e {
            GazeError::Config(_) | GazeError::InvalidArgument(_) => CliError::config(e.to_string()),
            _ => CliError::data(e.to_string()),
        };
        c.line = gaze_line(&e);
        c
    }
}

impl From<PersistenceError> for CliError {
    fn from(e: PersistenceError) -> CliError {
        match e {
            PersistenceError::InvalidArgument(_) => CliError::config(e.to_string()),
            PersistenceError::Parse { line, .. } => CliError { line: Some(line), ..CliError::data(e.to_string()) },
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> CliError {
        match &e {
            PipelineError::Config(_) | PipelineError::MissingGrid(_) | PipelineError::SingleClass(_) => {
                CliError::config(e.to_string())
            }
            PipelineError::Io { path, message } => CliError { file: Some(path.clone()), ..CliError::data(message.clone()) },
            PipelineError::Track { path, source } => {
                CliError { file: Some(path.clone()), line: gaze_line(source), ..CliError::data(source.to_string()) }
            }
            PipelineError::Gaze(g) => g.clone().into(),
            PipelineError::Persistence(p) => p.clone().into(),
            _ => CliError::data(e.to_string()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::data(e.to_string()).in_file(path))
}

fn read_track(path: &Path) -> Result<ScanPath, CliError> {
    let text = read_text(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    let mut track = gaze::parse_track(stem, &text).map_err(|e| CliError::from(e).in_file(path))?;
    track.apply_gazebase_name(stem);
    Ok(track)
}

/// Writes `contents` to a temporary file next to `path`, then renames it.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let fail = |e: std::io::Error| CliError::data(e.to_string()).in_file(path);
    let name = path.file_name().ok_or_else(|| CliError::config("output path has no file name").in_file(path))?;
    let tmp = path.with_file_name(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(contents.as_bytes()).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(fail)
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).map_err(|e| CliError::data(e.to_string()))
        }
    }
}

/// 1-based line of a TOML syntax or schema error.
fn toml_error_line<T: serde::de::DeserializeOwned>(text: &str) -> Option<usize> {
    let err = toml::from_str::<T>(text).err()?;
    err.span().map(|s| text[..s.start].matches('\n').count() + 1)
}

fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = read_text(path)?;
    ExperimentConfig::from_toml(&text).map_err(|e| {
        let line = toml_error_line::<ExperimentConfig>(&text);
        CliError { line, ..CliError::from(e).in_file(path) }
    })
}

fn diagrams_for(track: &ScanPath, args: &PersistenceArgs, kind: FiltrationKind) -> Result<Vec<PersistenceDiagram>, CliError> {
    let clean = preprocess(track, args.spike_threshold)?;
    let series = |c: Channel| gaze::to_time_series(&clean, c);
    let channel = match args.rep {
        Representation::TsX => Some(Channel::X),
        Representation::TsY => Some(Channel::Y),
        Representation::TsAmp => Some(Channel::Amp),
        _ => None,
    };
    Ok(match (channel, kind) {
        (Some(c), FiltrationKind::LowerStar) => vec![lower_star_1d(&series(c)?)],
        (Some(c), FiltrationKind::UpperStar) => vec![upper_star_1d(&series(c)?)],
        (None, FiltrationKind::VietorisRips) if args.rep == Representation::Cloud => {
            let cloud = gaze::to_point_cloud(&clean)?.subsample(args.vr_max_points);
            vietoris_rips(&cloud, 1, args.vr_max_scale)?
        }
        (None, FiltrationKind::SublevelCubical | FiltrationKind::SuperlevelCubical) if args.rep == Representation::Heatmap => {
            let map = gaze::to_heatmap(&clean, args.heatmap_size, args.heatmap_size, Bandwidth::Auto)?;
            let dir = if kind == FiltrationKind::SublevelCubical { Direction::Sublevel } else { Direction::Superlevel };
            sublevel_cubical_2d(&map, dir)
        }
        _ => {
            return Err(CliError::config(format!(
                "filtration {} does not apply to representation {}",
                kind.name(),
                args.rep.name()
            )))
        }
    })
}

fn cmd_persistence(args: &PersistenceArgs) -> Result<(), CliError> {
    let kind = match &args.filtration {
        Some(f) => FiltrationKind::from_name(f).ok_or_else(|| CliError::config(format!("unknown filtration `{f}`")))?,
        None => args.rep.default_filtration(),
    };
    if args.inputs.len() > 1 && args.out.is_none() {
        return Err(CliError::config("--out <DIR> is required with several inputs"));
    }
    let mut outputs = Vec::with_capacity(args.inputs.len());
    for input in &args.inputs {
        let track = read_track(input)?;
        let diagrams = diagrams_for(&track, args, kind).map_err(|e| e.in_file(input))?;
        let text = match args.format {
            Format::Csv => diagrams_to_csv(&diagrams),
            Format::Json => diagrams_to_json(
                &diagrams,
                &DiagramSource { track_id: track.track_id.clone(), representation: args.rep.name().into() },
            ),
        };
        outputs.push((track.track_id, text));
    }
    if args.inputs.len() == 1 {
        return emit(args.out.as_deref(), &outputs[0].1);
    }
    let dir = args.out.as_deref().expect("checked above");
    fs::create_dir_all(dir).map_err(|e| CliError::data(e.to_string()).in_file(dir))?;
    let ext = if args.format == Format::Csv { "csv" } else { "json" };
    for (id, text) in outputs {
        write_atomic(&dir.join(format!("{id}.{}.{}.{ext}", args.rep.name(), kind.name())), &text)?;
    }
    Ok(())
}

fn cmd_vectorize(args: &VectorizeArgs) -> Result<(), CliError> {
    let curve = CurveKind::from_name(&args.curve).ok_or_else(|| CliError::config(format!("unknown curve `{}`", args.curve)))?;
    let text = read_text(&args.input)?;
    let diagrams =
        diagrams_from_csv(&text, FiltrationKind::LowerStar).map_err(|e| CliError::from(e).in_file(&args.input))?;
    let empty = PersistenceDiagram::new(args.dim, FiltrationKind::LowerStar, Vec::new());
    let d = diagrams.iter().find(|d| d.dimension == args.dim).unwrap_or(&empty);
    let grid = match (args.start, args.end) {
        (Some(s), Some(e)) => CurveGrid::new(s, e, args.knots),
        _ => CurveGrid::covering([d], args.knots),
    }
    .map_err(|e| CliError::config(e.to_string()))?;
    if curve == CurveKind::Landscape && args.levels == 0 {
        return Err(CliError::config("--levels must be positive"));
    }

    let eps = grid.points();
    let mut out = String::from("epsilon");
    if curve == CurveKind::Landscape {
        let v = landscape(d, &grid, args.levels);
        for level in 1..=args.levels {
            out.push_str(&format!(",l{level}"));
        }
        out.push('\n');
        for (i, e) in eps.iter().enumerate() {
            out.push_str(&e.to_string());
            for level in 0..args.levels {
                out.push_str(&format!(",{}", v.values[level * grid.knots + i]));
            }
            out.push('\n');
        }
    } else {
        let v = vectorize(d, &grid, curve, args.levels);
        out.push_str(",value\n");
        for (e, x) in eps.iter().zip(&v.values) {
            out.push_str(&format!("{e},{x}\n"));
        }
    }
    emit(args.out.as_deref(), &out)
}

fn feature_groups(groups: Option<&str>, config: &ExperimentConfig) -> Result<BTreeSet<FeatureGroup>, CliError> {
    match groups {
        Some(g) => Ok(parse_feature_set(g)?),
        None => Ok(config.groups()?.into_iter().next().expect("validated non-empty")),
    }
}

/// Preprocesses and featurizes tracks; any failing track is an error here,
/// since the user named the inputs explicitly.
fn featurize(
    inputs: &[PathBuf],
    groups: &BTreeSet<FeatureGroup>,
    config: &ExperimentConfig,
) -> Result<Vec<TrackFeatures>, CliError> {
    let tracks = load_paths(inputs)?;
    let clean = tracks
        .iter()
        .map(|t| {
            preprocess(t, config.spike_threshold).map_err(|e| {
                let mut c = CliError::from(e);
                c.message = format!("track {}: {}", t.track_id, c.message);
                c
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (features, excluded) = extract_features(&clean, groups, &config.feature_params());
    if let Some((id, reason)) = excluded.first() {
        return Err(CliError { file: Some(id.clone()), ..CliError::data(reason.clone()) });
    }
    Ok(features)
}

fn cmd_features(args: &FeaturesArgs) -> Result<(), CliError> {
    let config = args.config.as_deref().map(load_config).transpose()?.unwrap_or_default();
    let groups = feature_groups(args.groups.as_deref(), &config)?;
    let tracks = featurize(&args.inputs, &groups, &config)?;
    let refs: Vec<&TrackFeatures> = tracks.iter().collect();
    let grids = fit_grids(&refs, config.knots)?;
    let m = assemble_from_extracted(&refs, &groups, &grids, &config.feature_params())?;
    emit(args.out.as_deref(), &m.to_csv())
}

fn cmd_classify(args: &ClassifyArgs) -> Result<(), CliError> {
    let mut config = args.config.as_deref().map(load_config).transpose()?.unwrap_or_default();
    if let Some(s) = args.seed {
        config.seed = s;
    }
    let groups = feature_groups(args.groups.as_deref(), &config)?;
    let train = featurize(&args.train, &groups, &config)?;
    let test = featurize(&args.test, &groups, &config)?;
    let train_refs: Vec<&TrackFeatures> = train.iter().collect();
    let test_refs: Vec<&TrackFeatures> = test.iter().collect();
    let grids = fit_grids(&train_refs, config.knots)?;
    let params = config.feature_params();
    let train_m = assemble_from_extracted(&train_refs, &groups, &grids, &params)?;
    let test_m = assemble_from_extracted(&test_refs, &groups, &grids, &params)?;
    let model = train_forest(&train_m, &config.forest(config.seed))?;
    let predicted = pipeline::predict(&model, &test_m)?;
    log::info!("test accuracy {}", pipeline::accuracy(&predicted, &test_m.labels));

    let mut out = String::from("track_id,label,predicted\n");
    for ((id, label), p) in test_m.track_ids.iter().zip(&test_m.labels).zip(&predicted) {
        out.push_str(&format!("{id},{label},{p}\n"));
    }
    emit(args.out.as_deref(), &out)
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<(), CliError> {
    let mut config = load_config(&args.config)?;
    if let Some(s) = args.seed {
        config.seed = s;
    }
    let base = args.config.parent().unwrap_or(Path::new("."));
    let data = load_dataset(&config, base).map_err(|e| CliError::from(e).in_file(&args.config))?;
    let report = run_experiment(&data, &config)?;
    for r in &report.results {
        log::info!("{}: accuracy {:.4} ± {:.4} over {} runs", r.feature_set, r.mean, r.std, r.accuracies.len());
    }
    emit(args.out.as_deref(), &report.to_json())?;
    if let Some(summary) = &args.summary {
        write_atomic(summary, &report.summary_csv())?;
    }
    Ok(())
}

fn cmd_synth(args: &SynthArgs) -> Result<(), CliError> {
    let config = match &args.config {
        Some(p) => {
            let text = read_text(p)?;
            SynthConfig::from_toml(&text).map_err(|e| {
                let line = toml_error_line::<gaze::synth::SynthFile>(&text);
                CliError { line, ..CliError::from(e).in_file(p) }
            })?
        }
        None => SynthConfig::preset(3, 40),
    };
    let tracks = generate_synthetic(&config, args.seed)?;
    fs::create_dir_all(&args.out).map_err(|e| CliError::data(e.to_string()).in_file(&args.out))?;
    for t in &tracks {
        write_atomic(&args.out.join(format!("{}.csv", t.track_id)), &gaze::write_track(t))?;
    }
    log::info!("wrote {} tracks to {}", tracks.len(), args.out.display());
    Ok(())
}

/// Executes one parsed invocation.
pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Parse(a) => {
            let t = read_track(&a.input)?;
            log::info!("{}: {} samples, subject {}", t.track_id, t.len(), t.subject_id);
            emit(a.out.as_deref(), &gaze::write_track(&t))
        }
        Command::Preprocess(a) => {
            let t = read_track(&a.input)?;
            let clean = preprocess(&t, a.spike_threshold).map_err(|e| CliError::from(e).in_file(&a.input))?;
            emit(a.out.as_deref(), &gaze::write_track(&clean))
        }
        Command::Persistence(a) => cmd_persistence(a),
        Command::Vectorize(a) => cmd_vectorize(a),
        Command::Features(a) => cmd_features(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

fn init_logging(cli: &Cli) {
    let level = match (cli.quiet, cli.verbose) {
        (true, _) => log::LevelFilter::Error,
        (false, 0) => log::LevelFilter::Warn,
        (false, 1) => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).parse_env("RUST_LOG").format_timestamp(None).try_init();
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_logging(&cli);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        pool = pool.num_threads(n.max(1));
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| dispatch(&cli)),
        Err(e) => Err(CliError::config(format!("cannot start {} worker threads: {e}", cli.jobs.unwrap_or(0)))),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
