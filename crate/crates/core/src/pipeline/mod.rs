//! Feature matrices, the random forest and the repeated-split experiment.
//!
//! Per-track work (preprocessing, persistence diagrams, macro statistics) is
//! done once per track. What depends on the training split, the shared curve
//! grids, is refit every repetition from the training tracks only.

mod experiment;
mod features;
mod forest;

use thiserror::Error;

use crate::gaze::GazeError;
use crate::macro_stats::MacroError;
use crate::persistence::PersistenceError;
use crate::vectorize::VectorizeError;

pub use experiment::{
    load_dataset, load_paths, run_experiment, stratified_split, ExperimentConfig, ExperimentReport, FeatureSetResult, CONFIG_KEYS,
};
pub use features::{
    assemble_features, assemble_from_extracted, extract_features, extract_track, fit_grids, parse_feature_set,
    DiagramKey, FeatureGroup, FeatureMatrix, FeatureParams, GridMap, TrackFeatures,
};
pub use forest::{accuracy, predict, train_forest, ForestConfig, Model};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    /// Invalid configuration or dataset shape.
    #[error("config error: {0}")]
    Config(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
    /// A track file that does not parse.
    #[error("{path}: {source}")]
    Track { path: String, source: GazeError },
    #[error("schema mismatch: model expects {expected} columns, matrix has {got} (or names differ)")]
    SchemaMismatch { expected: usize, got: usize },
    #[error("training needs at least 2 classes, got {0}")]
    SingleClass(usize),
    #[error("no curve grid for diagram {0}")]
    MissingGrid(String),
    #[error(transparent)]
    Gaze(#[from] GazeError),
    #[error(transparent)]
    Macro(#[from] MacroError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error(transparent)]
    Vectorize(#[from] VectorizeError),
}
