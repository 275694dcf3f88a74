//! Macro-event statistics and persistent-homology features for
//! eye-movement trajectories.
//!
//! The crate follows one pipeline: parse and clean a gaze track
//! ([`gaze`]), derive its time series, point cloud and attention heatmap,
//! compute persistence diagrams of each ([`persistence`]), turn them into
//! fixed-length curves ([`vectorize`]), combine them with classical
//! fixation/saccade statistics ([`macro_stats`]) and classify recordings with
//! a random forest under a repeated-split protocol ([`pipeline`]).
//!
//! ```
//! use gazetopo::gaze::{self, Channel, Label, ScanPath};
//! use gazetopo::persistence::lower_star_1d;
//!
//! let path = ScanPath::from_points("demo", &[[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [2.0, 0.0], [0.0, 0.0]], Label::Fixation);
//! let x = gaze::to_time_series(&path, Channel::X).unwrap();
//! let diagram = lower_star_1d(&x);
//! assert_eq!(diagram.len(), 3);
//! ```

pub mod cli;
pub mod gaze;
pub mod macro_stats;
pub mod persistence;
pub mod pipeline;
pub mod seed;
pub mod vectorize;
