use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::gaze::{self, Bandwidth, Channel, ScanPath};
use crate::macro_stats::{macro_feature_names, macro_features};
use crate::persistence::{
    lower_star_1d, sublevel_cubical_2d, upper_star_1d, vietoris_rips, Direction, FiltrationKind, PersistenceDiagram,
};
use crate::vectorize::{landscape, vectorize, CurveGrid, CurveKind};

/// A block of feature columns. The derived order is alphabetical by name and
/// fixes the concatenation order of a feature set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureGroup {
    /// Sublevel and superlevel cubical diagrams of the attention heatmap.
    Heatmap,
    /// Persistence landscapes of the X, Y and Amp star-filtration diagrams.
    Landscape,
    /// Fixation/saccade statistics.
    Macro,
    TsAmp,
    TsX,
    TsY,
    /// Rips diagrams of the (subsampled) gaze point cloud.
    Vr,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 7] = [
        FeatureGroup::Heatmap,
        FeatureGroup::Landscape,
        FeatureGroup::Macro,
        FeatureGroup::TsAmp,
        FeatureGroup::TsX,
        FeatureGroup::TsY,
        FeatureGroup::Vr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FeatureGroup::Heatmap => "heatmap",
            FeatureGroup::Landscape => "landscape",
            FeatureGroup::Macro => "macro",
            FeatureGroup::TsAmp => "ts_amp",
            FeatureGroup::TsX => "ts_x",
            FeatureGroup::TsY => "ts_y",
            FeatureGroup::Vr => "vr",
        }
    }

    pub fn from_name(s: &str) -> Option<FeatureGroup> {
        FeatureGroup::ALL.into_iter().find(|g| g.name() == s)
    }

    /// Diagrams this group reads.
    fn diagram_keys(self, params: &FeatureParams) -> Vec<DiagramKey> {
        let star = |channels: &[Channel]| {
            let mut keys = Vec::new();
            for c in channels {
                for &f in &params.star_filtrations {
                    keys.push(DiagramKey { representation: c.name(), filtration: f, dimension: 0 });
                }
            }
            keys
        };
        let two_dims = |representation, kinds: &[FiltrationKind]| {
            let mut keys = Vec::new();
            for &filtration in kinds {
                for dimension in 0..=1 {
                    keys.push(DiagramKey { representation, filtration, dimension });
                }
            }
            keys
        };
        match self {
            FeatureGroup::Macro => Vec::new(),
            FeatureGroup::TsX => star(&[Channel::X]),
            FeatureGroup::TsY => star(&[Channel::Y]),
            FeatureGroup::TsAmp => star(&[Channel::Amp]),
            FeatureGroup::Landscape => star(&[Channel::X, Channel::Y, Channel::Amp]),
            FeatureGroup::Heatmap => {
                two_dims("heatmap", &[FiltrationKind::SublevelCubical, FiltrationKind::SuperlevelCubical])
            }
            FeatureGroup::Vr => two_dims("cloud", &[FiltrationKind::VietorisRips]),
        }
    }
}

impl fmt::Display for FeatureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses `"ts_x+ts_y+macro"` into a group set.
pub fn parse_feature_set(s: &str) -> Result<BTreeSet<FeatureGroup>, PipelineError> {
    let mut set = BTreeSet::new();
    for part in s.split('+').map(str::trim) {
        let g = FeatureGroup::from_name(part).ok_or_else(|| {
            let known: Vec<&str> = FeatureGroup::ALL.iter().map(|g| g.name()).collect();
            PipelineError::Config(format!("unknown feature group `{part}` in `{s}` (known: {})", known.join(", ")))
        })?;
        set.insert(g);
    }
    Ok(set)
}

/// Identifies one diagram of a track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramKey {
    /// `x`, `y`, `amp`, `heatmap` or `cloud`.
    pub representation: &'static str,
    pub filtration: FiltrationKind,
    pub dimension: usize,
}

impl fmt::Display for DiagramKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:h{}", self.representation, self.filtration.name(), self.dimension)
    }
}

/// Knobs shared by extraction and vectorization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureParams {
    pub knots: usize,
    pub curves: Vec<CurveKind>,
    pub landscape_levels: usize,
    /// Filtrations used for the X/Y/Amp series.
    pub star_filtrations: Vec<FiltrationKind>,
    pub heatmap_size: usize,
    pub vr_max_points: usize,
    pub vr_max_scale: f64,
}

impl Default for FeatureParams {
    fn default() -> Self {
        FeatureParams {
            knots: CurveGrid::DEFAULT_KNOTS,
            curves: vec![CurveKind::Betti, CurveKind::Entropy],
            landscape_levels: 2,
            star_filtrations: vec![FiltrationKind::LowerStar, FiltrationKind::UpperStar],
            heatmap_size: 32,
            vr_max_points: 48,
            vr_max_scale: 10.0,
        }
    }
}

impl FeatureParams {
    pub fn validate(&self) -> Result<(), PipelineError> {
        let fail = |m: &str| Err(PipelineError::Config(m.to_string()));
        if self.knots < 2 {
            return fail("knots must be at least 2");
        }
        if self.curves.is_empty() {
            return fail("curves must not be empty");
        }
        if self.landscape_levels == 0 {
            return fail("landscape_levels must be positive");
        }
        if self.star_filtrations.is_empty()
            || self.star_filtrations.iter().any(|f| !matches!(f, FiltrationKind::LowerStar | FiltrationKind::UpperStar))
        {
            return fail("star_filtrations must be a non-empty subset of lower_star, upper_star");
        }
        if self.heatmap_size < 2 {
            return fail("heatmap_size must be at least 2");
        }
        if self.vr_max_points < 2 {
            return fail("vr_max_points must be at least 2");
        }
        if !(self.vr_max_scale > 0.0) {
            return fail("vr_max_scale must be positive");
        }
        Ok(())
    }
}

/// Everything about one track that does not depend on the training split.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackFeatures {
    pub track_id: String,
    pub label: String,
    pub macro_values: Option<Vec<f64>>,
    pub diagrams: BTreeMap<DiagramKey, PersistenceDiagram>,
}

/// Computes the macro statistics and diagrams needed by `groups` for one
/// preprocessed track.
pub fn extract_track(
    path: &ScanPath,
    groups: &BTreeSet<FeatureGroup>,
    params: &FeatureParams,
) -> Result<TrackFeatures, PipelineError> {
    let keys: BTreeSet<DiagramKey> = groups.iter().flat_map(|g| g.diagram_keys(params)).collect();
    let mut diagrams = BTreeMap::new();

    for channel in [Channel::X, Channel::Y, Channel::Amp] {
        let wanted: Vec<DiagramKey> = keys.iter().filter(|k| k.representation == channel.name()).copied().collect();
        if wanted.is_empty() {
            continue;
        }
        let series = gaze::to_time_series(path, channel)?;
        for key in wanted {
            let d = match key.filtration {
                FiltrationKind::LowerStar => lower_star_1d(&series),
                _ => upper_star_1d(&series),
            };
            diagrams.insert(key, d);
        }
    }
    if keys.iter().any(|k| k.representation == "heatmap") {
        let map = gaze::to_heatmap(path, params.heatmap_size, params.heatmap_size, Bandwidth::Auto)?;
        for (kind, direction) in
            [(FiltrationKind::SublevelCubical, Direction::Sublevel), (FiltrationKind::SuperlevelCubical, Direction::Superlevel)]
        {
            for d in sublevel_cubical_2d(&map, direction) {
                diagrams.insert(DiagramKey { representation: "heatmap", filtration: kind, dimension: d.dimension }, d);
            }
        }
    }
    if keys.iter().any(|k| k.representation == "cloud") {
        let cloud = gaze::to_point_cloud(path)?.subsample(params.vr_max_points);
        for d in vietoris_rips(&cloud, 1, params.vr_max_scale)? {
            let key = DiagramKey { representation: "cloud", filtration: FiltrationKind::VietorisRips, dimension: d.dimension };
            diagrams.insert(key, d);
        }
    }

    let macro_values = if groups.contains(&FeatureGroup::Macro) { Some(macro_features(path)?.values) } else { None };
    Ok(TrackFeatures { track_id: path.track_id.clone(), label: path.subject_id.clone(), macro_values, diagrams })
}

/// Extracts all tracks in parallel, keeping input order. Tracks that fail
/// are returned separately as `(track_id, reason)` and logged.
pub fn extract_features(
    paths: &[ScanPath],
    groups: &BTreeSet<FeatureGroup>,
    params: &FeatureParams,
) -> (Vec<TrackFeatures>, Vec<(String, String)>) {
    let results: Vec<_> = paths.par_iter().map(|p| extract_track(p, groups, params)).collect();
    let mut ok = Vec::with_capacity(paths.len());
    let mut excluded = Vec::new();
    for (path, r) in paths.iter().zip(results) {
        match r {
            Ok(t) => ok.push(t),
            Err(e) => {
                log::warn!("excluding track {}: {e}", path.track_id);
                excluded.push((path.track_id.clone(), e.to_string()));
            }
        }
    }
    (ok, excluded)
}

pub type GridMap = BTreeMap<DiagramKey, CurveGrid>;

/// One shared grid per diagram key, spanning the diagrams of the given
/// (training) tracks.
pub fn fit_grids(tracks: &[&TrackFeatures], knots: usize) -> Result<GridMap, PipelineError> {
    let keys: BTreeSet<DiagramKey> = tracks.iter().flat_map(|t| t.diagrams.keys().copied()).collect();
    let mut grids = GridMap::new();
    for key in keys {
        let grid = CurveGrid::covering(tracks.iter().filter_map(|t| t.diagrams.get(&key)), knots)?;
        grids.insert(key, grid);
    }
    Ok(grids)
}

/// Rectangular, all-finite feature table with one row per track.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureMatrix {
    pub schema: Vec<String>,
    pub track_ids: Vec<String>,
    /// Class (subject id) of each row.
    pub labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Tracks left out, with the reason.
    pub excluded: Vec<(String, String)>,
}

impl FeatureMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.schema.len()
    }

    /// CSV with `track_id,label` followed by the schema columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("track_id,label");
        for c in &self.schema {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for ((id, label), row) in self.track_ids.iter().zip(&self.labels).zip(&self.rows) {
            out.push_str(id);
            out.push(',');
            out.push_str(label);
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn group_block(
    group: FeatureGroup,
    track: &TrackFeatures,
    grids: &GridMap,
    params: &FeatureParams,
    names: Option<&mut Vec<String>>,
) -> Result<Vec<f64>, PipelineError> {
    let mut values = Vec::new();
    let mut names = names;
    if group == FeatureGroup::Macro {
        let m = track
            .macro_values
            .as_ref()
            .ok_or_else(|| PipelineError::Config(format!("{}: macro features were not extracted", track.track_id)))?;
        if let Some(names) = names {
            names.extend(macro_feature_names().into_iter().map(|n| format!("macro:{n}")));
        }
        return Ok(m.clone());
    }
    for key in group.diagram_keys(params) {
        let grid = grids.get(&key).ok_or_else(|| PipelineError::MissingGrid(key.to_string()))?;
        let d = track
            .diagrams
            .get(&key)
            .ok_or_else(|| PipelineError::Config(format!("{}: diagram {key} was not extracted", track.track_id)))?;
        let curves: &[CurveKind] = if group == FeatureGroup::Landscape { &[CurveKind::Landscape] } else { &params.curves };
        for &curve in curves {
            let v = if curve == CurveKind::Landscape {
                landscape(d, grid, params.landscape_levels)
            } else {
                vectorize(d, grid, curve, params.landscape_levels)
            };
            if let Some(names) = names.as_deref_mut() {
                let prefix = format!("{group}:{}:{}:{}:h{}", key.representation, key.filtration.name(), curve.name(), key.dimension);
                if curve == CurveKind::Landscape {
                    for level in 1..=params.landscape_levels {
                        names.extend((0..grid.knots).map(|i| format!("{prefix}:l{level}:{i:03}")));
                    }
                } else {
                    names.extend((0..grid.knots).map(|i| format!("{prefix}:{i:03}")));
                }
            }
            values.extend(v.values);
        }
    }
    Ok(values)
}

/// Column names of a feature set, in concatenation order.
fn schema(groups: &BTreeSet<FeatureGroup>, grids: &GridMap, params: &FeatureParams) -> Result<Vec<String>, PipelineError> {
    // Names only depend on keys and knot counts, so a dummy track suffices.
    let dummy = TrackFeatures {
        track_id: String::new(),
        label: String::new(),
        macro_values: Some(vec![0.0; macro_feature_names().len()]),
        diagrams: groups
            .iter()
            .flat_map(|g| g.diagram_keys(params))
            .map(|k| (k, PersistenceDiagram::new(k.dimension, k.filtration, Vec::new())))
            .collect(),
    };
    let mut names = Vec::new();
    for &g in groups {
        group_block(g, &dummy, grids, params, Some(&mut names))?;
    }
    Ok(names)
}

/// Builds the feature matrix of already-extracted tracks against fixed grids.
/// Rows containing non-finite values are excluded and logged.
pub fn assemble_from_extracted(
    tracks: &[&TrackFeatures],
    groups: &BTreeSet<FeatureGroup>,
    grids: &GridMap,
    params: &FeatureParams,
) -> Result<FeatureMatrix, PipelineError> {
    let schema = schema(groups, grids, params)?;
    let rows: Vec<Vec<f64>> = tracks
        .par_iter()
        .map(|t| {
            let mut row = Vec::with_capacity(schema.len());
            for &g in groups {
                row.extend(group_block(g, t, grids, params, None)?);
            }
            Ok(row)
        })
        .collect::<Result<_, PipelineError>>()?;

    let mut m = FeatureMatrix { schema, ..FeatureMatrix::default() };
    for (t, row) in tracks.iter().zip(rows) {
        if row.iter().any(|v| !v.is_finite()) {
            log::warn!("excluding track {}: non-finite feature value", t.track_id);
            m.excluded.push((t.track_id.clone(), "non-finite feature value".into()));
            continue;
        }
        m.track_ids.push(t.track_id.clone());
        m.labels.push(t.label.clone());
        m.rows.push(row);
    }
    Ok(m)
}

/// Extracts and assembles preprocessed tracks. Tracks whose extraction fails
/// are excluded with a logged reason.
pub fn assemble_features(
    paths: &[ScanPath],
    groups: &BTreeSet<FeatureGroup>,
    grids: &GridMap,
    params: &FeatureParams,
) -> Result<FeatureMatrix, PipelineError> {
    let (tracks, excluded) = extract_features(paths, groups, params);
    let refs: Vec<&TrackFeatures> = tracks.iter().collect();
    let mut m = assemble_from_extracted(&refs, groups, grids, params)?;
    m.excluded.splice(0..0, excluded);
    Ok(m)
}
