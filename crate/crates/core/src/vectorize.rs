//! Fixed-length vectorizations of persistence diagrams, evaluated on a uniform
//! grid: Betti curve, persistence curve, persistence landscapes and the
//! persistence entropy curve.
//!
//! Membership conventions: Betti and entropy curves count a pair as alive at
//! `ε` when `birth ≤ ε < death`; the persistence curve uses the open interval
//! `birth < ε < death`. Essential pairs are clipped to the grid end wherever a
//! bar length is needed (persistence, landscape, entropy); the Betti curve
//! only tests membership and keeps them unclipped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::persistence::{FiltrationKind, PersistenceDiagram, PersistencePair};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VectorizeError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// Uniform evaluation grid `start, …, end` with `knots` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveGrid {
    pub start: f64,
    pub end: f64,
    pub knots: usize,
}

impl CurveGrid {
    pub const DEFAULT_KNOTS: usize = 100;

    pub fn new(start: f64, end: f64, knots: usize) -> Result<CurveGrid, VectorizeError> {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(VectorizeError::InvalidGrid(format!("need finite start < end, got [{start}, {end}]")));
        }
        if knots < 2 {
            return Err(VectorizeError::InvalidGrid(format!("need at least 2 knots, got {knots}")));
        }
        Ok(CurveGrid { start, end, knots })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.end - self.start) / (self.knots - 1) as f64;
        (0..self.knots)
            .map(|i| if i + 1 == self.knots { self.end } else { self.start + i as f64 * step })
            .collect()
    }

    /// Smallest grid covering the given diagrams: from the lowest birth to the
    /// highest finite death or essential birth. Degenerate ranges are widened
    /// to unit length.
    pub fn covering<'a>(diagrams: impl IntoIterator<Item = &'a PersistenceDiagram>, knots: usize) -> Result<CurveGrid, VectorizeError> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in diagrams.into_iter().flat_map(|d| &d.pairs) {
            lo = lo.min(p.birth);
            hi = hi.max(if p.is_essential() { p.birth } else { p.death });
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi <= lo {
            hi = lo + 1.0;
        }
        CurveGrid::new(lo, hi, knots)
    }

    fn clip(&self, p: &PersistencePair) -> f64 {
        p.death.min(self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Betti,
    Persistence,
    Landscape,
    Entropy,
}

impl CurveKind {
    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Betti => "betti",
            CurveKind::Persistence => "persistence",
            CurveKind::Landscape => "landscape",
            CurveKind::Entropy => "entropy",
        }
    }

    pub fn from_name(s: &str) -> Option<CurveKind> {
        [CurveKind::Betti, CurveKind::Persistence, CurveKind::Landscape, CurveKind::Entropy]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub track_id: String,
    pub representation: String,
    pub filtration: FiltrationKind,
    pub curve: CurveKind,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub provenance: Provenance,
}

impl FeatureVector {
    fn new(values: Vec<f64>, d: &PersistenceDiagram, curve: CurveKind) -> FeatureVector {
        FeatureVector {
            values,
            provenance: Provenance {
                track_id: String::new(),
                representation: String::new(),
                filtration: d.kind,
                curve,
                dimension: d.dimension,
            },
        }
    }

    pub fn with_source(mut self, track_id: &str, representation: &str) -> FeatureVector {
        self.provenance.track_id = track_id.to_string();
        self.provenance.representation = representation.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn betti_curve(d: &PersistenceDiagram, g: &CurveGrid) -> FeatureVector {
    let values = g
        .points()
        .into_iter()
        .map(|eps| d.pairs.iter().filter(|p| p.birth <= eps && eps < p.death).count() as f64)
        .collect();
    FeatureVector::new(values, d, CurveKind::Betti)
}

pub fn persistence_curve(d: &PersistenceDiagram, g: &CurveGrid) -> FeatureVector {
    let values = g
        .points()
        .into_iter()
        .map(|eps| {
            d.pairs
                .iter()
                .filter_map(|p| {
                    let death = g.clip(p);
                    (p.birth < eps && eps < death).then_some(death - p.birth)
                })
                .fold(0.0, |a, b| a + b)
        })
        .collect();
    FeatureVector::new(values, d, CurveKind::Persistence)
}

/// Landscape levels `1..=levels`, level-major: `values[(k-1)·knots + i]` is
/// the k-th largest tent value at knot `i`.
pub fn landscape(d: &PersistenceDiagram, g: &CurveGrid, levels: usize) -> FeatureVector {
    let eps = g.points();
    let mut values = vec![0.0; levels * g.knots];
    let mut tents: Vec<f64> = Vec::with_capacity(d.pairs.len());
    for (i, &e) in eps.iter().enumerate() {
        tents.clear();
        tents.extend(d.pairs.iter().map(|p| (e - p.birth).min(g.clip(p) - e)).filter(|&t| t > 0.0));
        tents.sort_by(|a, b| b.total_cmp(a));
        for (k, &t) in tents.iter().take(levels).enumerate() {
            values[k * g.knots + i] = t;
        }
    }
    FeatureVector::new(values, d, CurveKind::Landscape)
}

/// Clipped bar lengths and their total.
fn clipped_lengths(d: &PersistenceDiagram, g: &CurveGrid) -> (Vec<f64>, f64) {
    let lengths: Vec<f64> = d.pairs.iter().map(|p| (g.clip(p) - p.birth).max(0.0)).collect();
    let total = lengths.iter().sum();
    (lengths, total)
}

fn entropy_term(length: f64, total: f64) -> f64 {
    if length <= 0.0 {
        return 0.0;
    }
    let q = length / total;
    -q * q.ln()
}

/// Entropy restricted to alive bars, normalized by the total clipped
/// persistence of all bars.
pub fn entropy_curve(d: &PersistenceDiagram, g: &CurveGrid) -> FeatureVector {
    let (lengths, total) = clipped_lengths(d, g);
    let values = g
        .points()
        .into_iter()
        .map(|eps| {
            if total <= 0.0 {
                return 0.0;
            }
            d.pairs
                .iter()
                .zip(&lengths)
                .filter(|(p, _)| p.birth <= eps && eps < p.death)
                .map(|(_, &l)| entropy_term(l, total))
                .fold(0.0, |a, b| a + b)
        })
        .collect();
    FeatureVector::new(values, d, CurveKind::Entropy)
}

/// Shannon entropy of normalized finite bar lengths; 0 for an empty diagram.
/// Essential pairs are ignored.
pub fn persistence_entropy(d: &PersistenceDiagram) -> f64 {
    let lengths: Vec<f64> = d.pairs.iter().filter(|p| !p.is_essential()).map(PersistencePair::persistence).collect();
    let total: f64 = lengths.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    lengths.iter().map(|&l| entropy_term(l, total)).fold(0.0, |a, b| a + b)
}

/// Evaluates one curve kind; `levels` only applies to landscapes.
pub fn vectorize(d: &PersistenceDiagram, g: &CurveGrid, curve: CurveKind, levels: usize) -> FeatureVector {
    match curve {
        CurveKind::Betti => betti_curve(d, g),
        CurveKind::Persistence => persistence_curve(d, g),
        CurveKind::Landscape => landscape(d, g, levels),
        CurveKind::Entropy => entropy_curve(d, g),
    }
}
