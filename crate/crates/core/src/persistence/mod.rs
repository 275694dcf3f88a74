//! Persistence diagrams of the three gaze representations:
//!
//! * [`lower_star_1d`] / [`upper_star_1d`]: 0-dimensional persistence of a
//!   time series seen as a piecewise-linear function on a path graph.
//! * [`vietoris_rips`]: Rips persistence (diameter convention) of a point
//!   cloud in dimensions 0 and 1.
//! * [`sublevel_cubical_2d`]: vertex-based cubical persistence of a heatmap.
//!
//! All diagrams drop zero-persistence pairs. Essential classes carry
//! `death = f64::INFINITY`.

mod bottleneck;
mod cubical;
mod io;
mod lower_star;
pub mod reduction;
mod rips;
pub mod union_find;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bottleneck::bottleneck_distance;
pub use cubical::{sublevel_cubical_2d, Direction};
pub use io::{diagrams_from_csv, diagrams_to_csv, diagrams_to_json, DiagramSource};
pub use lower_star::{lower_star_1d, lower_star_values, upper_star_1d, upper_star_values};
pub use rips::{pairwise_distances, vietoris_rips};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PersistenceError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationKind {
    LowerStar,
    UpperStar,
    VietorisRips,
    SublevelCubical,
    SuperlevelCubical,
}

impl FiltrationKind {
    pub fn name(self) -> &'static str {
        match self {
            FiltrationKind::LowerStar => "lower_star",
            FiltrationKind::UpperStar => "upper_star",
            FiltrationKind::VietorisRips => "rips",
            FiltrationKind::SublevelCubical => "sublevel",
            FiltrationKind::SuperlevelCubical => "superlevel",
        }
    }

    pub fn from_name(s: &str) -> Option<FiltrationKind> {
        [
            FiltrationKind::LowerStar,
            FiltrationKind::UpperStar,
            FiltrationKind::VietorisRips,
            FiltrationKind::SublevelCubical,
            FiltrationKind::SuperlevelCubical,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub birth: f64,
    pub death: f64,
}

impl PersistencePair {
    pub fn new(birth: f64, death: f64) -> Self {
        PersistencePair { birth, death }
    }

    pub fn essential(birth: f64) -> Self {
        PersistencePair { birth, death: f64::INFINITY }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// Multiset of birth/death pairs in one homology dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    pub dimension: usize,
    pub kind: FiltrationKind,
    pub pairs: Vec<PersistencePair>,
}

impl PersistenceDiagram {
    pub fn new(dimension: usize, kind: FiltrationKind, pairs: Vec<PersistencePair>) -> Self {
        PersistenceDiagram { dimension, kind, pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn essential_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.is_essential()).count()
    }

    /// Pairs sorted by (birth, death); two diagrams are equal as multisets
    /// iff their sorted pairs are equal.
    pub fn sorted_pairs(&self) -> Vec<PersistencePair> {
        let mut v = self.pairs.clone();
        v.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
        v
    }

    pub fn same_pairs(&self, other: &PersistenceDiagram) -> bool {
        self.sorted_pairs() == other.sorted_pairs()
    }

    /// Sorts pairs in place into the canonical order.
    pub fn normalize(&mut self) {
        self.pairs = self.sorted_pairs();
    }

    /// Negates every value. Finite pairs swap birth and death so birth ≤ death
    /// still holds; essential pairs keep an infinite death.
    pub(crate) fn negated(&self, kind: FiltrationKind) -> PersistenceDiagram {
        let pairs = self
            .pairs
            .iter()
            .map(|p| {
                if p.is_essential() {
                    PersistencePair::essential(-p.birth)
                } else {
                    PersistencePair::new(-p.death, -p.birth)
                }
            })
            .collect();
        let mut d = PersistenceDiagram::new(self.dimension, kind, pairs);
        d.normalize();
        d
    }
}
