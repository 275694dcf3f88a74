use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FeatureMatrix, PipelineError};
use crate::seed::derive_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestConfig {
    pub trees: usize,
    /// `None` grows trees until leaves are pure.
    pub max_depth: Option<usize>,
    /// Features tried per split; `None` means `⌈√columns⌉`.
    pub max_features: Option<usize>,
    pub bootstrap: bool,
    pub seed: u64,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig { trees: 100, max_depth: None, max_features: None, bootstrap: true, seed: 0 }
    }
}

impl ForestConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.trees == 0 {
            return Err(PipelineError::Config("trees must be at least 1".into()));
        }
        if self.max_features == Some(0) {
            return Err(PipelineError::Config("max_features must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf(usize),
    Split { feature: usize, threshold: f64, left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq)]
struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    fn predict(&self, x: &[f64]) -> usize {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                Node::Leaf(c) => return c,
                Node::Split { feature, threshold, left, right } => {
                    i = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }
}

/// A trained random forest.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub schema: Vec<String>,
    /// Sorted class identifiers; predictions index into this list.
    pub classes: Vec<String>,
    trees: Vec<Tree>,
}

impl Model {
    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }
}

/// Bagged CART trees with Gini impurity and a random feature subset per
/// split. Tree `i` draws from `derive_seed(config.seed, [i])`, so the model
/// does not depend on how trees are scheduled.
pub fn train_forest(m: &FeatureMatrix, config: &ForestConfig) -> Result<Model, PipelineError> {
    config.validate()?;
    let mut classes: Vec<String> = m.labels.clone();
    classes.sort();
    classes.dedup();
    if classes.len() < 2 {
        return Err(PipelineError::SingleClass(classes.len()));
    }
    let y: Vec<usize> = m.labels.iter().map(|l| classes.binary_search(l).unwrap()).collect();
    let cols = m.n_cols();
    let mtry = config.max_features.unwrap_or_else(|| (cols as f64).sqrt().ceil() as usize).clamp(1, cols.max(1));
    let data = TrainingData { x: &m.rows, y: &y, n_classes: classes.len(), cols, mtry, max_depth: config.max_depth };

    let trees = (0..config.trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, &[t as u64]));
            let n = m.n_rows();
            let sample: Vec<usize> =
                if config.bootstrap { (0..n).map(|_| rng.random_range(0..n)).collect() } else { (0..n).collect() };
            data.grow(sample, &mut rng)
        })
        .collect();
    Ok(Model { schema: m.schema.clone(), classes, trees })
}

struct TrainingData<'a> {
    x: &'a [Vec<f64>],
    y: &'a [usize],
    n_classes: usize,
    cols: usize,
    mtry: usize,
    max_depth: Option<usize>,
}

struct BestSplit {
    feature: usize,
    threshold: f64,
    score: f64,
}

impl TrainingData<'_> {
    fn grow(&self, sample: Vec<usize>, rng: &mut ChaCha8Rng) -> Tree {
        let mut tree = Tree { nodes: Vec::new() };
        self.build(&mut tree, sample, 0, rng);
        tree
    }

    fn counts(&self, idx: &[usize]) -> Vec<usize> {
        let mut c = vec![0; self.n_classes];
        for &i in idx {
            c[self.y[i]] += 1;
        }
        c
    }

    fn build(&self, tree: &mut Tree, idx: Vec<usize>, depth: usize, rng: &mut ChaCha8Rng) -> usize {
        let node = tree.nodes.len();
        let counts = self.counts(&idx);
        // Majority class; ties go to the smallest class index.
        let majority = (0..self.n_classes).fold(0, |best, c| if counts[c] > counts[best] { c } else { best });
        tree.nodes.push(Node::Leaf(majority));
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        if pure || idx.len() < 2 || self.max_depth.is_some_and(|d| depth >= d) {
            return node;
        }
        let Some(split) = self.best_split(&idx, &counts, rng) else {
            return node;
        };
        let (left, right): (Vec<usize>, Vec<usize>) =
            idx.iter().partition(|&&i| self.x[i][split.feature] <= split.threshold);
        let l = self.build(tree, left, depth + 1, rng);
        let r = self.build(tree, right, depth + 1, rng);
        tree.nodes[node] = Node::Split { feature: split.feature, threshold: split.threshold, left: l, right: r };
        node
    }

    /// Tries features in random order. At least `mtry` features are
    /// examined, and the search continues past `mtry` until some feature
    /// admits a split (every feature constant on the node gives `None`).
    fn best_split(&self, idx: &[usize], counts: &[usize], rng: &mut ChaCha8Rng) -> Option<BestSplit> {
        let mut features: Vec<usize> = (0..self.cols).collect();
        features.shuffle(rng);
        let n = idx.len() as f64;
        let mut best: Option<BestSplit> = None;
        let mut column: Vec<(f64, usize)> = Vec::with_capacity(idx.len());
        for (tried, &f) in features.iter().enumerate() {
            if tried >= self.mtry && best.is_some() {
                break;
            }
            column.clear();
            column.extend(idx.iter().map(|&i| (self.x[i][f], self.y[i])));
            column.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut left = vec![0usize; self.n_classes];
            let mut right = counts.to_vec();
            for k in 0..column.len() - 1 {
                let (v, c) = column[k];
                left[c] += 1;
                right[c] -= 1;
                let next = column[k + 1].0;
                if next <= v {
                    continue;
                }
                let nl = (k + 1) as f64;
                let nr = n - nl;
                // Weighted child impurity, up to constants: lower is better.
                let gl: f64 = left.iter().map(|&c| (c * c) as f64).sum::<f64>() / nl;
                let gr: f64 = right.iter().map(|&c| (c * c) as f64).sum::<f64>() / nr;
                let score = -(gl + gr);
                if best.as_ref().is_none_or(|b| score < b.score) {
                    let mid = v + (next - v) / 2.0;
                    let threshold = if mid < next { mid } else { v };
                    best = Some(BestSplit { feature: f, threshold, score });
                }
            }
        }
        best
    }
}

/// Majority vote over trees; ties go to the smallest class identifier.
pub fn predict(model: &Model, m: &FeatureMatrix) -> Result<Vec<String>, PipelineError> {
    if m.schema != model.schema || m.rows.iter().any(|r| r.len() != model.schema.len()) {
        return Err(PipelineError::SchemaMismatch { expected: model.schema.len(), got: m.n_cols() });
    }
    let labels = m
        .rows
        .par_iter()
        .map(|x| {
            let mut votes = vec![0usize; model.classes.len()];
            for t in &model.trees {
                votes[t.predict(x)] += 1;
            }
            let winner = (0..votes.len()).fold(0, |best, c| if votes[c] > votes[best] { c } else { best });
            model.classes[winner].clone()
        })
        .collect();
    Ok(labels)
}

/// Fraction of equal labels; 0 for empty input.
pub fn accuracy(predicted: &[String], truth: &[String]) -> f64 {
    if truth.is_empty() {
        return 0.0;
    }
    let hits = predicted.iter().zip(truth).filter(|(a, b)| a == b).count();
    hits as f64 / truth.len() as f64
}
