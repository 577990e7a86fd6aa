//! Nearest-neighbor and nearest-enemy queries.
//!
//! Every query orders candidates by `(distance, index)`, so ties resolve to
//! the smallest point index. The brute-force scan is the reference; the
//! kd-tree path returns identical results.

mod kdtree;

pub use kdtree::KdTree;

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{euclidean, Label, TrainingSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Nearest {
    pub index: usize,
    pub dist: f64,
}

impl Nearest {
    /// True if `self` comes strictly before `other` in `(distance, index)` order.
    #[inline]
    pub fn precedes(&self, other: &Nearest) -> bool {
        self.cmp_key(other) == Ordering::Less
    }

    #[inline]
    fn cmp_key(&self, other: &Nearest) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.index.cmp(&other.index))
    }
}

/// Distance of an optional neighbor; an empty subset is infinitely far.
pub fn dist_or_infinity(n: Option<Nearest>) -> f64 {
    n.map_or(f64::INFINITY, |n| n.dist)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    BruteForce,
    KdTree,
}

/// Per-point nearest enemy and nearest neighbor.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborTable {
    ne: Vec<Nearest>,
    nn: Vec<Nearest>,
    comparisons: u64,
}

impl NeighborTable {
    pub fn len(&self) -> usize {
        self.ne.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ne.is_empty()
    }

    #[inline]
    pub fn ne_index(&self, i: usize) -> usize {
        self.ne[i].index
    }

    #[inline]
    pub fn ne_dist(&self, i: usize) -> f64 {
        self.ne[i].dist
    }

    #[inline]
    pub fn nn_index(&self, i: usize) -> usize {
        self.nn[i].index
    }

    #[inline]
    pub fn nn_dist(&self, i: usize) -> f64 {
        self.nn[i].dist
    }

    pub fn nearest_enemy(&self, i: usize) -> Nearest {
        self.ne[i]
    }

    /// Distance evaluations spent building the table.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    /// Point indices sorted by increasing NE distance, ties by index.
    pub fn ne_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.ne_dist(a).total_cmp(&self.ne_dist(b)).then(a.cmp(&b)));
        order
    }

    /// Dumps `index,ne_index,ne_dist` rows.
    pub fn write_csv<W: std::io::Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(["index", "ne_index", "ne_dist"])?;
        for (i, ne) in self.ne.iter().enumerate() {
            w.write_record(&[i.to_string(), ne.index.to_string(), ne.dist.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn build_neighbor_table(set: &TrainingSet) -> Result<NeighborTable> {
    build_neighbor_table_with(set, Strategy::BruteForce)
}

/// Computes each point's nearest enemy and nearest neighbor (excluding itself).
///
/// Needs at least two populated classes.
pub fn build_neighbor_table_with(set: &TrainingSet, strategy: Strategy) -> Result<NeighborTable> {
    set.require_multiclass()?;
    let rows: Vec<(Nearest, Nearest, u64)> = match strategy {
        Strategy::BruteForce => (0..set.len())
            .into_par_iter()
            .map(|i| brute_force_row(set, i))
            .collect(),
        Strategy::KdTree => kd_rows(set),
    };
    let comparisons = rows.iter().map(|r| r.2).sum();
    let (ne, nn) = rows.into_iter().map(|(ne, nn, _)| (ne, nn)).unzip();
    Ok(NeighborTable { ne, nn, comparisons })
}

fn brute_force_row(set: &TrainingSet, i: usize) -> (Nearest, Nearest, u64) {
    let own = set.label(i);
    let here = set.coords(i);
    let mut ne: Option<Nearest> = None;
    let mut nn: Option<Nearest> = None;
    for j in 0..set.len() {
        if j == i {
            continue;
        }
        let cand = Nearest {
            index: j,
            dist: euclidean(here, set.coords(j)),
        };
        if nn.is_none_or(|b| cand.precedes(&b)) {
            nn = Some(cand);
        }
        if set.label(j) != own && ne.is_none_or(|b| cand.precedes(&b)) {
            ne = Some(cand);
        }
    }
    // multiclass guarantees both exist
    (ne.unwrap(), nn.unwrap(), (set.len() - 1) as u64)
}

fn kd_rows(set: &TrainingSet) -> Vec<(Nearest, Nearest, u64)> {
    let per_class: Vec<Vec<usize>> = {
        let mut groups = vec![Vec::new(); set.num_classes()];
        for i in 0..set.len() {
            groups[set.label(i).id()].push(i);
        }
        groups
    };
    (0..set.len())
        .into_par_iter()
        .map_init(
            || {
                let trees: Vec<KdTree<'_>> = per_class
                    .iter()
                    .map(|members| KdTree::new(set, members.iter().copied()))
                    .collect();
                trees
            },
            |trees, i| {
                let own = set.label(i).id();
                let q = set.coords(i);
                let before: u64 = trees.iter().map(|t| t.distance_evaluations()).sum();
                let mut ne: Option<Nearest> = None;
                let mut nn: Option<Nearest> = None;
                for (class, tree) in trees.iter().enumerate() {
                    let exclude = (class == own).then_some(i);
                    if let Some(cand) = tree.nearest(q, exclude) {
                        if nn.is_none_or(|b| cand.precedes(&b)) {
                            nn = Some(cand);
                        }
                        if class != own && ne.is_none_or(|b| cand.precedes(&b)) {
                            ne = Some(cand);
                        }
                    }
                }
                let after: u64 = trees.iter().map(|t| t.distance_evaluations()).sum();
                (ne.unwrap(), nn.unwrap(), after - before)
            },
        )
        .collect()
}

/// Nearest member of `subset` to `query`. `None` stands for an empty subset,
/// whose distance is `+inf` (see [`dist_or_infinity`]).
pub fn nearest_in_subset(query: &[f64], subset: &[usize], set: &TrainingSet) -> Option<Nearest> {
    let mut best: Option<Nearest> = None;
    for &j in subset {
        let cand = Nearest {
            index: j,
            dist: euclidean(query, set.coords(j)),
        };
        if best.is_none_or(|b| cand.precedes(&b)) {
            best = Some(cand);
        }
    }
    best
}

/// 1-NN rule over `subset`.
pub fn classify_nn(query: &[f64], subset: &[usize], set: &TrainingSet) -> Result<Label> {
    if query.len() != set.dim() {
        return Err(Error::invalid(format!(
            "query has dimension {}, training set has {}",
            query.len(),
            set.dim()
        )));
    }
    nearest_in_subset(query, subset, set)
        .map(|n| set.label(n.index))
        .ok_or(Error::EmptySubset)
}
