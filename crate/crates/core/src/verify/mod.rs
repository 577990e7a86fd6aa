//! Executable checks for condensed subsets: consistency, selectivity,
//! border points, NE-point counts and the angular charging audits.

mod audit;
mod border;
mod bruteforce;

pub use audit::{angle_at, audit_fcnn_representatives, audit_ne_charging, MIN_ANGLE};
pub use border::{border_points_2d, is_delaunay_edge, BorderPoints, EMPTY_DISK_TOLERANCE};
pub use bruteforce::{min_consistent_subset_bruteforce, BRUTE_FORCE_LIMIT};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dataset::TrainingSet;
use crate::error::{Error, Result};
use crate::neighbors::{KdTree, NeighborTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Property {
    Consistent,
    Selective,
    NeCharging,
    FcnnRepresentatives,
}

/// Point indices and distances demonstrating a violation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub distances: Vec<f64>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: Property,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub metrics: BTreeMap<String, f64>,
}

impl VerificationReport {
    /// `holds` is derived from the witness: a report fails iff it has one.
    pub fn new(property: Property, witness: Option<Witness>) -> Self {
        VerificationReport {
            property,
            holds: witness.is_none(),
            witness,
            metrics: BTreeMap::new(),
        }
    }

    pub fn metric(mut self, name: &str, value: f64) -> Self {
        self.metrics.insert(name.to_string(), value);
        self
    }
}

fn check_subset(set: &TrainingSet, subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= set.len()) {
        return Err(Error::invalid(format!("subset index {bad} out of range")));
    }
    Ok(())
}

/// Holds iff every point of `set` is classified correctly by the 1-NN rule
/// over `subset`. The witness is the first misclassified point and its
/// nearest subset member.
pub fn is_consistent(set: &TrainingSet, subset: &[usize]) -> Result<VerificationReport> {
    check_subset(set, subset)?;
    let tree = KdTree::new(set, subset.iter().copied());
    let mut witness = None;
    let mut violations = 0usize;
    for i in 0..set.len() {
        let nn = tree.nearest(set.coords(i), None).expect("subset is nonempty");
        if set.label(nn.index) != set.label(i) {
            violations += 1;
            witness.get_or_insert_with(|| Witness {
                indices: vec![i, nn.index],
                distances: vec![nn.dist],
                note: format!(
                    "point {i} ({}) has nearest subset point {} ({})",
                    set.class_name(set.label(i)),
                    nn.index,
                    set.class_name(set.label(nn.index))
                ),
            });
        }
    }
    Ok(VerificationReport::new(Property::Consistent, witness)
        .metric("violations", violations as f64)
        .metric("subsetSize", distinct(subset) as f64))
}

/// Holds iff every point has a subset member strictly closer than its
/// nearest enemy in `set`.
pub fn is_selective(
    set: &TrainingSet,
    subset: &[usize],
    table: &NeighborTable,
) -> Result<VerificationReport> {
    check_subset(set, subset)?;
    let tree = KdTree::new(set, subset.iter().copied());
    let mut witness = None;
    let mut violations = 0usize;
    for i in 0..set.len() {
        let nn = tree.nearest(set.coords(i), None).expect("subset is nonempty");
        if !(nn.dist < table.ne_dist(i)) {
            violations += 1;
            witness.get_or_insert_with(|| Witness {
                indices: vec![i, nn.index],
                distances: vec![nn.dist, table.ne_dist(i)],
                note: format!(
                    "point {i}: nearest subset point {} at {} is not closer than its nearest enemy at {}",
                    nn.index,
                    nn.dist,
                    table.ne_dist(i)
                ),
            });
        }
    }
    Ok(VerificationReport::new(Property::Selective, witness)
        .metric("violations", violations as f64)
        .metric("subsetSize", distinct(subset) as f64))
}

/// Number of distinct points that are some point's nearest enemy.
pub fn count_ne_points(table: &NeighborTable) -> usize {
    ne_points(table).len()
}

pub fn ne_points(table: &NeighborTable) -> BTreeSet<usize> {
    (0..table.len()).map(|i| table.ne_index(i)).collect()
}

fn distinct(subset: &[usize]) -> usize {
    subset.iter().collect::<BTreeSet<_>>().len()
}
