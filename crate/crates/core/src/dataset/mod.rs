//! Labeled point sets in R^d.
//!
//! A [`TrainingSet`] is immutable once built. Coordinates are stored
//! row-major in one flat buffer; [`LabeledPoint`] is a borrowed view of a
//! single row.

mod csv_io;
mod generate;

pub use csv_io::{load_csv, load_csv_path, save_csv, save_csv_path, ConflictPolicy, CsvOptions};
pub use generate::{gen_circle, gen_mss_adversarial, gen_sphere_lowerbound, split_holdout};

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Interned class label. Ids are contiguous from zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label(pub u32);

impl Label {
    pub fn id(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabeledPoint<'a> {
    pub index: usize,
    pub coords: &'a [f64],
    pub label: Label,
}

/// Euclidean distance between two points.
///
/// Fails if the points live in different dimensions.
pub fn distance(a: &LabeledPoint<'_>, b: &LabeledPoint<'_>) -> Result<f64> {
    if a.coords.len() != b.coords.len() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            a.coords.len(),
            b.coords.len()
        )));
    }
    Ok(euclidean(a.coords, b.coords))
}

/// Unchecked Euclidean distance. Symmetric bit-for-bit: `euclidean(a, b) == euclidean(b, a)`.
#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let diff = x - y;
        acc += diff * diff;
    }
    acc.sqrt()
}

/// Pairs of points that share coordinates. Only same-label pairs can exist
/// in a valid [`TrainingSet`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DuplicateReport {
    /// Each group lists the indices sharing one coordinate vector, ascending.
    pub groups: Vec<Vec<usize>>,
}

impl DuplicateReport {
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn redundant_points(&self) -> usize {
        self.groups.iter().map(|g| g.len() - 1).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainingSet {
    dim: usize,
    coords: Vec<f64>,
    labels: Vec<Label>,
    class_names: Vec<String>,
    duplicates: DuplicateReport,
}

impl TrainingSet {
    /// Builds a set from row-major coordinates and per-point label ids.
    ///
    /// `class_names[i]` names label id `i`. Every label id must be in range,
    /// coordinates must be finite, and no two points may share coordinates
    /// while carrying different labels.
    pub fn new(
        dim: usize,
        coords: Vec<f64>,
        labels: Vec<Label>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if coords.len() != dim * labels.len() {
            return Err(Error::invalid(format!(
                "expected {} coordinates for {} points in R^{}, got {}",
                dim * labels.len(),
                labels.len(),
                dim,
                coords.len()
            )));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid(format!(
                "point {} has a non-finite coordinate",
                pos / dim
            )));
        }
        if let Some(l) = labels.iter().find(|l| l.id() >= class_names.len()) {
            return Err(Error::invalid(format!(
                "label id {} out of range for {} classes",
                l,
                class_names.len()
            )));
        }
        let duplicates = find_duplicates(dim, &coords);
        for group in &duplicates.groups {
            let first = labels[group[0]];
            if let Some(&other) = group.iter().find(|&&i| labels[i] != first) {
                return Err(Error::invalid(format!(
                    "points {} and {} share coordinates but have different labels",
                    group[0], other
                )));
            }
        }
        Ok(TrainingSet {
            dim,
            coords,
            labels,
            class_names,
            duplicates,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    /// Number of classes that actually have members.
    pub fn populated_classes(&self) -> usize {
        let mut seen = vec![false; self.class_names.len()];
        for l in &self.labels {
            seen[l.id()] = true;
        }
        seen.into_iter().filter(|&s| s).count()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn class_name(&self, label: Label) -> &str {
        &self.class_names[label.id()]
    }

    #[inline]
    pub fn coords(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn flat_coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn point(&self, i: usize) -> LabeledPoint<'_> {
        LabeledPoint {
            index: i,
            coords: self.coords(i),
            label: self.labels[i],
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = LabeledPoint<'_>> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        euclidean(self.coords(i), self.coords(j))
    }

    /// Same-label coordinate duplicates found at construction.
    pub fn duplicates(&self) -> &DuplicateReport {
        &self.duplicates
    }

    /// Fails unless at least two classes are populated.
    pub fn require_multiclass(&self) -> Result<()> {
        if self.populated_classes() < 2 {
            return Err(Error::invalid(format!(
                "condensation needs at least 2 classes, found {}",
                self.populated_classes()
            )));
        }
        Ok(())
    }

    /// SHA-256 over dimension, coordinates, labels and class names.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.dim as u64).to_le_bytes());
        hasher.update((self.len() as u64).to_le_bytes());
        for c in &self.coords {
            hasher.update(c.to_bits().to_le_bytes());
        }
        for l in &self.labels {
            hasher.update(l.0.to_le_bytes());
        }
        for name in &self.class_names {
            hasher.update((name.len() as u64).to_le_bytes());
            hasher.update(name.as_bytes());
        }
        hex::encode(hasher.finalize())
    }

    /// Copy of the set restricted to `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<TrainingSet> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::invalid(format!("index {i} out of range")));
            }
            coords.extend_from_slice(self.coords(i));
            labels.push(self.labels[i]);
        }
        TrainingSet::new(self.dim, coords, labels, self.class_names.clone())
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn find_duplicates(dim: usize, coords: &[f64]) -> DuplicateReport {
    let n = coords.len() / dim;
    let row = |i: usize| &coords[i * dim..(i + 1) * dim];
    // -0.0 and 0.0 are the same location
    let same = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x == y);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| lexicographic(row(a), row(b)).then(a.cmp(&b)));

    let mut groups = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && same(row(order[start]), row(order[end])) {
            end += 1;
        }
        if end - start > 1 {
            let mut g = order[start..end].to_vec();
            g.sort_unstable();
            groups.push(g);
        }
        start = end;
    }
    groups.sort();
    DuplicateReport { groups }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_point() -> TrainingSet {
        TrainingSet::new(
            2,
            vec![0.0, 0.0, 3.0, 4.0],
            vec![Label(0), Label(1)],
            vec!["red".into(), "blue".into()],
        )
        .unwrap()
    }

    #[test]
    fn distance_basic() {
        let p = two_point();
        assert_eq!(distance(&p.point(0), &p.point(0)).unwrap(), 0.0);
        assert_eq!(distance(&p.point(0), &p.point(1)).unwrap(), 5.0);
    }

    #[test]
    fn distance_dimension_mismatch() {
        let a = LabeledPoint {
            index: 0,
            coords: &[0.0, 0.0],
            label: Label(0),
        };
        let b = LabeledPoint {
            index: 1,
            coords: &[0.0, 0.0, 0.0],
            label: Label(0),
        };
        assert!(matches!(distance(&a, &b), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejects_cross_label_duplicates() {
        let err = TrainingSet::new(
            1,
            vec![0.5, 0.5],
            vec![Label(0), Label(1)],
            vec!["a".into(), "b".into()],
        )
        .unwrap_err();
        assert!(err.to_string().contains("different labels"));
    }

    #[test]
    fn flags_same_label_duplicates() {
        let p = TrainingSet::new(
            1,
            vec![0.5, 1.0, 0.5, 0.5],
            vec![Label(0), Label(1), Label(0), Label(0)],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        assert_eq!(p.duplicates().groups, vec![vec![0, 2, 3]]);
        assert_eq!(p.duplicates().redundant_points(), 2);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(TrainingSet::new(1, vec![f64::NAN], vec![Label(0)], vec!["a".into()]).is_err());
    }

    #[test]
    fn hash_changes_with_content() {
        let a = two_point();
        let b = TrainingSet::new(
            2,
            vec![0.0, 0.0, 3.0, 4.5],
            vec![Label(0), Label(1)],
            vec!["red".into(), "blue".into()],
        )
        .unwrap();
        assert_eq!(a.content_hash(), two_point().content_hash());
        assert_ne!(a.content_hash(), b.content_hash());
    }

    proptest! {
        #[test]
        fn distance_is_a_metric(
            a in prop::collection::vec(-100.0..100.0f64, 3),
            b in prop::collection::vec(-100.0..100.0f64, 3),
            c in prop::collection::vec(-100.0..100.0f64, 3),
        ) {
            let ab = euclidean(&a, &b);
            prop_assert_eq!(ab, euclidean(&b, &a));
            prop_assert_eq!(euclidean(&a, &a), 0.0);
            prop_assert!(ab >= 0.0);
            let slack = 1e-12 * (1.0 + ab + euclidean(&a, &c) + euclidean(&c, &b));
            prop_assert!(ab <= euclidean(&a, &c) + euclidean(&c, &b) + slack);
        }
    }
}
