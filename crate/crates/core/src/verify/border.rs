//! Border points of planar sets via empty-disk witnesses.
//!
//! A pair `(p, q)` is a Delaunay edge iff some disk with `p` and `q` on its
//! boundary has no point in its interior. All such disks have centers on the
//! bisector of `pq`, `c(t) = m + t n`. A third point `x` at signed offset
//! `s = (x - m).n` is inside `c(t)` iff `t > t_x` (for `s > 0`) or `t < t_x`
//! (for `s < 0`), with `t_x` the center of the circle through `p`, `q`, `x`.
//! So the empty disks form an interval whose ends are circumcircles of the
//! closest third points on either side, and only those (or the diametral
//! disk when no third point is off the line) need testing.

use std::collections::BTreeSet;

use crate::dataset::TrainingSet;
use crate::error::{Error, Result};

/// A point violates a disk of radius `r` only if it is closer to the center
/// than `r * (1 - EMPTY_DISK_TOLERANCE)`.
pub const EMPTY_DISK_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BorderPoints {
    indices: BTreeSet<usize>,
}

impl BorderPoints {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    /// Ascending indices.
    pub fn indices(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }
}

/// Points incident to a Delaunay edge whose other endpoint is an enemy.
/// `k` is the length of the result. O(n^3).
pub fn border_points_2d(set: &TrainingSet) -> Result<BorderPoints> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            found: set.dim(),
            expected: 2,
            context: "border point extraction",
        });
    }
    let mut indices = BTreeSet::new();
    for p in 0..set.len() {
        for q in p + 1..set.len() {
            if set.label(p) == set.label(q) {
                continue;
            }
            if indices.contains(&p) && indices.contains(&q) {
                continue;
            }
            if is_delaunay_edge(set, p, q) {
                indices.insert(p);
                indices.insert(q);
            }
        }
    }
    Ok(BorderPoints { indices })
}

fn disk_is_empty(set: &TrainingSet, p: usize, q: usize, center: [f64; 2], radius: f64) -> bool {
    let limit = radius * (1.0 - EMPTY_DISK_TOLERANCE);
    (0..set.len()).filter(|&x| x != p && x != q).all(|x| {
        let c = set.coords(x);
        let d = ((c[0] - center[0]).powi(2) + (c[1] - center[1]).powi(2)).sqrt();
        d >= limit
    })
}

/// True iff some disk through points `p` and `q` is empty. Needs `d = 2`.
pub fn is_delaunay_edge(set: &TrainingSet, p: usize, q: usize) -> bool {
    let a = set.coords(p);
    let b = set.coords(q);
    let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len = (dx * dx + dy * dy).sqrt();
    if len == 0.0 {
        return true;
    }
    let normal = [-dy / len, dx / len];
    let half_sq = (len / 2.0) * (len / 2.0);

    // tightest circumcircle parameters on each side of the line pq
    let mut upper = f64::INFINITY;
    let mut lower = f64::NEG_INFINITY;
    for x in 0..set.len() {
        if x == p || x == q {
            continue;
        }
        let c = set.coords(x);
        let rel = [c[0] - mid[0], c[1] - mid[1]];
        let side = rel[0] * normal[0] + rel[1] * normal[1];
        if side == 0.0 {
            continue;
        }
        let t = (rel[0] * rel[0] + rel[1] * rel[1] - half_sq) / (2.0 * side);
        if side > 0.0 {
            upper = upper.min(t);
        } else {
            lower = lower.max(t);
        }
    }

    let candidates: Vec<f64> = match (lower.is_finite(), upper.is_finite()) {
        (false, false) => vec![0.0],
        (true, false) => vec![lower],
        (false, true) => vec![upper],
        (true, true) => vec![lower, upper],
    };
    candidates.into_iter().any(|t| {
        let center = [mid[0] + t * normal[0], mid[1] + t * normal[1]];
        let radius = (half_sq + t * t).sqrt();
        disk_is_empty(set, p, q, center, radius)
    })
}
