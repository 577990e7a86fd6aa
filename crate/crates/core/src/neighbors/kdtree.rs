//! Exact kd-tree over a subset of a [`TrainingSet`].
//!
//! Results are bit-identical to a linear scan: candidates are ordered by
//! `(distance, index)` and a subtree is only skipped when its slab gap is
//! strictly larger than the current best distance plus a rounding margin.

use std::cell::Cell;

use crate::dataset::{euclidean, TrainingSet};
use crate::neighbors::Nearest;

const LEAF_SIZE: usize = 8;
// covers the rounding error of the distance accumulation
const PRUNE_MARGIN: f64 = 1.0 + 8.0 * f64::EPSILON;

pub struct KdTree<'a> {
    set: &'a TrainingSet,
    order: Vec<usize>,
    // split axis of the node whose pivot sits at this position of `order`
    axis: Vec<u8>,
    visited: Cell<u64>,
}

impl<'a> KdTree<'a> {
    pub fn new(set: &'a TrainingSet, members: impl IntoIterator<Item = usize>) -> Self {
        let mut order: Vec<usize> = members.into_iter().collect();
        let mut axis = vec![0u8; order.len()];
        build(set, &mut order, &mut axis);
        KdTree {
            set,
            order,
            axis,
            visited: Cell::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Number of distance evaluations performed so far.
    pub fn distance_evaluations(&self) -> u64 {
        self.visited.get()
    }

    /// Nearest member to `query`, skipping `exclude`.
    pub fn nearest(&self, query: &[f64], exclude: Option<usize>) -> Option<Nearest> {
        let mut best: Option<Nearest> = None;
        self.search(query, exclude, 0, self.order.len(), &mut best);
        best
    }

    fn consider(&self, query: &[f64], idx: usize, exclude: Option<usize>, best: &mut Option<Nearest>) {
        if Some(idx) == exclude {
            return;
        }
        self.visited.set(self.visited.get() + 1);
        let cand = Nearest {
            index: idx,
            dist: euclidean(query, self.set.coords(idx)),
        };
        if best.is_none_or(|b| cand.precedes(&b)) {
            *best = Some(cand);
        }
    }

    fn search(
        &self,
        query: &[f64],
        exclude: Option<usize>,
        lo: usize,
        hi: usize,
        best: &mut Option<Nearest>,
    ) {
        if hi - lo <= LEAF_SIZE {
            for &idx in &self.order[lo..hi] {
                self.consider(query, idx, exclude, best);
            }
            return;
        }
        let mid = lo + (hi - lo) / 2;
        let pivot = self.order[mid];
        let axis = self.axis[mid] as usize;
        self.consider(query, pivot, exclude, best);

        let diff = query[axis] - self.set.coords(pivot)[axis];
        let (near, far) = if diff < 0.0 {
            ((lo, mid), (mid + 1, hi))
        } else {
            ((mid + 1, hi), (lo, mid))
        };
        self.search(query, exclude, near.0, near.1, best);
        let visit_far = match best {
            None => true,
            Some(b) => diff.abs() <= b.dist * PRUNE_MARGIN,
        };
        if visit_far {
            self.search(query, exclude, far.0, far.1, best);
        }
    }
}

fn build(set: &TrainingSet, order: &mut [usize], axis: &mut [u8]) {
    let len = order.len();
    if len <= LEAF_SIZE {
        return;
    }
    let dim = set.dim();
    let mut split = 0;
    let mut widest = f64::NEG_INFINITY;
    for a in 0..dim {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &i in order.iter() {
            let c = set.coords(i)[a];
            lo = lo.min(c);
            hi = hi.max(c);
        }
        if hi - lo > widest {
            widest = hi - lo;
            split = a;
        }
    }
    let mid = len / 2;
    order.select_nth_unstable_by(mid, |&x, &y| {
        set.coords(x)[split]
            .total_cmp(&set.coords(y)[split])
            .then(x.cmp(&y))
    });
    axis[mid] = split as u8;
    let (left, rest) = order.split_at_mut(mid);
    let (left_axis, rest_axis) = axis.split_at_mut(mid);
    build(set, left, left_axis);
    build(set, &mut rest[1..], &mut rest_axis[1..]);
}
