use itertools::Itertools;

use crate::dataset::TrainingSet;
use crate::error::{Error, Result};

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Smallest consistent subset by exhaustive search, enumerating by size and
/// then lexicographically. Exponential; refuses more than 20 points.
pub fn min_consistent_subset_bruteforce(set: &TrainingSet) -> Result<Vec<usize>> {
    let n = set.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::invalid(format!(
            "exhaustive search refused for n = {n} > {BRUTE_FORCE_LIMIT}"
        )));
    }
    if n == 0 {
        return Err(Error::invalid("empty training set"));
    }
    let dist: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| set.dist(i, j)).collect()).collect();
    let classes = set.populated_classes();

    for size in classes.max(1)..=n {
        for candidate in (0..n).combinations(size) {
            let consistent = (0..n).all(|q| {
                // combinations are ascending, so strict < keeps the smallest index on ties
                let mut best = candidate[0];
                for &c in &candidate[1..] {
                    if dist[q][c] < dist[q][best] {
                        best = c;
                    }
                }
                set.label(best) == set.label(q)
            });
            if consistent {
                return Ok(candidate);
            }
        }
    }
    unreachable!("the full set is always consistent")
}
