use crate::condense::{validate, Algorithm, Stats, Subset};
use crate::dataset::TrainingSet;
use crate::error::Result;
use crate::neighbors::NeighborTable;

/// Relaxed Selective Subset.
///
/// Walking points by increasing NE distance, a point is selected iff no
/// already selected point lies strictly inside its NE ball.
pub fn rss(set: &TrainingSet, table: &NeighborTable) -> Result<Subset> {
    validate(set, table)?;
    let mut selected: Vec<usize> = Vec::new();
    let mut comparisons = 0u64;

    for i in table.ne_order() {
        let radius = table.ne_dist(i);
        let here = set.coords(i);
        let mut covered = false;
        for &s in &selected {
            comparisons += 1;
            if crate::dataset::euclidean(here, set.coords(s)) < radius {
                covered = true;
                break;
            }
        }
        if !covered {
            selected.push(i);
        }
    }

    Ok(Subset::new(
        Algorithm::Rss,
        set,
        selected,
        Stats {
            iterations: 1,
            comparisons,
        },
    ))
}
