use crate::condense::{validate, Algorithm, Stats, Subset};
use crate::dataset::TrainingSet;
use crate::error::Result;
use crate::neighbors::NeighborTable;

/// Greedy gamma-net with gamma the smallest NE distance in the set.
///
/// Points are visited in index order; a point is rejected iff an already
/// selected point lies strictly within gamma of it.
pub fn net(set: &TrainingSet, table: &NeighborTable) -> Result<Subset> {
    validate(set, table)?;
    let gamma = (0..set.len())
        .map(|i| table.ne_dist(i))
        .fold(f64::INFINITY, f64::min);
    let mut selected: Vec<usize> = Vec::new();
    let mut comparisons = 0u64;
    for i in 0..set.len() {
        let mut close = false;
        for &s in &selected {
            comparisons += 1;
            if set.dist(i, s) < gamma {
                close = true;
                break;
            }
        }
        if !close {
            selected.push(i);
        }
    }
    Ok(Subset::new(
        Algorithm::Net,
        set,
        selected,
        Stats {
            iterations: 1,
            comparisons,
        },
    ))
}
