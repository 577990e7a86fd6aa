use crate::condense::{validate, Algorithm, Representative, Stats, Subset};
use crate::dataset::{euclidean, TrainingSet};
use crate::error::Result;
use crate::neighbors::{NeighborTable, Nearest};

/// For each populated class, the member nearest to the class mean (ties by
/// index), in class-id order.
pub fn class_centroids(set: &TrainingSet) -> Vec<usize> {
    let k = set.num_classes();
    let d = set.dim();
    let mut sums = vec![0.0; k * d];
    let mut counts = vec![0usize; k];
    for p in set.points() {
        let c = p.label.id();
        counts[c] += 1;
        for (s, x) in sums[c * d..(c + 1) * d].iter_mut().zip(p.coords) {
            *s += x;
        }
    }
    let means: Vec<Vec<f64>> = (0..k)
        .map(|c| sums[c * d..(c + 1) * d].iter().map(|s| s / counts[c].max(1) as f64).collect())
        .collect();

    let mut best: Vec<Option<Nearest>> = vec![None; k];
    for p in set.points() {
        let c = p.label.id();
        let cand = Nearest {
            index: p.index,
            dist: euclidean(p.coords, &means[c]),
        };
        if best[c].is_none_or(|b| cand.precedes(&b)) {
            best[c] = Some(cand);
        }
    }
    best.into_iter().flatten().map(|n| n.index).collect()
}

/// Fast Condensed Nearest Neighbor.
///
/// Starts from the class centroids. Each round, every selected point `p`
/// nominates the nearest of the enemies whose nearest selected point is `p`;
/// nominations are added together and the loop stops when none remain. The
/// returned subset carries a trace attributing each addition to the point it
/// represents.
pub fn fcnn(set: &TrainingSet, table: &NeighborTable) -> Result<Subset> {
    validate(set, table)?;
    let n = set.len();
    let mut selected: Vec<usize> = Vec::new();
    let mut trace: Vec<Representative> = Vec::new();
    // nearest selected point of every point of P
    let mut nearest: Vec<Option<Nearest>> = vec![None; n];
    let mut comparisons = 0u64;

    let mut batch: Vec<(usize, Option<usize>)> =
        class_centroids(set).into_iter().map(|c| (c, None)).collect();
    let mut iteration = 0;
    while !batch.is_empty() {
        for &(s, represents) in &batch {
            selected.push(s);
            trace.push(Representative {
                point: s,
                represents,
                iteration,
            });
        }
        for q in 0..n {
            let here = set.coords(q);
            for &(s, _) in &batch {
                comparisons += 1;
                let cand = Nearest {
                    index: s,
                    dist: euclidean(here, set.coords(s)),
                };
                if nearest[q].is_none_or(|b| cand.precedes(&b)) {
                    nearest[q] = Some(cand);
                }
            }
        }
        iteration += 1;

        // rep[p]: nearest point of voren(p), i.e. nearest misclassified
        // point whose nearest selected point is p
        let mut rep: Vec<Option<Nearest>> = vec![None; n];
        for q in 0..n {
            let owner = nearest[q].expect("at least one point selected");
            if set.label(owner.index) == set.label(q) {
                continue;
            }
            let cand = Nearest {
                index: q,
                dist: owner.dist,
            };
            let slot = &mut rep[owner.index];
            if slot.is_none_or(|b| cand.precedes(&b)) {
                *slot = Some(cand);
            }
        }
        // each point has one nearest selected point, so nominations are distinct
        batch = selected
            .iter()
            .filter_map(|&p| rep[p].map(|r| (r.index, Some(p))))
            .collect();
    }

    let mut subset = Subset::new(
        Algorithm::Fcnn,
        set,
        selected,
        Stats {
            iterations: iteration,
            comparisons,
        },
    );
    subset.trace = Some(trace);
    Ok(subset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condense::testutil::{line, random_set, two_point};
    use crate::dataset::{gen_circle, Label};
    use crate::neighbors::build_neighbor_table;
    use crate::verify::is_consistent;

    fn run(set: &TrainingSet) -> Subset {
        fcnn(set, &build_neighbor_table(set).unwrap()).unwrap()
    }

    #[test]
    fn two_points() {
        let s = run(&two_point());
        assert_eq!(s.indices, vec![0, 1]);
        assert_eq!(s.stats.iterations, 1);
        let trace = s.trace.unwrap();
        assert!(trace.iter().all(|r| r.represents.is_none()));
    }

    #[test]
    fn centroid_is_member_nearest_to_mean() {
        // red mean is 1.0; members at 0, 0.9, 2.1 -> 0.9
        let p = line(&[(0.0, 0), (0.9, 0), (2.1, 0), (5.0, 1), (6.0, 1)]);
        assert_eq!(class_centroids(&p), vec![1, 3]);
    }

    #[test]
    fn adds_misclassified_representative() {
        // centroids red@0, blue@3; blue@0.8 is misclassified by red@0
        let p = line(&[(-1.0, 0), (0.0, 0), (1.0, 0), (0.8, 1), (3.0, 1), (3.5, 1), (4.0, 1)]);
        let s = run(&p);
        assert_eq!(&s.indices[..2], &[1, 4]);
        let trace = s.trace.as_ref().unwrap();
        assert_eq!(
            trace[2],
            Representative {
                point: 3,
                represents: Some(1),
                iteration: 1
            }
        );
        assert!(is_consistent(&p, s.indices()).unwrap().holds);
    }

    #[test]
    fn consistent_on_random_sets() {
        for seed in 0..20 {
            let p = random_set(80, 2, 3, seed);
            let s = run(&p);
            assert!(is_consistent(&p, s.indices()).unwrap().holds, "seed {seed}");
            let mut sorted = s.indices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), s.len());
        }
    }

    #[test]
    fn circle_is_small_and_deterministic() {
        let p = gen_circle(2000, 3).unwrap();
        let a = run(&p);
        assert_eq!(a, run(&p));
        assert!(a.len() < 200);
        assert_eq!(p.label(a.indices[0]), Label(0));
    }
}
