//! Condensation algorithms. Each is a deterministic function of a training
//! set and its neighbor table.
//!
//! The selective family (MSS, RSS, VSS) scans points by increasing
//! nearest-enemy distance, ties by index. FCNN grows a consistent subset from
//! per-class centroids. NET is a greedy packing baseline.

mod fcnn;
mod mss;
mod net;
mod rss;
mod subset;
mod vss;

pub use fcnn::{class_centroids, fcnn};
pub use mss::mss;
pub use net::net;
pub use rss::rss;
pub use subset::{Algorithm, Representative, Stats, Subset};
pub use vss::{tangent_radius, vss};

use crate::dataset::TrainingSet;
use crate::error::{Error, Result};
use crate::neighbors::NeighborTable;

pub fn condense(algorithm: Algorithm, set: &TrainingSet, table: &NeighborTable) -> Result<Subset> {
    match algorithm {
        Algorithm::Mss => mss(set, table),
        Algorithm::Rss => rss(set, table),
        Algorithm::Vss => vss(set, table),
        Algorithm::Fcnn => fcnn(set, table),
        Algorithm::Net => net(set, table),
    }
}

fn validate(set: &TrainingSet, table: &NeighborTable) -> Result<()> {
    set.require_multiclass()?;
    if table.len() != set.len() {
        return Err(Error::invalid(format!(
            "neighbor table covers {} points, training set has {}",
            table.len(),
            set.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod testutil {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::dataset::{Label, TrainingSet};

    pub fn two_point() -> TrainingSet {
        TrainingSet::new(
            2,
            vec![0.0, 0.0, 1.0, 0.0],
            vec![Label(0), Label(1)],
            vec!["red".into(), "blue".into()],
        )
        .unwrap()
    }

    pub fn line(points: &[(f64, u32)]) -> TrainingSet {
        TrainingSet::new(
            1,
            points.iter().map(|p| p.0).collect(),
            points.iter().map(|p| Label(p.1)).collect(),
            vec!["red".into(), "blue".into()],
        )
        .unwrap()
    }

    /// Uniform points in the unit cube with random labels; every class populated.
    pub fn random_set(n: usize, dim: usize, classes: u32, seed: u64) -> TrainingSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n * dim).map(|_| rng.gen::<f64>()).collect();
        let labels = (0..n)
            .map(|i| {
                if (i as u32) < classes {
                    Label(i as u32)
                } else {
                    Label(rng.gen_range(0..classes))
                }
            })
            .collect();
        let names = (0..classes).map(|c| format!("c{c}")).collect();
        TrainingSet::new(dim, coords, labels, names).unwrap()
    }
}
