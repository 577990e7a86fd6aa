#![allow(dead_code)]

use std::path::PathBuf;

use nnc::dataset::{load_csv_path, ConflictPolicy, CsvOptions};
use nnc::{Label, TrainingSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform points in the unit cube. The first `classes` points take labels
/// `0..classes` so every class is populated; the rest are random.
pub fn random_set(n: usize, dim: usize, classes: u32, seed: u64) -> TrainingSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * dim).map(|_| rng.gen::<f64>()).collect();
    let labels = (0..n)
        .map(|i| Label(if (i as u32) < classes { i as u32 } else { rng.gen_range(0..classes) }))
        .collect();
    let names = (0..classes).map(|c| format!("c{c}")).collect();
    TrainingSet::new(dim, coords, labels, names).unwrap()
}

/// A random set whose size, dimension and class count are themselves drawn
/// from the given ranges.
pub fn suite_set(seed: u64, sizes: (usize, usize), dims: &[usize], classes: (u32, u32)) -> TrainingSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = rng.gen_range(sizes.0..=sizes.1);
    let dim = dims[rng.gen_range(0..dims.len())];
    let c = rng.gen_range(classes.0..=classes.1);
    random_set(n, dim, c, seed)
}

pub fn banana_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/banana.csv")
}

/// The Banana data with its single cross-label duplicate dropped.
pub fn banana() -> TrainingSet {
    let options = CsvOptions {
        conflicts: ConflictPolicy::KeepFirst,
        ..CsvOptions::default()
    };
    load_csv_path(banana_path(), &options).unwrap()
}
