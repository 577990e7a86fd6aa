//! Deterministic synthetic datasets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dataset::{Label, TrainingSet};
use crate::error::{Error, Result};

const RED: Label = Label(0);
const BLUE: Label = Label(1);

fn red_blue() -> Vec<String> {
    vec!["red".to_string(), "blue".to_string()]
}

pub const CIRCLE_CENTER: [f64; 2] = [0.5, 0.5];
pub const CIRCLE_RADIUS: f64 = 0.25;

/// `n` points uniform in the unit square; red inside the disk of radius
/// 0.25 around (0.5, 0.5), blue outside.
pub fn gen_circle(n: usize, seed: u64) -> Result<TrainingSet> {
    if n < 2 {
        return Err(Error::invalid("circle dataset needs n >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let x: f64 = rng.gen();
        let y: f64 = rng.gen();
        let dx = x - CIRCLE_CENTER[0];
        let dy = y - CIRCLE_CENTER[1];
        coords.extend_from_slice(&[x, y]);
        labels.push(if dx * dx + dy * dy < CIRCLE_RADIUS * CIRCLE_RADIUS {
            RED
        } else {
            BLUE
        });
    }
    TrainingSet::new(2, coords, labels, red_blue())
}

/// Number of blue points in the collinear MSS construction, `floor(3/eps)`.
pub fn mss_adversarial_count(eps: f64) -> usize {
    // 3/0.1 is 29.999.. in binary floating point
    (3.0 / eps + 1e-9).floor() as usize
}

/// Collinear construction on which MSS selects about `1/(2 eps)` points.
///
/// Red `r1` at the origin (index 0) and `r2` at distance 1 along the first
/// axis (index 1); blue `b_i` at `i * eps / 4` for `i = 1..=floor(3/eps)`
/// (index `i + 1`). Higher dimensions are zero padded.
pub fn gen_mss_adversarial(eps: f64, dim: usize) -> Result<TrainingSet> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid(format!("eps must lie in (0, 1), got {eps}")));
    }
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let m = mss_adversarial_count(eps);
    let n = m + 2;
    let mut coords = vec![0.0; n * dim];
    let mut labels = Vec::with_capacity(n);
    labels.push(RED);
    coords[dim] = 1.0;
    labels.push(RED);
    for i in 1..=m {
        coords[(i + 1) * dim] = i as f64 * eps / 4.0;
        labels.push(BLUE);
    }
    TrainingSet::new(dim, coords, labels, red_blue())
}

/// `kappa / 2` well separated copies of a red center surrounded by `m` blue
/// points on its unit sphere.
///
/// In the plane the blue points sit at equally spaced angles starting at
/// angle 0; in higher dimensions they are drawn uniformly from the sphere
/// with a generator seeded by the arrangement number. Centers lie at
/// `j * separation` along the first axis. Each arrangement contributes its
/// center first, then its `m` sphere points.
pub fn gen_sphere_lowerbound(
    kappa: usize,
    m: usize,
    dim: usize,
    separation: f64,
) -> Result<TrainingSet> {
    if kappa < 2 || !kappa.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "kappa must be even and at least 2, got {kappa}"
        )));
    }
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if m < dim + 1 {
        return Err(Error::invalid(format!(
            "need at least d + 1 = {} sphere points, got {m}",
            dim + 1
        )));
    }
    if !(separation > 4.0) || !separation.is_finite() {
        return Err(Error::invalid(format!(
            "separation must be finite and > 4, got {separation}"
        )));
    }
    if dim == 1 && m > 2 {
        return Err(Error::invalid("the unit sphere in R^1 has only 2 points"));
    }

    let arrangements = kappa / 2;
    let mut coords = Vec::with_capacity(arrangements * (m + 1) * dim);
    let mut labels = Vec::with_capacity(arrangements * (m + 1));
    for j in 0..arrangements {
        let mut center = vec![0.0; dim];
        center[0] = j as f64 * separation;
        coords.extend_from_slice(&center);
        labels.push(RED);

        let mut rng = ChaCha8Rng::seed_from_u64(j as u64);
        for s in 0..m {
            let mut offset = vec![0.0; dim];
            match dim {
                1 => offset[0] = if s == 0 { 1.0 } else { -1.0 },
                2 => {
                    let theta = std::f64::consts::TAU * s as f64 / m as f64;
                    offset[0] = theta.cos();
                    offset[1] = theta.sin();
                }
                _ => loop {
                    for o in offset.iter_mut() {
                        *o = rng.sample(StandardNormal);
                    }
                    let norm = offset.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-12 {
                        offset.iter_mut().for_each(|x| *x /= norm);
                        break;
                    }
                },
            }
            coords.extend(center.iter().zip(&offset).map(|(c, o)| c + o));
            labels.push(BLUE);
        }
    }
    TrainingSet::new(dim, coords, labels, red_blue())
}

/// Deterministic train/test split. Returns `(train, test)` index lists, each
/// ascending; `test` holds `round(fraction * n)` points.
pub fn split_holdout(n: usize, fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(0.0..1.0).contains(&fraction) {
        return Err(Error::invalid(format!(
            "holdout fraction must lie in [0, 1), got {fraction}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_test = (fraction * n as f64).round() as usize;
    let mut test = order[..n_test].to_vec();
    let mut train = order[n_test..].to_vec();
    test.sort_unstable();
    train.sort_unstable();
    Ok((train, test))
}
