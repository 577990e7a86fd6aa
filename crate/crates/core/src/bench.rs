//! Scaling harness. Complexity claims are checked on the deterministic
//! comparison counters; wall time is reported alongside.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::condense::{condense, Algorithm};
use crate::dataset::gen_circle;
use crate::error::{Error, Result};
use crate::neighbors::build_neighbor_table;

pub const DEFAULT_RUNS: usize = 5;

/// Size-parameterized dataset family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SizedGenerator {
    Circle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    /// Median wall-clock seconds of the condenser call.
    pub elapsed: f64,
    pub comparisons: u64,
    pub subset_size: usize,
}

/// One record per size. The neighbor table is built once per size and is
/// not part of the timed region.
pub fn run_scaling(
    algorithm: Algorithm,
    generator: SizedGenerator,
    sizes: &[usize],
    seed: u64,
    runs: usize,
) -> Result<Vec<BenchRecord>> {
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("sizes must be ascending"));
    }
    let runs = runs.max(1);
    let mut records = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let set = match generator {
            SizedGenerator::Circle => gen_circle(n, seed)?,
        };
        let table = build_neighbor_table(&set)?;
        let mut times = Vec::with_capacity(runs);
        let mut last = None;
        for _ in 0..runs {
            let start = Instant::now();
            let subset = condense(algorithm, &set, &table)?;
            times.push(start.elapsed().as_secs_f64());
            if let Some(prev) = &last {
                debug_assert_eq!(prev, &subset);
            }
            last = Some(subset);
        }
        times.sort_by(f64::total_cmp);
        let subset = last.expect("at least one run");
        records.push(BenchRecord {
            algorithm,
            n,
            elapsed: times[times.len() / 2].max(f64::MIN_POSITIVE),
            comparisons: subset.stats.comparisons,
            subset_size: subset.len(),
        });
    }
    Ok(records)
}

/// Least-squares slope of `log(comparisons)` against `log(n)`.
pub fn loglog_slope(records: &[BenchRecord]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.n > 0 && r.comparisons > 0)
        .map(|r| ((r.n as f64).ln(), (r.comparisons as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `algorithm,n,elapsed,comparisons,subsetSize`
pub fn write_csv<W: Write>(records: &[BenchRecord], sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["algorithm", "n", "elapsed", "comparisons", "subsetSize"])?;
    for r in records {
        w.write_record(&[
            r.algorithm.name().to_string(),
            r.n.to_string(),
            format!("{:.9}", r.elapsed),
            r.comparisons.to_string(),
            r.subset_size.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
