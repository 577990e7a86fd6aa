use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::TrainingSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Algorithm {
    Mss,
    Rss,
    Vss,
    Fcnn,
    Net,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Fcnn,
        Algorithm::Mss,
        Algorithm::Rss,
        Algorithm::Vss,
        Algorithm::Net,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mss => "MSS",
            Algorithm::Rss => "RSS",
            Algorithm::Vss => "VSS",
            Algorithm::Fcnn => "FCNN",
            Algorithm::Net => "NET",
        }
    }

    /// MSS, RSS and VSS guarantee selectivity; FCNN and NET only consistency.
    pub fn is_selective(self) -> bool {
        matches!(self, Algorithm::Mss | Algorithm::Rss | Algorithm::Vss)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mss" => Ok(Algorithm::Mss),
            "rss" => Ok(Algorithm::Rss),
            "vss" => Ok(Algorithm::Vss),
            "fcnn" => Ok(Algorithm::Fcnn),
            "net" => Ok(Algorithm::Net),
            other => Err(Error::invalid(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// Outer iterations; single-pass algorithms report 1.
    pub iterations: usize,
    /// Distance evaluations performed by the condenser itself.
    pub comparisons: u64,
}

/// One FCNN selection: `point` was added in `iteration` as the
/// representative of `represents`. Initial centroids have no owner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Representative {
    pub point: usize,
    pub represents: Option<usize>,
    pub iteration: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Subset {
    pub algorithm: Algorithm,
    pub source_size: usize,
    pub dataset_hash: String,
    /// Selected indices in selection order.
    pub indices: Vec<usize>,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Representative>>,
}

impl Subset {
    pub(crate) fn new(algorithm: Algorithm, set: &TrainingSet, indices: Vec<usize>, stats: Stats) -> Self {
        Subset {
            algorithm,
            source_size: set.len(),
            dataset_hash: set.content_hash(),
            indices,
            stats,
            trace: None,
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Fails unless this subset was computed from `set`.
    pub fn check_provenance(&self, set: &TrainingSet) -> Result<()> {
        let found = set.content_hash();
        if found != self.dataset_hash || self.source_size != set.len() {
            return Err(Error::ProvenanceMismatch {
                expected: self.dataset_hash.clone(),
                found,
            });
        }
        Ok(())
    }

    pub fn to_json<W: Write>(&self, sink: W) -> Result<()> {
        serde_json::to_writer_pretty(sink, self)?;
        Ok(())
    }

    pub fn from_json<R: Read>(source: R) -> Result<Self> {
        let subset: Subset = serde_json::from_reader(source)?;
        if let Some(&bad) = subset.indices.iter().find(|&&i| i >= subset.source_size) {
            return Err(Error::invalid(format!(
                "subset index {bad} out of range for source size {}",
                subset.source_size
            )));
        }
        Ok(subset)
    }

    pub fn from_json_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(std::fs::File::open(path)?)
    }

    /// One row per selected point: `index,x0,..,x{d-1},label`.
    pub fn write_csv<W: Write>(&self, set: &TrainingSet, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        let mut header = vec!["index".to_string()];
        header.extend((0..set.dim()).map(|i| format!("x{i}")));
        header.push("label".into());
        w.write_record(&header)?;
        for &i in &self.indices {
            let mut row = vec![i.to_string()];
            row.extend(set.coords(i).iter().map(|c| c.to_string()));
            row.push(set.class_name(set.label(i)).to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}
