use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::dataset::{find_duplicates, Label, TrainingSet};
use crate::error::{Error, Result};

/// What to do with points that share coordinates but not labels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConflictPolicy {
    /// Fail with a parse error naming the later row.
    #[default]
    Reject,
    /// Keep the first row at each location and drop every later row whose
    /// label disagrees with it.
    KeepFirst,
}

#[derive(Clone, Debug)]
pub struct CsvOptions {
    pub delimiter: u8,
    /// `None` auto-detects: the first row is a header when none of its
    /// coordinate fields parse as numbers.
    pub has_header: Option<bool>,
    pub conflicts: ConflictPolicy,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            delimiter: b',',
            has_header: None,
            conflicts: ConflictPolicy::Reject,
        }
    }
}

/// Reads `d` numeric columns followed by one label column per row.
///
/// Labels are interned in order of first appearance. Row numbers in errors
/// are 1-based positions in the file, header included.
pub fn load_csv<R: Read>(source: R, options: &CsvOptions) -> Result<TrainingSet> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let mut dim: Option<usize> = None;
    let mut coords = Vec::new();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    let mut interned: HashMap<String, Label> = HashMap::new();

    for (pos, record) in reader.records().enumerate() {
        let row = pos + 1;
        let record = record.map_err(|e| Error::Parse {
            row,
            message: e.to_string(),
        })?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if record.len() < 2 {
            return Err(Error::Parse {
                row,
                message: "expected at least one coordinate and a label".into(),
            });
        }
        let d = record.len() - 1;
        if dim.is_none() {
            let header = match options.has_header {
                Some(h) => h,
                None => record.iter().take(d).all(|f| f.parse::<f64>().is_err()),
            };
            dim = Some(d);
            if header {
                continue;
            }
        }
        let expected = dim.unwrap_or(d);
        if d != expected {
            return Err(Error::Parse {
                row,
                message: format!("expected {} fields, found {}", expected + 1, record.len()),
            });
        }
        for field in record.iter().take(d) {
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                row,
                message: format!("non-numeric coordinate {field:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row,
                    message: format!("non-finite coordinate {field:?}"),
                });
            }
            coords.push(value);
        }
        let name = &record[d];
        let label = match interned.get(name) {
            Some(&l) => l,
            None => {
                let l = Label(class_names.len() as u32);
                class_names.push(name.to_string());
                interned.insert(name.to_string(), l);
                l
            }
        };
        labels.push(label);
        rows.push(row);
    }

    if labels.len() < 2 {
        return Err(Error::Parse {
            row: rows.last().copied().unwrap_or(0),
            message: format!("need at least 2 data rows, found {}", labels.len()),
        });
    }
    let dim = dim.unwrap_or(1);

    let dups = find_duplicates(dim, &coords);
    let mut drop = vec![false; labels.len()];
    for group in &dups.groups {
        let first = labels[group[0]];
        for &i in &group[1..] {
            if labels[i] != first {
                match options.conflicts {
                    ConflictPolicy::Reject => {
                        return Err(Error::Parse {
                            row: rows[i],
                            message: format!(
                                "same coordinates as row {} with a different label",
                                rows[group[0]]
                            ),
                        })
                    }
                    ConflictPolicy::KeepFirst => drop[i] = true,
                }
            }
        }
    }
    if drop.iter().any(|&d| d) {
        let mut kept_coords = Vec::with_capacity(coords.len());
        let mut kept_labels = Vec::with_capacity(labels.len());
        for (i, &dropped) in drop.iter().enumerate() {
            if !dropped {
                kept_coords.extend_from_slice(&coords[i * dim..(i + 1) * dim]);
                kept_labels.push(labels[i]);
            }
        }
        coords = kept_coords;
        labels = kept_labels;
    }

    TrainingSet::new(dim, coords, labels, class_names)
}

pub fn load_csv_path(path: impl AsRef<Path>, options: &CsvOptions) -> Result<TrainingSet> {
    load_csv(File::open(path)?, options)
}

/// Writes a header row `x0,..,x{d-1},label` followed by one row per point.
///
/// Coordinates use the shortest representation that parses back to the same
/// `f64`, so `load_csv` recovers the set exactly.
pub fn save_csv<W: Write>(set: &TrainingSet, sink: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    let mut header: Vec<String> = (0..set.dim()).map(|i| format!("x{i}")).collect();
    header.push("label".into());
    writer.write_record(&header)?;
    for p in set.points() {
        let mut row: Vec<String> = p.coords.iter().map(|c| c.to_string()).collect();
        row.push(set.class_name(p.label).to_string());
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn save_csv_path(set: &TrainingSet, path: impl AsRef<Path>) -> Result<()> {
    save_csv(set, File::create(path)?)
}
