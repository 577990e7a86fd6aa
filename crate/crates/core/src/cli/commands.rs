use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::bench::{loglog_slope, run_scaling, write_csv, SizedGenerator};
use crate::cli::plot::{plot_rows, render_svg};
use crate::cli::{
    require_file, require_parent_dir, AlgoChoice, CliError, Command, DatasetArgs, EXIT_CHECK_FAILED,
    EXIT_IO, EXIT_OK,
};
use crate::condense::{condense, Algorithm, Subset};
use crate::dataset::{load_csv_path, save_csv_path, split_holdout, CsvOptions, TrainingSet};
use crate::error::Error;
use crate::neighbors::{build_neighbor_table_with, classify_nn, Strategy};
use crate::verify::{
    audit_fcnn_representatives, audit_ne_charging, count_ne_points, is_consistent, is_selective,
    VerificationReport,
};

type CmdResult = Result<i32, CliError>;

pub(super) fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Generate { data, output } => generate(&data, &output, out),
        Command::Condense {
            data,
            algo,
            out_dir,
            prefix,
            kdtree,
        } => cmd_condense(&data, algo, &out_dir, &prefix, kdtree, out),
        Command::Verify {
            data,
            subset,
            report,
        } => cmd_verify(&data, &subset, report.as_deref(), out),
        Command::Evaluate {
            data,
            subset,
            queries,
            report,
        } => cmd_evaluate(&data, &subset, queries.as_deref(), report.as_deref(), out),
        Command::Split {
            data,
            holdout,
            split_seed,
            train_out,
            test_out,
        } => cmd_split(&data, holdout, split_seed, &train_out, &test_out, out),
        Command::Bench {
            algo,
            sizes,
            seed,
            runs,
            output,
        } => cmd_bench(algo, &sizes, seed, runs, output.as_deref(), out),
        Command::Plot {
            data,
            subset,
            csv,
            svg,
        } => cmd_plot(&data, subset.as_deref(), csv.as_deref(), svg.as_deref(), out),
        Command::Neighbors { data, output } => cmd_neighbors(&data, output.as_deref(), out),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn warn_duplicates(set: &TrainingSet) {
    let dups = set.duplicates();
    if !dups.is_empty() {
        eprintln!(
            "warning: {} same-label duplicate location(s), {} redundant point(s)",
            dups.groups.len(),
            dups.redundant_points()
        );
    }
}

fn generate(data: &DatasetArgs, output: &Path, out: &mut dyn Write) -> CmdResult {
    require_parent_dir(output)?;
    let set = data.load()?;
    save_csv_path(&set, output)?;
    writeln!(
        out,
        "wrote {} points (d = {}, {} classes) to {}",
        set.len(),
        set.dim(),
        set.num_classes(),
        output.display()
    )?;
    Ok(EXIT_OK)
}

fn artifact_path(dir: &Path, prefix: &str, algo: Algorithm, ext: &str) -> PathBuf {
    dir.join(format!("{prefix}.{}.{ext}", algo.name().to_ascii_lowercase()))
}

fn cmd_condense(
    data: &DatasetArgs,
    algo: AlgoChoice,
    out_dir: &Path,
    prefix: &str,
    kdtree: bool,
    out: &mut dyn Write,
) -> CmdResult {
    data.validate_paths()?;
    if !out_dir.is_dir() {
        return Err(CliError::new(
            EXIT_IO,
            format!("output directory {} does not exist", out_dir.display()),
        ));
    }
    let set = data.load()?;
    warn_duplicates(&set);
    let strategy = if kdtree { Strategy::KdTree } else { Strategy::BruteForce };
    let table = build_neighbor_table_with(&set, strategy)?;

    let subsets: Vec<Subset> = algo
        .algorithms()
        .par_iter()
        .map(|&a| condense(a, &set, &table))
        .collect::<Result<_, Error>>()?;

    for subset in &subsets {
        let json = artifact_path(out_dir, prefix, subset.algorithm, "json");
        subset.to_json(create(&json)?)?;
        let csv = artifact_path(out_dir, prefix, subset.algorithm, "csv");
        subset.write_csv(&set, create(&csv)?)?;
    }

    writeln!(
        out,
        "n = {}, d = {}, classes = {}, kappa = {}",
        set.len(),
        set.dim(),
        set.populated_classes(),
        count_ne_points(&table)
    )?;
    writeln!(out, "{:<10}{:>10}{:>10}", "algorithm", "size", "% of n")?;
    for subset in &subsets {
        writeln!(
            out,
            "{:<10}{:>10}{:>10.2}",
            subset.algorithm.name(),
            subset.len(),
            100.0 * subset.len() as f64 / set.len() as f64
        )?;
    }
    Ok(EXIT_OK)
}

fn load_subset(path: &Path, set: &TrainingSet) -> Result<Subset, CliError> {
    require_file(path)?;
    let subset = Subset::from_json_path(path)?;
    subset.check_provenance(set)?;
    Ok(subset)
}

fn summary(r: &VerificationReport) -> String {
    let verdict = if r.holds { "PASS" } else { "FAIL" };
    match &r.witness {
        Some(w) => format!("{:?}: {verdict} ({})", r.property, w.note),
        None => format!("{:?}: {verdict}", r.property),
    }
}

fn cmd_verify(data: &DatasetArgs, subset: &Path, report: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    data.validate_paths()?;
    require_file(subset)?;
    if let Some(p) = report {
        require_parent_dir(p)?;
    }
    let set = data.load()?;
    let subset = load_subset(subset, &set)?;
    let table = build_neighbor_table_with(&set, Strategy::BruteForce)?;

    let consistent = is_consistent(&set, subset.indices())?;
    let selective = is_selective(&set, subset.indices(), &table)?;
    let mut required = vec![consistent.holds];
    if subset.algorithm.is_selective() {
        required.push(selective.holds);
    }
    let mut reports = vec![consistent, selective];
    match subset.algorithm {
        Algorithm::Rss => reports.push(audit_ne_charging(&set, subset.indices(), &table)?),
        Algorithm::Fcnn => reports.push(audit_fcnn_representatives(&set, subset.trace.as_deref())?),
        _ => {}
    }
    required.extend(reports[2..].iter().map(|r| r.holds));

    writeln!(out, "{} subset of {} points", subset.algorithm, subset.len())?;
    for r in &reports {
        writeln!(out, "{}", summary(r))?;
    }
    if let Some(p) = report {
        serde_json::to_writer_pretty(create(p)?, &reports).map_err(Error::from)?;
    }
    Ok(if required.iter().all(|&h| h) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct EvaluationReport {
    algorithm: Algorithm,
    queries: usize,
    subset_size: usize,
    training_size: usize,
    subset_accuracy: f64,
    full_accuracy: f64,
    /// Queries whose class name never occurs in the training set.
    unknown_labels: usize,
}

fn cmd_evaluate(
    data: &DatasetArgs,
    subset: &Path,
    queries: Option<&Path>,
    report: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    data.validate_paths()?;
    require_file(subset)?;
    if let Some(q) = queries {
        require_file(q)?;
    }
    if let Some(p) = report {
        require_parent_dir(p)?;
    }
    let set = data.load()?;
    let subset = load_subset(subset, &set)?;
    let query_set = match queries {
        Some(q) => load_csv_path(q, &CsvOptions::default())?,
        None => set.clone(),
    };
    if query_set.dim() != set.dim() {
        return Err(Error::invalid(format!(
            "queries have dimension {}, training set has {}",
            query_set.dim(),
            set.dim()
        ))
        .into());
    }
    let by_name: HashMap<&str, usize> = set
        .class_names()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let full: Vec<usize> = (0..set.len()).collect();

    let mut unknown = 0;
    let mut subset_hits = 0;
    let mut full_hits = 0;
    for q in query_set.points() {
        let Some(&truth) = by_name.get(query_set.class_name(q.label)) else {
            unknown += 1;
            continue;
        };
        if classify_nn(q.coords, subset.indices(), &set)?.id() == truth {
            subset_hits += 1;
        }
        if classify_nn(q.coords, &full, &set)?.id() == truth {
            full_hits += 1;
        }
    }
    let total = query_set.len().max(1) as f64;
    let result = EvaluationReport {
        algorithm: subset.algorithm,
        queries: query_set.len(),
        subset_size: subset.len(),
        training_size: set.len(),
        subset_accuracy: subset_hits as f64 / total,
        full_accuracy: full_hits as f64 / total,
        unknown_labels: unknown,
    };
    serde_json::to_writer_pretty(&mut *out, &result).map_err(Error::from)?;
    writeln!(out)?;
    if let Some(p) = report {
        serde_json::to_writer_pretty(create(p)?, &result).map_err(Error::from)?;
    }
    Ok(EXIT_OK)
}

fn cmd_split(
    data: &DatasetArgs,
    holdout: f64,
    seed: u64,
    train_out: &Path,
    test_out: &Path,
    out: &mut dyn Write,
) -> CmdResult {
    data.validate_paths()?;
    require_parent_dir(train_out)?;
    require_parent_dir(test_out)?;
    let set = data.load()?;
    let (train, test) = split_holdout(set.len(), holdout, seed)?;
    save_csv_path(&set.select(&train)?, train_out)?;
    save_csv_path(&set.select(&test)?, test_out)?;
    writeln!(out, "train {} points, held out {}", train.len(), test.len())?;
    Ok(EXIT_OK)
}

fn cmd_bench(
    algo: AlgoChoice,
    sizes: &[usize],
    seed: u64,
    runs: usize,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    if let Some(p) = output {
        require_parent_dir(p)?;
    }
    let mut records = Vec::new();
    for a in algo.algorithms() {
        let recs = run_scaling(a, SizedGenerator::Circle, sizes, seed, runs)?;
        if let Some(slope) = loglog_slope(&recs) {
            eprintln!("{a}: log-log comparison slope {slope:.3}");
        }
        records.extend(recs);
    }
    match output {
        Some(p) => write_csv(&records, create(p)?)?,
        None => write_csv(&records, &mut *out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_plot(
    data: &DatasetArgs,
    subset: Option<&Path>,
    csv_path: Option<&Path>,
    svg_path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    data.validate_paths()?;
    if let Some(s) = subset {
        require_file(s)?;
    }
    for p in [csv_path, svg_path].into_iter().flatten() {
        require_parent_dir(p)?;
    }
    let set = data.load()?;
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            found: set.dim(),
            expected: 2,
            context: "plotting",
        }
        .into());
    }
    let subset = subset.map(|s| load_subset(s, &set)).transpose()?;
    let selected = subset.as_ref().map(|s| s.indices()).unwrap_or(&[]);

    match csv_path {
        Some(p) => plot_rows(&set, selected, create(p)?)?,
        None if svg_path.is_none() => plot_rows(&set, selected, &mut *out)?,
        None => {}
    }
    if let Some(p) = svg_path {
        let title = subset.as_ref().map(|s| {
            format!("{} ({} of {} pts)", s.algorithm, s.len(), set.len())
        });
        let mut w = create(p)?;
        w.write_all(render_svg(&set, selected, title.as_deref()).as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn cmd_neighbors(data: &DatasetArgs, output: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    data.validate_paths()?;
    if let Some(p) = output {
        require_parent_dir(p)?;
    }
    let set = data.load()?;
    let table = build_neighbor_table_with(&set, Strategy::KdTree)?;
    match output {
        Some(p) => table.write_csv(create(p)?)?,
        None => table.write_csv(&mut *out)?,
    }
    Ok(EXIT_OK)
}
