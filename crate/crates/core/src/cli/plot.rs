use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;

use crate::dataset::TrainingSet;
use crate::error::Result;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Rows `x,y,label,selected` for a 2-D set.
pub(super) fn plot_rows<W: Write>(set: &TrainingSet, selected: &[usize], sink: W) -> Result<()> {
    let chosen: BTreeSet<usize> = selected.iter().copied().collect();
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["x", "y", "label", "selected"])?;
    for p in set.points() {
        w.write_record([
            p.coords[0].to_string(),
            p.coords[1].to_string(),
            set.class_name(p.label).to_string(),
            chosen.contains(&p.index).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Scatter plot of a 2-D set. Selected points are drawn large and opaque on
/// top of the faded remainder.
pub fn render_svg(set: &TrainingSet, selected: &[usize], title: Option<&str>) -> String {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in set.points() {
        for a in 0..2 {
            lo[a] = lo[a].min(p.coords[a]);
            hi[a] = hi[a].max(p.coords[a]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let project = |c: &[f64]| {
        (
            MARGIN + (c[0] - lo[0]) * scale,
            SIZE - MARGIN - (c[1] - lo[1]) * scale,
        )
    };
    let color = |i: usize| PALETTE[set.label(i).id() % PALETTE.len()];

    let chosen: BTreeSet<usize> = selected.iter().copied().collect();
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(t) = title {
        let _ = writeln!(
            svg,
            r#"<text x="{MARGIN}" y="16" font-family="sans-serif" font-size="13">{}</text>"#,
            escape(t)
        );
    }
    let faded = if chosen.is_empty() { 0.8 } else { 0.25 };
    for i in (0..set.len()).filter(|i| !chosen.contains(i)) {
        let (x, y) = project(set.coords(i));
        let _ = writeln!(
            svg,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.6" fill="{}" fill-opacity="{faded}"/>"#,
            color(i)
        );
    }
    for &i in &chosen {
        let (x, y) = project(set.coords(i));
        let _ = writeln!(
            svg,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{}" stroke="black" stroke-width="0.6"/>"#,
            color(i)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
