//! Angular charging audits.
//!
//! Two RSS points sharing a nearest enemy `p` see each other from `p` at an
//! angle of at least pi/3; the same holds for FCNN representatives of one
//! point. In the plane this caps each group at 6 members.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::condense::Representative;
use crate::dataset::TrainingSet;
use crate::error::{Error, Result};
use crate::neighbors::NeighborTable;
use crate::verify::{Property, VerificationReport, Witness};

pub const MIN_ANGLE: f64 = PI / 3.0 - 1e-9;
const PLANAR_GROUP_LIMIT: usize = 6;

/// Angle `a p b` at vertex `p`, via the clamped normalized dot product.
pub fn angle_at(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for ((x, y), z) in p.iter().zip(a).zip(b) {
        let u = y - x;
        let v = z - x;
        dot += u * v;
        na += u * u;
        nb += v * v;
    }
    (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0).acos()
}

fn audit_groups(
    set: &TrainingSet,
    property: Property,
    groups: &BTreeMap<usize, Vec<usize>>,
) -> VerificationReport {
    let mut min_angle = f64::INFINITY;
    let mut witness = None;
    for (&center, members) in groups {
        let c = set.coords(center);
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                let angle = angle_at(c, set.coords(a), set.coords(b));
                min_angle = min_angle.min(angle);
                if angle < MIN_ANGLE && witness.is_none() {
                    witness = Some(Witness {
                        indices: vec![center, a, b],
                        distances: vec![set.dist(center, a), set.dist(center, b), set.dist(a, b)],
                        note: format!("angle {angle} at {center} between {a} and {b} is below pi/3"),
                    });
                }
            }
        }
    }
    let max_group = groups.values().map(Vec::len).max().unwrap_or(0);
    if set.dim() == 2 && max_group > PLANAR_GROUP_LIMIT && witness.is_none() {
        let (&center, members) = groups
            .iter()
            .find(|(_, m)| m.len() == max_group)
            .expect("max group exists");
        let mut indices = vec![center];
        indices.extend(members);
        witness = Some(Witness {
            indices,
            distances: Vec::new(),
            note: format!("group of {center} has {max_group} members, more than {PLANAR_GROUP_LIMIT}"),
        });
    }

    let mut report = VerificationReport::new(property, witness)
        .metric("groups", groups.len() as f64)
        .metric("maxGroupSize", max_group as f64)
        .metric("minPairwiseAngle", if min_angle.is_finite() { min_angle } else { PI });
    if set.dim() == 2 {
        report = report.metric(
            "planarGroupBound",
            if max_group <= PLANAR_GROUP_LIMIT { 1.0 } else { 0.0 },
        );
    }
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for members in groups.values() {
        *histogram.entry(members.len()).or_default() += 1;
    }
    for (size, count) in histogram {
        report = report.metric(&format!("groupsOfSize{size}"), count as f64);
    }
    report
}

/// Groups `subset` (an RSS output) by nearest enemy and checks the pairwise
/// angle at each shared enemy.
pub fn audit_ne_charging(
    set: &TrainingSet,
    subset: &[usize],
    table: &NeighborTable,
) -> Result<VerificationReport> {
    if table.len() != set.len() {
        return Err(Error::invalid("neighbor table does not match the training set"));
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in subset {
        groups.entry(table.ne_index(i)).or_default().push(i);
    }
    Ok(audit_groups(set, Property::NeCharging, &groups))
}

/// Groups FCNN additions by the point they represent and checks the
/// pairwise angle at that point. Needs the trace recorded by `fcnn`.
pub fn audit_fcnn_representatives(
    set: &TrainingSet,
    trace: Option<&[Representative]>,
) -> Result<VerificationReport> {
    let trace = trace.ok_or_else(|| Error::invalid("FCNN representative trace is missing"))?;
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in trace {
        if r.point >= set.len() {
            return Err(Error::invalid(format!("trace index {} out of range", r.point)));
        }
        if let Some(owner) = r.represents {
            groups.entry(owner).or_default().push(r.point);
        }
    }
    Ok(audit_groups(set, Property::FcnnRepresentatives, &groups))
}
