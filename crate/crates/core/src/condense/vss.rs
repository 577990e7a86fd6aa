use crate::condense::{validate, Algorithm, Stats, Subset};
use crate::dataset::{euclidean, TrainingSet};
use crate::error::Result;
use crate::neighbors::NeighborTable;

/// Radius of the ball centered on the segment from `enemy` to `point` that
/// passes through both `enemy` and `other`: `(v.v) / (2 u.v)` with `u` the
/// unit vector from `enemy` to `point` and `v = other - enemy`.
///
/// `None` when `u.v <= 0`, where no such ball exists.
pub fn tangent_radius(point: &[f64], enemy: &[f64], other: &[f64]) -> Option<f64> {
    let axis_len = euclidean(point, enemy);
    let mut vv = 0.0;
    let mut uv = 0.0;
    for ((p, e), o) in point.iter().zip(enemy).zip(other) {
        let v = o - e;
        vv += v * v;
        uv += (p - e) * v;
    }
    let uv = uv / axis_len;
    (uv > 0.0).then(|| vv / (2.0 * uv))
}

/// Voronoi Selective Subset.
///
/// Same scan and trigger as RSS, except that an uncovered point `p` adds the
/// point `p*` strictly inside its NE ball that minimizes the radius of the
/// ball through `p*` and `ne(p)` centered on the segment `p ne(p)`. That ball
/// is empty, so `p*` is a border point.
pub fn vss(set: &TrainingSet, table: &NeighborTable) -> Result<Subset> {
    validate(set, table)?;
    let mut selected: Vec<usize> = Vec::new();
    let mut is_selected = vec![false; set.len()];
    let mut comparisons = 0u64;

    for i in table.ne_order() {
        let radius = table.ne_dist(i);
        let here = set.coords(i);
        let mut covered = false;
        for &s in &selected {
            comparisons += 1;
            if euclidean(here, set.coords(s)) < radius {
                covered = true;
                break;
            }
        }
        if covered {
            continue;
        }

        let enemy = set.coords(table.ne_index(i));
        // p itself always qualifies with radius d_ne / 2
        let mut best = (tangent_radius(here, enemy, here).unwrap_or(radius / 2.0), i);
        for j in 0..set.len() {
            if j == i {
                continue;
            }
            comparisons += 1;
            let other = set.coords(j);
            if euclidean(here, other) >= radius {
                continue;
            }
            if let Some(r) = tangent_radius(here, enemy, other) {
                if r < best.0 || (r == best.0 && j < best.1) {
                    best = (r, j);
                }
            }
        }
        let chosen = best.1;
        if !is_selected[chosen] {
            is_selected[chosen] = true;
            selected.push(chosen);
        }
    }

    Ok(Subset::new(
        Algorithm::Vss,
        set,
        selected,
        Stats {
            iterations: 1,
            comparisons,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condense::testutil::{random_set, two_point};
    use crate::dataset::{gen_mss_adversarial, Label};
    use crate::neighbors::build_neighbor_table;
    use crate::verify::{border_points_2d, is_selective};

    fn run(set: &TrainingSet) -> Subset {
        vss(set, &build_neighbor_table(set).unwrap()).unwrap()
    }

    #[test]
    fn radius_formula() {
        // p at (2,0), enemy at origin: p itself gives d_ne / 2
        assert_eq!(tangent_radius(&[2.0, 0.0], &[0.0, 0.0], &[2.0, 0.0]), Some(1.0));
        // (1,1): |v|^2 = 2, u.v = 1 -> r = 1; center (1,0) is at distance 1 from both
        assert_eq!(tangent_radius(&[2.0, 0.0], &[0.0, 0.0], &[1.0, 1.0]), Some(1.0));
        // behind the enemy: no ball
        assert_eq!(tangent_radius(&[2.0, 0.0], &[0.0, 0.0], &[-1.0, 0.5]), None);
        assert_eq!(tangent_radius(&[2.0, 0.0], &[0.0, 0.0], &[0.0, 3.0]), None);
    }

    #[test]
    fn two_points() {
        assert_eq!(run(&two_point()).indices, vec![0, 1]);
    }

    #[test]
    fn picks_point_closer_to_boundary() {
        // E blue at the origin; P red at (2,0) is uncovered when visited and
        // Q red at (1.2,0.3) lies in its NE ball with r = 1.53 / 2.4 < 1.
        // Q itself was covered earlier by R, which lies outside P's ball.
        let p = TrainingSet::new(
            2,
            vec![0.0, 0.0, 2.0, 0.0, 1.2, 0.3, 0.2, 0.9],
            vec![Label(1), Label(0), Label(0), Label(0)],
            vec!["red".into(), "blue".into()],
        )
        .unwrap();
        let s = run(&p);
        assert_eq!(s.indices, vec![0, 3, 2]);
    }

    #[test]
    fn adversarial_is_bounded_by_k() {
        for eps in [0.1, 0.05, 0.025] {
            let p = gen_mss_adversarial(eps, 2).unwrap();
            let s = run(&p);
            assert!(s.len() <= 4, "eps {eps}: {}", s.len());
            let mut idx = s.indices.clone();
            idx.sort_unstable();
            assert_eq!(idx, vec![0, 1, 2, p.len() - 1]);
        }
    }

    #[test]
    fn selected_points_are_border_points() {
        for seed in 0..15 {
            let p = random_set(30, 2, 2, seed);
            let t = build_neighbor_table(&p).unwrap();
            let s = vss(&p, &t).unwrap();
            let border = border_points_2d(&p).unwrap();
            assert!(s.indices.iter().all(|i| border.contains(*i)), "seed {seed}");
            assert!(s.len() <= border.len());
            assert!(is_selective(&p, s.indices(), &t).unwrap().holds);
        }
    }

    #[test]
    fn deterministic() {
        let p = random_set(50, 3, 2, 9);
        assert_eq!(run(&p), run(&p));
        assert_eq!(p.label(0), Label(0));
    }
}
