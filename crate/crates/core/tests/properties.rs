mod common;

use nnc::condense::vss;
use nnc::dataset::{gen_circle, gen_mss_adversarial, gen_sphere_lowerbound};
use nnc::neighbors::classify_nn;
use nnc::verify::{
    audit_fcnn_representatives, audit_ne_charging, border_points_2d, count_ne_points,
    is_consistent, is_selective,
};
use nnc::{build_neighbor_table, condense, Algorithm};
use proptest::prelude::*;

use common::random_set;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn condensers_meet_their_guarantees(
        n in 3usize..80,
        dim in prop::sample::select(vec![1usize, 2, 3, 5]),
        classes in 2u32..5,
        seed in any::<u64>(),
    ) {
        let set = random_set(n.max(classes as usize), dim, classes, seed);
        let table = build_neighbor_table(&set).unwrap();
        for alg in Algorithm::ALL {
            let s = condense(alg, &set, &table).unwrap();
            let consistent = is_consistent(&set, s.indices()).unwrap();
            prop_assert!(consistent.holds, "{alg}: {:?}", consistent.witness);
            let selective = is_selective(&set, s.indices(), &table).unwrap();
            if alg.is_selective() {
                prop_assert!(selective.holds, "{alg}: {:?}", selective.witness);
            }
            if selective.holds {
                prop_assert!(consistent.holds);
            }
            prop_assert_eq!(&s, &condense(alg, &set, &table).unwrap());
        }
    }

    #[test]
    fn planar_bounds(n in 4usize..50, classes in 2u32..4, seed in any::<u64>()) {
        let set = random_set(n, 2, classes, seed);
        let table = build_neighbor_table(&set).unwrap();
        let border = border_points_2d(&set).unwrap();
        prop_assert!(count_ne_points(&table) <= border.len());

        let v = vss(&set, &table).unwrap();
        prop_assert!(v.len() <= border.len());
        prop_assert!(v.indices().iter().all(|&i| border.contains(i)));

        let r = condense(Algorithm::Rss, &set, &table).unwrap();
        let audit = audit_ne_charging(&set, r.indices(), &table).unwrap();
        prop_assert!(audit.holds);
        prop_assert!(audit.metrics["maxGroupSize"] <= 6.0);
        prop_assert!(r.len() <= 6 * count_ne_points(&table));

        let f = condense(Algorithm::Fcnn, &set, &table).unwrap();
        prop_assert!(audit_fcnn_representatives(&set, f.trace.as_deref()).unwrap().holds);
    }

    #[test]
    fn self_classification(n in 2usize..60, dim in 1usize..4, seed in any::<u64>()) {
        let set = random_set(n, dim, 2, seed);
        let all: Vec<usize> = (0..set.len()).collect();
        for p in set.points() {
            prop_assert_eq!(classify_nn(p.coords, &all, &set).unwrap(), p.label);
        }
    }

    #[test]
    fn adversarial_has_four_ne_points(k in 4usize..60, dim in 1usize..4) {
        let eps = 1.0 / k as f64;
        let set = gen_mss_adversarial(eps, dim).unwrap();
        prop_assert_eq!(count_ne_points(&build_neighbor_table(&set).unwrap()), 4);
    }

    #[test]
    fn generators_are_deterministic(n in 2usize..300, seed in any::<u64>()) {
        let a = gen_circle(n, seed).unwrap();
        let b = gen_circle(n, seed).unwrap();
        prop_assert_eq!(a.flat_coords(), b.flat_coords());
        prop_assert_eq!(a.labels(), b.labels());
    }
}

#[test]
fn sphere_generator_is_deterministic() {
    for dim in [2, 3, 4] {
        let a = gen_sphere_lowerbound(2, 8, dim, 10.0).unwrap();
        let b = gen_sphere_lowerbound(2, 8, dim, 10.0).unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        let table = build_neighbor_table(&a).unwrap();
        let r = condense(Algorithm::Rss, &a, &table).unwrap();
        assert!(is_consistent(&a, r.indices()).unwrap().holds);
    }
}
