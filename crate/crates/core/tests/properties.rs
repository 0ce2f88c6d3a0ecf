use std::collections::BTreeSet;

use proptest::prelude::*;
use redraw::comb::{build_k_nested_double_chain, build_k_nested_regular};
use redraw::drawings::{
    classify_drawings, count_drawings, count_geometric_triangulations, count_polygonalizations,
    enumerate_geometric_triangulations, find_drawings, recursive_layer_count, Backend,
    GeomTriangulation, SearchConfig,
};
use redraw::geometry::{general_position, Point};
use redraw::pointsets::{gen_double_chain, gen_nested_triangles, PointSet};

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn random_set() -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((0i64..40, 0i64..40), 4..=8).prop_filter_map(
        "general position",
        |pts| {
            let pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            general_position(&pts)
                .then(|| PointSet::new(pts, None).ok())
                .flatten()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Each triangulation of the set, read back as a rotation system, must be
    // found by both backends, and the backends must agree on the count.
    #[test]
    fn backends_agree_on_random_sets(ps in random_set()) {
        let all = enumerate_geometric_triangulations(&ps, &cfg()).unwrap();
        let first = all[0].to_comb().unwrap();
        let direct = find_drawings(&first, &ps, Backend::Direct, &cfg()).unwrap();
        let oracle = find_drawings(&first, &ps, Backend::Oracle, &cfg()).unwrap();
        prop_assert_eq!(&direct, &oracle);
        prop_assert!(direct.contains(&all[0]));
    }

    #[test]
    fn class_multiplicities_sum_to_triangulation_count(ps in random_set()) {
        let classes = classify_drawings(&ps, &cfg()).unwrap();
        let total: u64 = classes.values().sum();
        prop_assert_eq!(total, count_geometric_triangulations(&ps, &cfg()).unwrap());
    }

    #[test]
    fn comb_round_trip_through_edges(ps in random_set()) {
        let all = enumerate_geometric_triangulations(&ps, &cfg()).unwrap();
        let g = &all[all.len() / 2];
        let rebuilt = GeomTriangulation::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(&rebuilt, g);
        let comb = g.to_comb().unwrap();
        let edges: BTreeSet<_> = comb.edges().into_iter().collect();
        prop_assert_eq!(edges, g.edges().iter().copied().collect::<BTreeSet<_>>());
    }
}

#[test]
fn split_table_is_symmetric() {
    let t = build_k_nested_double_chain(1).unwrap();
    let counts: Vec<u64> = (1..=7)
        .map(|a| {
            count_drawings(
                &t,
                &gen_double_chain(a + 2, 10 - a).unwrap(),
                Backend::Direct,
                &cfg(),
            )
            .unwrap()
        })
        .collect();
    let mut rev = counts.clone();
    rev.reverse();
    assert_eq!(counts, rev);
}

#[test]
fn polygonalizations_dominate_drawings_on_double_chains() {
    // Every triangulation realized on a double chain has at most as many
    // drawings there as the set has simple polygons. Classes that are not
    // realized have zero drawings and hold trivially.
    for n in 4..=12 {
        for upper in 2..=n - 2 {
            let ps = gen_double_chain(upper, n - upper).unwrap();
            let most = *classify_drawings(&ps, &cfg())
                .unwrap()
                .values()
                .max()
                .unwrap();
            let polygons = count_polygonalizations(&ps, &cfg()).unwrap();
            assert!(
                most <= polygons,
                "({upper}, {}): {most} drawings, {polygons} polygons",
                n - upper
            );
        }
    }
}

#[test]
fn layer_count_is_a_lower_bound_for_one_layer() {
    let t = build_k_nested_double_chain(1).unwrap();
    let direct = count_drawings(
        &t,
        &gen_double_chain(6, 6).unwrap(),
        Backend::Direct,
        &cfg(),
    )
    .unwrap();
    assert!(recursive_layer_count(1).unwrap() <= direct.into());
}

#[test]
fn nested_regular_drawn_on_nested_triangles() {
    for n in 3..=12 {
        let t = build_k_nested_regular(n).unwrap();
        let ps = gen_nested_triangles(n).unwrap();
        let drawings = find_drawings(&t, &ps, Backend::Direct, &cfg()).unwrap();
        assert!(!drawings.is_empty(), "n = {n}");
        for g in &drawings {
            assert_eq!(g.to_comb().unwrap().canonical_code(), t.canonical_code());
        }
    }
}

#[test]
fn distinct_drawings_can_share_a_class() {
    // The balanced 6+6 double chain carries three drawings of the same
    // triangulation, so equal rotation systems do not force equal edge sets.
    let t = build_k_nested_double_chain(1).unwrap();
    let drawings = find_drawings(
        &t,
        &gen_double_chain(6, 6).unwrap(),
        Backend::Oracle,
        &cfg(),
    )
    .unwrap();
    let codes: BTreeSet<_> = drawings
        .iter()
        .map(|g| g.to_comb().unwrap().canonical_code())
        .collect();
    let edge_sets: BTreeSet<_> = drawings.iter().map(|g| g.edges().to_vec()).collect();
    assert_eq!((codes.len(), edge_sets.len()), (1, 3));
}
