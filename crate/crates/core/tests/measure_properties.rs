mod common;

use metric_boundary::families::TreeFamilySpec;
use metric_boundary::graph::MetricGraph;
use metric_boundary::measures::{
    dominance_constant, equal_split_measure, exit_cell_measure, exit_measure, exit_measure_limit, harmonic_dominance_bound,
    tree_exit_cell_measure, CellMeasure,
};
use metric_boundary::oracles::random_connected_graph;
use metric_boundary::partition::{assign_leaves_to_cells, canonical_nested_partitions, BoundarySet, CellAssignment};
use proptest::prelude::*;

/// Random tree whose boundary is its leaves, so every leaf receives current.
fn tree(seed: u64, n: usize) -> MetricGraph {
    random_connected_graph(&mut common::rng(seed), n, 0, 0.1, 10.0, 2)
}

proptest! {
    #![proptest_config(common::cases(64))]

    #[test]
    fn exit_measure_is_positive_additive_and_conserved(seed in any::<u64>(), n in 4usize..40) {
        let g = tree(seed, n);
        prop_assume!(!g.interior().is_empty());
        let w = g.interior()[seed as usize % g.interior().len()];
        let points = BoundarySet::from_graph(&g).unwrap();
        let t = canonical_nested_partitions(&points);
        let m = exit_cell_measure(&g, w, None, &points, &t).unwrap();
        prop_assert!(m.is_positive(1e-14));
        prop_assert!(m.additivity_error(&t) <= 1e-12 * m.total());
        let single = exit_measure(&g, w, &CellAssignment::singletons(&g)).unwrap();
        prop_assert!((single.total() - single.source_flux).abs() <= 1e-12 * single.source_flux);
        // cellwise sums reproduce every level from the finest one
        let rebuilt = CellMeasure::from_finest(&t, m.finest()).unwrap();
        for (a, b) in rebuilt.levels.iter().zip(&m.levels) {
            prop_assert!(common::max_abs_diff(a, b) <= 1e-12 * m.total());
        }
    }

    #[test]
    fn conservation_with_cycles(seed in any::<u64>(), n in 4usize..40) {
        let g = common::graph(seed, n);
        prop_assume!(!g.interior().is_empty());
        let w = g.interior()[0];
        if let Ok(m) = exit_measure(&g, w, &CellAssignment::singletons(&g)) {
            prop_assert!((m.total() - m.source_flux).abs() <= 1e-11 * m.source_flux);
        }
    }

    #[test]
    fn dominance_is_bounded_by_potential(seed in any::<u64>(), n in 5usize..40) {
        let g = tree(seed, n);
        let inner = g.interior();
        prop_assume!(inner.len() >= 2);
        let (w1, w2) = (inner[0], inner[inner.len() - 1]);
        let a = CellAssignment::singletons(&g);
        let nu1 = exit_measure(&g, w1, &a).unwrap().masses;
        let nu2 = exit_measure(&g, w2, &a).unwrap().masses;
        let c = dominance_constant(&nu1, &nu2).unwrap();
        let bound = harmonic_dominance_bound(&g, w1, w2).unwrap();
        prop_assert!(c <= bound * (1.0 + 1e-10));
        for (x, y) in nu1.iter().zip(&nu2) {
            prop_assert!(bound * x - y >= -1e-10 * y);
        }
    }

    #[test]
    fn equal_split_ignores_labels(seed in any::<u64>(), n in 2usize..25) {
        let b = common::plane_points(seed, n);
        let t = canonical_nested_partitions(&b);
        let rho = equal_split_measure(&t);
        prop_assert!(rho.additivity_error(&t) <= 1e-15);
        prop_assert!((rho.total() - 1.0).abs() <= 1e-15);
        // reverse the point order: masses follow the points, not the indices
        let perm: Vec<usize> = (0..n).rev().collect();
        let dist = (0..n * n).map(|k| b.distance(perm[k / n], perm[k % n])).collect();
        let labels = perm.iter().map(|&i| b.label(i).to_string()).collect();
        let rb = BoundarySet::new(labels, dist).unwrap();
        let rt = canonical_nested_partitions(&rb);
        let rrho = equal_split_measure(&rt);
        let mass_of = |t: &metric_boundary::partition::CellTree, m: &CellMeasure, label: &str| {
            let p = t.point_labels().iter().position(|l| l == label).unwrap();
            m.finest()[t.finest().cell_of()[p]]
        };
        for l in b.labels() {
            prop_assert_eq!(mass_of(&t, &rho, l), mass_of(&rt, &rrho, l));
        }
    }
}

#[test]
fn equal_split_on_trees_is_k_to_minus_level() {
    for (k, n) in [(2u32, 5usize), (3, 3)] {
        let spec = TreeFamilySpec::new(k, 0.25, 1.0, n);
        let t = canonical_nested_partitions(&BoundarySet::from_tree(&spec).unwrap());
        let rho = equal_split_measure(&t);
        for j in 0..=n {
            let expect = (k as f64).powi(-(j as i32));
            assert!(rho.level(j).iter().all(|&m| m == expect));
        }
    }
}

#[test]
fn tree_exit_measure_levels_agree_with_leaves() {
    let spec = TreeFamilySpec::new(2, 0.25, 1.0, 6);
    let (t, m) = tree_exit_cell_measure(&spec, &vec![]).unwrap();
    assert!(m.additivity_error(&t) < 1e-12);
    assert!(m.is_positive(1e-14));
    // symmetric source: every cell of a level carries the same mass
    for j in 0..=6 {
        let l = m.level(j);
        assert!(l.iter().all(|x| (x - l[0]).abs() < 1e-12));
    }
}

#[test]
fn exit_changes_decay_geometrically() {
    for (k, r) in [(2u32, 0.25), (3, 0.2), (2, 0.4)] {
        let spec = TreeFamilySpec::new(k, r, 1.0, 1);
        let lim = exit_measure_limit(&spec, &vec![0], 1, &[3, 4, 5, 6, 7, 8], 1e-300).unwrap();
        let changes: Vec<f64> = lim.trace.iter().filter_map(|s| s.change).collect();
        for w in changes.windows(2) {
            assert!(w[1] < 0.75 * w[0], "{k} {r}: {changes:?}");
        }
    }
}

#[test]
fn label_assignment_covers_boundary() {
    let g = common::graph(3, 25);
    let points = BoundarySet::from_graph(&g).unwrap();
    let t = canonical_nested_partitions(&points);
    for j in 0..t.levels.len() {
        let a = assign_leaves_to_cells(&g, None, &points, &t, j).unwrap();
        assert!(g.boundary().iter().all(|&v| a.cell_of[v].is_some()));
        assert_eq!(a.cell_count, t.level(j).len());
    }
}
