mod common;

use metric_boundary::families::TreeFamilySpec;
use metric_boundary::oracles::epsilon_chain_components;
use metric_boundary::partition::{canonical_nested_partitions, epsilon_components, jump_values, mesh, BoundarySet};
use proptest::prelude::*;

fn points(seed: u64, n: usize, from_graph: bool) -> BoundarySet {
    if from_graph {
        BoundarySet::from_graph(&common::graph(seed, n)).unwrap()
    } else {
        common::plane_points(seed, n)
    }
}

proptest! {
    #![proptest_config(common::cases(64))]

    #[test]
    fn components_match_chain_oracle(seed in any::<u64>(), n in 2usize..30, g in any::<bool>(), t in 0.0f64..1.0) {
        let b = points(seed, n, g);
        let eps = t * b.diameter() * 1.1 + 1e-9;
        prop_assert_eq!(epsilon_components(&b, eps), epsilon_chain_components(&b, eps));
    }

    #[test]
    fn components_refine_as_eps_grows(seed in any::<u64>(), n in 2usize..30, a in 0.0f64..12.0, d in 0.0f64..4.0) {
        let b = common::plane_points(seed, n);
        let fine = epsilon_components(&b, a + 1e-9);
        let coarse = epsilon_components(&b, a + d + 1e-9);
        prop_assert!(fine.refines(&coarse));
        prop_assert!(fine.len() >= coarse.len());
    }

    #[test]
    fn cells_are_eps_separated(seed in any::<u64>(), n in 2usize..30, t in 0.0f64..1.0) {
        let b = common::plane_points(seed, n);
        let eps = t * b.diameter() + 1e-9;
        let p = epsilon_components(&b, eps);
        let owner = p.cell_of();
        for i in 0..n {
            for j in 0..n {
                if owner[i] != owner[j] {
                    prop_assert!(b.distance(i, j) >= eps);
                }
            }
        }
    }

    #[test]
    fn eta_steps_at_jumps(seed in any::<u64>(), n in 2usize..30, g in any::<bool>()) {
        let b = points(seed, n, g);
        let jumps = jump_values(&b);
        prop_assert!(jumps.windows(2).all(|w| w[0].alpha > w[1].alpha));
        for j in &jumps {
            prop_assert_eq!(epsilon_components(&b, j.alpha).len(), j.before);
            prop_assert_eq!(epsilon_components(&b, j.alpha * (1.0 - 1e-12)).len(), j.before);
            prop_assert_eq!(epsilon_components(&b, j.alpha * (1.0 + 1e-12)).len(), j.after);
        }
        if let Some(last) = jumps.last() {
            prop_assert_eq!(last.before, b.len());
        }
        prop_assert_eq!(jumps.first().map_or(1, |j| j.after), 1);
    }

    #[test]
    fn cell_tree_is_nested_with_shrinking_mesh(seed in any::<u64>(), n in 2usize..30, g in any::<bool>()) {
        let b = points(seed, n, g);
        let t = canonical_nested_partitions(&b);
        prop_assert_eq!(t.level(0).len(), 1);
        prop_assert_eq!(t.finest().len(), b.len());
        for j in 1..t.levels.len() {
            prop_assert!(t.level(j).refines(t.level(j - 1)));
            prop_assert!(t.level(j).len() > t.level(j - 1).len());
            prop_assert!(t.mesh[j] <= t.mesh[j - 1]);
            prop_assert_eq!(t.mesh[j], mesh(t.level(j), &b));
        }
        prop_assert_eq!(*t.mesh.last().unwrap(), 0.0);
    }
}

#[test]
fn tree_jumps_follow_closed_form() {
    for (k, r, n) in [(2u32, 0.25, 5usize), (3, 0.2, 4), (2, 0.4, 6)] {
        let spec = TreeFamilySpec::new(k, r, 1.0, n);
        let b = BoundarySet::from_tree(&spec).unwrap();
        let jumps = jump_values(&b);
        assert_eq!(jumps.len(), n);
        for (a, j) in jumps.iter().enumerate() {
            let exact = metric_boundary::oracles::tree_jump_closed_form(&spec, a);
            assert!((j.alpha - exact).abs() <= 1e-12 * exact.max(1.0));
            assert_eq!(j.after, (k as usize).pow(a as u32));
            assert_eq!(j.before, (k as usize).pow(a as u32 + 1));
        }
    }
}
