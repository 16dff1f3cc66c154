#![allow(dead_code)]

use metric_boundary::graph::MetricGraph;
use metric_boundary::oracles::random_connected_graph;
use metric_boundary::partition::BoundarySet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph with `n` vertices, some extra edges, lengths in [0.1, 10].
pub fn graph(seed: u64, n: usize) -> MetricGraph {
    let mut r = rng(seed);
    let extra = r.random_range(0..=n / 2);
    random_connected_graph(&mut r, n, extra, 0.1, 10.0, 2)
}

/// Random points in the plane with Euclidean distances.
pub fn plane_points(seed: u64, n: usize) -> BoundarySet {
    let mut r = rng(seed);
    let p: Vec<(f64, f64)> = (0..n).map(|_| (r.random_range(0.0..10.0), r.random_range(0.0..10.0))).collect();
    let dist = (0..n * n)
        .map(|k| {
            let (a, b) = (p[k / n], p[k % n]);
            ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
        })
        .collect();
    BoundarySet::new((0..n).map(|i| format!("p{i:02}")).collect(), dist).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn cases(n: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases: n,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
        ..Default::default()
    }
}
