//! Independent reference computations used to verify the main routines:
//! dense Schur complements, explicit projections, brute-force ε-chains,
//! closed forms for tree families, and seeded random test graphs.
//!
//! None of these share code paths with the routines they check.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::dtn::BoundaryMeasureMu;
use crate::families::TreeFamilySpec;
use crate::graph::{EdgeSpec, MetricGraph};
use crate::partition::{BoundarySet, CellAssignment, Partition};

/// Connected random graph with `n` vertices: a random spanning tree plus
/// `extra` additional edges (parallel edges allowed, no loops). Lengths are
/// uniform in `[lo, hi]`. Leaves are on the boundary, plus random vertices
/// until at least `min_boundary` are, keeping at least one interior vertex
/// when possible.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra: usize, lo: f64, hi: f64, min_boundary: usize) -> MetricGraph {
    assert!(n >= 2);
    let ids: Vec<String> = (0..n).map(|i| format!("n{i:03}")).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    let mut degree = vec![0usize; n];
    let mut add = |a: usize, b: usize, rng: &mut R, edges: &mut Vec<EdgeSpec>| {
        let len = rng.random_range(lo..=hi);
        edges.push(EdgeSpec::new(format!("e{:04}", edges.len()), ids[a].clone(), ids[b].clone(), len));
        degree[a] += 1;
        degree[b] += 1;
    };
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        add(order[k], parent, rng, &mut edges);
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n);
        while b == a {
            b = rng.random_range(0..n);
        }
        add(a, b, rng, &mut edges);
    }
    let mut boundary: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut rest: Vec<usize> = (0..n).filter(|&v| degree[v] != 1).collect();
    rest.shuffle(rng);
    while boundary.len() < min_boundary.min(n) && rest.len() > 1 {
        boundary.push(rest.pop().unwrap());
    }
    if boundary.len() < min_boundary.min(n) {
        boundary.append(&mut rest);
    }
    let boundary = boundary.into_iter().map(|v| ids[v].clone()).collect();
    MetricGraph::new(ids, edges, boundary).expect("random graph is valid")
}

/// `D_μ⁻¹ (L_BB - L_BI L_II⁻¹ L_IB)` by dense linear algebra.
pub fn schur_complement_dtn(g: &MetricGraph, mu: &BoundaryMeasureMu) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for e in g.edges() {
        let c = 1.0 / e.length;
        l[(e.u, e.u)] += c;
        l[(e.v, e.v)] += c;
        l[(e.u, e.v)] -= c;
        l[(e.v, e.u)] -= c;
    }
    let b = g.boundary();
    let i = g.interior();
    let pick = |rows: &[usize], cols: &[usize]| DMatrix::from_fn(rows.len(), cols.len(), |r, c| l[(rows[r], cols[c])]);
    let lbb = pick(&b, &b);
    let mut s = if i.is_empty() {
        lbb
    } else {
        let lii = pick(&i, &i);
        let lib = pick(&i, &b);
        let lbi = pick(&b, &i);
        let x = lii.lu().solve(&lib).expect("interior block is nonsingular");
        lbb - lbi * x
    };
    for (r, w) in mu.weights().iter().enumerate() {
        s.row_mut(r).scale_mut(1.0 / w);
    }
    s
}

/// Matrix of `P_ℰ Λ P_ℰ` restricted to cellwise-constant functions, where the
/// projection averages with the vertex weights of `mu` and cell weights are
/// the summed vertex weights.
pub fn project_compressed(full: &DMatrix<f64>, g: &MetricGraph, mu: &BoundaryMeasureMu, a: &CellAssignment) -> DMatrix<f64> {
    let b = g.boundary();
    let cell: Vec<usize> = b.iter().map(|&v| a.cell_of[v].unwrap()).collect();
    let k = a.cell_count;
    // embedding: cell indicator -> vertex function
    let embed = DMatrix::from_fn(b.len(), k, |r, c| if cell[r] == c { 1.0 } else { 0.0 });
    let mut mass = vec![0.0; k];
    for (r, &c) in cell.iter().enumerate() {
        mass[c] += mu.weights()[r];
    }
    // projection: vertex function -> cell values (μ-weighted mean)
    let project = DMatrix::from_fn(k, b.len(), |c, r| if cell[r] == c { mu.weights()[r] / mass[c] } else { 0.0 });
    project * full * embed
}

/// ε-components by breadth-first search over ε-chains.
pub fn epsilon_chain_components(b: &BoundarySet, eps: f64) -> Partition {
    let n = b.len();
    let mut seen = vec![false; n];
    let mut cells = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut cell = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if !seen[y] && b.distance(x, y) < eps {
                    seen[y] = true;
                    cell.push(y);
                    queue.push_back(y);
                }
            }
        }
        cells.push(cell);
    }
    Partition::from_cells(cells)
}

/// `2 L₀ r^{a+1} (1 - r^{n-a}) / (1 - r)`: distance between leaves whose
/// addresses first differ at position `a`.
pub fn tree_jump_closed_form(spec: &TreeFamilySpec, a: usize) -> f64 {
    let r = spec.ratio;
    2.0 * spec.base_length * r.powi(a as i32 + 1) * (1.0 - r.powi((spec.depth - a) as i32)) / (1.0 - r)
}

/// Effective conductance from the root to the leaves of a truncation, by the
/// series/parallel recursion `R_d = (l_{d+1} + R_{d+1}) / k`.
pub fn tree_root_conductance(spec: &TreeFamilySpec) -> f64 {
    let mut r = 0.0;
    for d in (0..spec.depth).rev() {
        r = (spec.edge_length(d + 1) + r) / spec.arity as f64;
    }
    1.0 / r
}

/// Classical Haar system on `2^depth` dyadic cells with total mass one:
/// the constant, then for each dyadic interval of level n-1 the function
/// `±2^{(n-1)/2}` on its two halves.
pub fn classical_haar(depth: usize) -> Vec<Vec<f64>> {
    let size = 1usize << depth;
    let mut out = vec![vec![1.0; size]];
    for n in 1..=depth {
        let block = size >> (n - 1);
        let amp = 2f64.powf((n as f64 - 1.0) / 2.0);
        for start in (0..size).step_by(block) {
            let mut f = vec![0.0; size];
            for (i, x) in f.iter_mut().enumerate().skip(start).take(block) {
                *x = if i < start + block / 2 { amp } else { -amp };
            }
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_graphs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.random_range(3..=50);
            let g = random_connected_graph(&mut rng, n, n / 3, 0.1, 10.0, 2);
            assert!(g.validate().is_empty());
            assert!(g.boundary().len() >= 2);
        }
    }

    #[test]
    fn closed_forms() {
        let s = TreeFamilySpec::new(2, 0.25, 1.0, 3);
        assert!((tree_jump_closed_form(&s, 0) - 0.65625).abs() < 1e-15);
        assert!((tree_jump_closed_form(&s, 2) - 0.03125).abs() < 1e-15);
        let deep = TreeFamilySpec::new(2, 0.25, 1.0, 30);
        assert!((tree_root_conductance(&deep) - 7.0).abs() < 1e-12);
        let h = classical_haar(2);
        assert_eq!(h[3], vec![0.0, 0.0, 2f64.sqrt(), -(2f64.sqrt())]);
    }
}
