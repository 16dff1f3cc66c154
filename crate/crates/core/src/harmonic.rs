//! Harmonic functions on metric graphs.
//!
//! A function that is linear on every edge is harmonic at an interior vertex
//! when its outward edge slopes sum to zero there; equivalently its value is
//! the conductance-weighted mean of the neighbouring values, with conductance
//! `1/l_e`. Dirichlet problems reduce to the interior block of the weighted
//! Laplacian, which is factored once and reused for many right-hand sides.
//!
//! Sign convention: the edge derivative at `v` is `(f(v) - f(other)) / l_e`,
//! i.e. the slope with `v` at the terminal end of the edge. The Kirchhoff sum
//! at a vertex is then exactly `(L f)(v)`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::families::CounterexampleSpec;
use crate::graph::MetricGraph;
use crate::linalg::{conjugate_gradient, SparseCholesky, SymmetricSparse};

/// `L(v,v) = Σ 1/l_e`, `L(u,v) = -Σ_{parallel} 1/l_e`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedLaplacian {
    pub diag: Vec<f64>,
    /// Merged off-diagonal entries per row, sorted by column.
    pub off: Vec<Vec<(usize, f64)>>,
}

/// Assembles the weighted Laplacian; parallel edges add their conductances.
pub fn assemble_laplacian(g: &MetricGraph) -> WeightedLaplacian {
    let n = g.vertex_count();
    let mut diag = vec![0.0; n];
    let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
    for e in g.edges() {
        if e.u == e.v {
            continue;
        }
        let c = e.conductance();
        diag[e.u] += c;
        diag[e.v] += c;
        *rows[e.u].entry(e.v).or_insert(0.0) -= c;
        *rows[e.v].entry(e.u).or_insert(0.0) -= c;
    }
    WeightedLaplacian { diag, off: rows.into_iter().map(|r| r.into_iter().collect()).collect() }
}

impl WeightedLaplacian {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.diag
            .iter()
            .zip(&self.off)
            .zip(x)
            .map(|((d, row), xi)| d * xi + row.iter().map(|&(j, a)| a * x[j]).sum::<f64>())
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            for &(j, a) in &self.off[i] {
                m[(i, j)] = a;
            }
        }
        m
    }

    /// Largest absolute row sum.
    pub fn max_row_sum(&self) -> f64 {
        self.diag
            .iter()
            .zip(&self.off)
            .map(|(d, row)| (d + row.iter().map(|&(_, a)| a).sum::<f64>()).abs())
            .fold(0.0, f64::max)
    }
}

/// Solver configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Interior systems up to this size are factored directly.
    pub direct_threshold: usize,
    pub cg_tolerance: f64,
    pub cg_max_iter: usize,
    /// Solve trees by series-parallel reduction, which yields edge currents
    /// directly instead of differencing nearly equal vertex values.
    pub tree_reduction: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { direct_threshold: 20_000, cg_tolerance: 1e-12, cg_max_iter: 100_000, tree_reduction: true }
    }
}

#[derive(Clone, Debug)]
enum Backend {
    Empty,
    Tree(TreeReduction),
    Direct(SparseCholesky),
    Iterative(SymmetricSparse),
}

/// Rooted traversal of a tree. Every subtree hanging below a vertex is
/// replaced by its Thevenin equivalent (a source `V` behind a resistance
/// `R`); a prescribed vertex cuts off everything below it.
#[derive(Clone, Debug)]
struct TreeReduction {
    /// Breadth-first order from the root.
    order: Vec<usize>,
    /// Children with their connecting edge.
    down: Vec<Vec<(usize, usize)>>,
}

impl TreeReduction {
    fn new(g: &MetricGraph) -> Self {
        let n = g.vertex_count();
        let mut down = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut order = vec![0];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &k in g.incident(v) {
                let w = g.edge(k).other(v).unwrap();
                if !seen[w] {
                    seen[w] = true;
                    down[v].push((w, k));
                    order.push(w);
                }
            }
        }
        Self { order, down }
    }

    /// Vertex values and edge currents (`u` to `v` along each edge).
    fn solve(&self, g: &MetricGraph, fixed: &[bool], values: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = g.vertex_count();
        let mut source = vec![0.0; n];
        let mut resistance = vec![0.0; n];
        // a free subtree without prescribed vertices carries no current
        let mut open = vec![false; n];
        for &v in self.order.iter().rev() {
            if fixed[v] {
                source[v] = values[v];
                continue;
            }
            let (mut num, mut den) = (0.0, 0.0);
            for &(c, k) in &self.down[v] {
                if !open[c] {
                    let cond = 1.0 / (resistance[c] + g.edge(k).length);
                    num += source[c] * cond;
                    den += cond;
                }
            }
            if den > 0.0 {
                source[v] = num / den;
                resistance[v] = 1.0 / den;
            } else {
                open[v] = true;
            }
        }
        let root = self.order[0];
        if open[root] {
            return Err(Error::Singular(g.vertex_id(root).to_string()));
        }
        let mut f = vec![0.0; n];
        // f(v) - source(v)
        let mut excess = vec![0.0; n];
        let mut current = vec![0.0; g.edge_count()];
        f[root] = source[root];
        for &v in &self.order {
            for &(c, k) in &self.down[v] {
                if open[c] {
                    f[c] = f[v];
                    excess[c] = 0.0;
                    continue;
                }
                let i = ((source[v] - source[c]) + excess[v]) / (resistance[c] + g.edge(k).length);
                current[k] = if g.edge(k).u == v { i } else { -i };
                excess[c] = i * resistance[c];
                f[c] = if fixed[c] { values[c] } else { source[c] + excess[c] };
            }
        }
        Ok((f, current))
    }
}

/// Factored interior system for a fixed set of prescribed vertices.
///
/// Immutable after construction and `Sync`, so one solver can serve many
/// right-hand sides from several threads.
#[derive(Clone, Debug)]
pub struct DirichletSolver<'g> {
    graph: &'g MetricGraph,
    lap: WeightedLaplacian,
    fixed: Vec<bool>,
    free: Vec<usize>,
    backend: Backend,
    opts: SolverOptions,
}

impl<'g> DirichletSolver<'g> {
    /// Prescribed vertices are the boundary of `g`.
    pub fn new(g: &'g MetricGraph) -> Result<Self> {
        Self::with_fixed(g, &g.boundary(), SolverOptions::default())
    }

    pub fn with_fixed(g: &'g MetricGraph, fixed: &[usize], opts: SolverOptions) -> Result<Self> {
        if fixed.is_empty() {
            return Err(Error::InvalidArgument("Dirichlet problem needs at least one prescribed vertex".into()));
        }
        let lap = assemble_laplacian(g);
        let mut is_fixed = vec![false; g.vertex_count()];
        for &v in fixed {
            is_fixed[v] = true;
        }
        let free: Vec<usize> = (0..g.vertex_count()).filter(|&v| !is_fixed[v]).collect();
        let mut pos = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in free.iter().enumerate() {
            pos[v] = i;
        }
        let block = SymmetricSparse {
            diag: free.iter().map(|&v| lap.diag[v]).collect(),
            rows: free
                .iter()
                .map(|&v| lap.off[v].iter().filter(|(j, _)| !is_fixed[*j]).map(|&(j, a)| (pos[j], a)).collect())
                .collect(),
        };
        let backend = if free.is_empty() {
            Backend::Empty
        } else if opts.tree_reduction && g.edge_count() + 1 == g.vertex_count() {
            Backend::Tree(TreeReduction::new(g))
        } else if free.len() <= opts.direct_threshold {
            let chol = SparseCholesky::factor(&block).map_err(|i| Error::Singular(g.vertex_id(free[i]).to_string()))?;
            Backend::Direct(chol)
        } else {
            Backend::Iterative(block)
        };
        Ok(Self { graph: g, lap, fixed: is_fixed, free, backend, opts })
    }

    pub fn graph(&self) -> &'g MetricGraph {
        self.graph
    }

    pub fn laplacian(&self) -> &WeightedLaplacian {
        &self.lap
    }

    pub fn is_fixed(&self, v: usize) -> bool {
        self.fixed[v]
    }

    /// Harmonic extension of the prescribed entries of `values` (a full
    /// vertex-indexed vector; free entries are ignored).
    pub fn solve(&self, values: &[f64]) -> Result<HarmonicFunction<'g>> {
        if values.len() != self.graph.vertex_count() {
            return Err(Error::Dimension { expected: self.graph.vertex_count(), got: values.len() });
        }
        if let Backend::Tree(t) = &self.backend {
            let (values, currents) = t.solve(self.graph, &self.fixed, values)?;
            return Ok(HarmonicFunction { graph: self.graph, values, currents: Some(currents) });
        }
        let mut out = values.to_vec();
        let rhs: Vec<f64> = self
            .free
            .iter()
            .map(|&v| -self.lap.off[v].iter().filter(|(j, _)| self.fixed[*j]).map(|&(j, a)| a * values[j]).sum::<f64>())
            .collect();
        let x = match &self.backend {
            Backend::Empty | Backend::Tree(_) => Vec::new(),
            Backend::Direct(chol) => chol.solve(&rhs),
            Backend::Iterative(a) => {
                conjugate_gradient(a, &rhs, self.opts.cg_tolerance, self.opts.cg_max_iter)?.x
            }
        };
        for (&v, xv) in self.free.iter().zip(x) {
            out[v] = xv;
        }
        Ok(HarmonicFunction { graph: self.graph, values: out, currents: None })
    }
}

/// Boundary data for a Dirichlet problem.
#[derive(Clone, Debug)]
pub struct DirichletProblem<'g> {
    pub graph: &'g MetricGraph,
    /// Full vertex-indexed vector; interior entries are zero placeholders.
    values: Vec<f64>,
}

impl<'g> DirichletProblem<'g> {
    /// Every boundary vertex must receive exactly one finite value and no
    /// interior vertex may be assigned.
    pub fn new(graph: &'g MetricGraph, data: &BTreeMap<String, f64>) -> Result<Self> {
        let mut values = vec![0.0; graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        for (id, &x) in data {
            let v = graph.require(id)?;
            if !graph.is_boundary(v) {
                return Err(Error::InvalidArgument(format!("`{id}` is not a boundary vertex")));
            }
            if !x.is_finite() {
                return Err(Error::InvalidArgument(format!("value at `{id}` is not finite")));
            }
            values[v] = x;
            seen[v] = true;
        }
        if let Some(v) = graph.boundary().into_iter().find(|&v| !seen[v]) {
            return Err(Error::InvalidArgument(format!("no value for boundary vertex `{}`", graph.vertex_id(v))));
        }
        Ok(Self { graph, values })
    }

    /// Values listed in boundary order.
    pub fn from_boundary_values(graph: &'g MetricGraph, data: &[f64]) -> Result<Self> {
        let b = graph.boundary();
        if b.len() != data.len() {
            return Err(Error::Dimension { expected: b.len(), got: data.len() });
        }
        let mut values = vec![0.0; graph.vertex_count()];
        for (&v, &x) in b.iter().zip(data) {
            values[v] = x;
        }
        Ok(Self { graph, values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn solve_dirichlet<'g>(p: &DirichletProblem<'g>) -> Result<HarmonicFunction<'g>> {
    if p.graph.boundary().is_empty() {
        return Err(Error::InvalidArgument("graph has an empty boundary".into()));
    }
    DirichletSolver::new(p.graph)?.solve(&p.values)
}

/// Vertex values of an edgewise-linear function.
#[derive(Clone, Debug)]
pub struct HarmonicFunction<'g> {
    pub graph: &'g MetricGraph,
    pub values: Vec<f64>,
    /// Slope `(f(u) - f(v)) / l` of each edge when the solver produced it
    /// directly; derivatives and fluxes then use it instead of differences.
    pub currents: Option<Vec<f64>>,
}

impl<'g> HarmonicFunction<'g> {
    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn value_of(&self, id: &str) -> Result<f64> {
        Ok(self.values[self.graph.require(id)?])
    }

    /// `(f(v) - f(other)) / l_e` for edge index `e` and endpoint `v`.
    pub fn edge_derivative(&self, e: usize, v: usize) -> Result<f64> {
        let edge = self.graph.edge(e);
        if edge.other(v).is_none() {
            return Err(Error::InvalidArgument(format!("`{}` is not an endpoint of `{}`", self.graph.vertex_id(v), edge.id)));
        }
        Ok(self.slope(e, v))
    }

    fn slope(&self, k: usize, v: usize) -> f64 {
        let e = self.graph.edge(k);
        match &self.currents {
            Some(c) if e.u == v => c[k],
            Some(c) => -c[k],
            None => {
                let o = e.other(v).unwrap();
                (self.values[v] - self.values[o]) / e.length
            }
        }
    }

    /// Sum of edge derivatives at `v` over incident edges.
    pub fn flux(&self, v: usize) -> f64 {
        self.graph.incident(v).iter().map(|&k| self.slope(k, v)).sum()
    }

    /// [`HarmonicFunction::flux`] from vertex values alone.
    pub fn value_flux(&self, v: usize) -> f64 {
        self.graph
            .incident(v)
            .iter()
            .map(|&k| {
                let e = self.graph.edge(k);
                (self.values[v] - self.values[e.other(v).unwrap()]) / e.length
            })
            .sum()
    }

    /// `Σ_e (f(u) - f(v))² / l_e`.
    pub fn dirichlet_energy(&self) -> f64 {
        match &self.currents {
            Some(c) => self.graph.edges().iter().zip(c).map(|(e, i)| i * i * e.length).sum(),
            None => dirichlet_energy(self.graph, &self.values),
        }
    }
}

pub fn dirichlet_energy(g: &MetricGraph, f: &[f64]) -> f64 {
    g.edges().iter().map(|e| (f[e.u] - f[e.v]).powi(2) / e.length).sum()
}

/// Outcome of [`check_harmonic`].
#[derive(Clone, Debug)]
pub struct HarmonicReport {
    /// Per interior vertex: Kirchhoff sum divided by local conductance.
    pub residuals: Vec<(usize, f64)>,
    pub max_residual: f64,
    /// Interior vertices whose scaled residual exceeds the tolerance.
    pub flagged: Vec<usize>,
    pub max_principle: bool,
    pub energy: f64,
}

impl HarmonicReport {
    pub fn passed(&self) -> bool {
        self.flagged.is_empty() && self.max_principle
    }
}

pub fn check_harmonic(f: &HarmonicFunction<'_>, tol: f64) -> HarmonicReport {
    let g = f.graph;
    let residuals: Vec<(usize, f64)> = g
        .interior()
        .into_iter()
        .map(|v| {
            let local: f64 = g.incident(v).iter().map(|&k| g.edge(k).conductance()).sum();
            (v, f.value_flux(v).abs() / local)
        })
        .collect();
    let max_residual = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
    let flagged = residuals.iter().filter(|r| r.1 > tol).map(|r| r.0).collect();
    let b = g.boundary();
    let lo = b.iter().map(|&v| f.values[v]).fold(f64::INFINITY, f64::min);
    let hi = b.iter().map(|&v| f.values[v]).fold(f64::NEG_INFINITY, f64::max);
    let slack = tol * (hi - lo).abs().max(1.0);
    let max_principle = b.is_empty() || f.values.iter().all(|&x| x >= lo - slack && x <= hi + slack);
    HarmonicReport { residuals, max_residual, flagged, max_principle, energy: f.dirichlet_energy() }
}

/// Spine values produced by the flux recurrence.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    /// `values[n-1] = f(v_n)` for `n = 1..=N` (shorter on overflow).
    pub values: Vec<f64>,
    /// `fluxes[n-1] = g_n`, the slope on `(v_n, v_{n+1})`.
    pub fluxes: Vec<f64>,
    /// Spine index at which a value stopped being finite.
    pub overflow_at: Option<usize>,
}

impl Recurrence {
    /// Indices `n` where `f(v_{n+1}) > f(v_n) + M_n/n²` fails.
    pub fn bound_failures(&self, spec: &CounterexampleSpec) -> Vec<usize> {
        (2..self.values.len())
            .filter(|&n| {
                let m = spec.pendant_count(n) as f64;
                !(self.values[n] > self.values[n - 1] + m / (n as f64 * n as f64))
            })
            .collect()
    }
}

/// Continues `f(v_1) = 0`, `f(v_2) = 1` harmonically along the spine with all
/// pendant ends held at zero: `g_1 = 1`, `g_n = g_{n-1} + M_n f(v_n)`,
/// `f(v_{n+1}) = f(v_n) + g_n / n²`.
pub fn counterexample_recurrence(spec: &CounterexampleSpec) -> Result<Recurrence> {
    spec.check()?;
    let mut values = vec![0.0, 1.0];
    let mut fluxes = vec![1.0];
    let mut overflow_at = None;
    for n in 2..spec.spine {
        let fv = values[n - 1];
        let g = fluxes[n - 2] + spec.pendant_count(n) as f64 * fv;
        let next = fv + g / (n as f64 * n as f64);
        if !next.is_finite() || !g.is_finite() {
            overflow_at = Some(n + 1);
            break;
        }
        fluxes.push(g);
        values.push(next);
    }
    Ok(Recurrence { values, fluxes, overflow_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::fixtures::{path3, single_edge, star};
    use crate::families::{build_counterexample, CounterexampleSpec};
    use crate::graph::split_boundary_vertices;

    fn solve_bv<'g>(g: &'g MetricGraph, b: &[f64]) -> HarmonicFunction<'g> {
        solve_dirichlet(&DirichletProblem::from_boundary_values(g, b).unwrap()).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        let l = assemble_laplacian(&single_edge(1.0)).to_dense();
        assert_eq!(l, DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));
        let l = assemble_laplacian(&single_edge(2.0)).to_dense();
        assert_eq!(l, DMatrix::from_row_slice(2, 2, &[0.5, -0.5, -0.5, 0.5]));
        let par = MetricGraph::new(
            vec!["a".into(), "b".into()],
            vec![crate::graph::EdgeSpec::new("e1", "a", "b", 1.0), crate::graph::EdgeSpec::new("e2", "a", "b", 1.0)],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        let lap = assemble_laplacian(&par);
        assert_eq!(lap.to_dense(), DMatrix::from_row_slice(2, 2, &[2.0, -2.0, -2.0, 2.0]));
        assert_eq!(lap.max_row_sum(), 0.0);
    }

    #[test]
    fn solve_examples() {
        let s = star(3, 1.0);
        let f = solve_bv(&s, &[1.0, 0.0, 0.0]);
        assert!((f.value_of("c").unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let p = path3(1.0, 1.0);
        assert!((solve_bv(&p, &[0.0, 1.0]).value_of("b").unwrap() - 0.5).abs() < 1e-15);
        let p = path3(1.0, 3.0);
        assert!((solve_bv(&p, &[0.0, 1.0]).value_of("b").unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let e = single_edge(1.0);
        let f = solve_bv(&e, &[0.0, 1.0]);
        assert_eq!(f.edge_derivative(0, 1).unwrap(), 1.0);
        assert_eq!(f.edge_derivative(0, 0).unwrap(), -1.0);

        let s = star(3, 1.0);
        let f = solve_bv(&s, &[1.0, 0.0, 0.0]);
        let v1 = s.require("v1").unwrap();
        let v2 = s.require("v2").unwrap();
        assert!((f.edge_derivative(s.edge_index("e1").unwrap(), v1).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((f.edge_derivative(s.edge_index("e2").unwrap(), v2).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        assert!(f.edge_derivative(s.edge_index("e2").unwrap(), v1).is_err());
    }

    #[test]
    fn check_examples() {
        let s = star(4, 1.5);
        let f = solve_bv(&s, &[1.0, 0.2, -3.0, 0.5]);
        let r = check_harmonic(&f, 1e-10);
        assert!(r.passed() && r.max_residual < 1e-10);

        let mut bad = f.clone();
        let c = s.require("c").unwrap();
        bad.values[c] += 0.1;
        let r = check_harmonic(&bad, 1e-10);
        assert_eq!(r.flagged, vec![c]);

        let flat = solve_bv(&s, &[2.0; 4]);
        let r = check_harmonic(&flat, 1e-10);
        assert_eq!((r.max_residual, r.energy), (0.0, 0.0));
    }

    #[test]
    fn problem_requires_all_boundary_values() {
        let p = path3(1.0, 1.0);
        let mut data = BTreeMap::from([("a".to_string(), 0.0)]);
        assert!(DirichletProblem::new(&p, &data).is_err());
        data.insert("c".into(), 1.0);
        assert!(DirichletProblem::new(&p, &data).is_ok());
        data.insert("b".into(), 1.0);
        assert!(DirichletProblem::new(&p, &data).is_err());
    }

    #[test]
    fn all_boundary_graph_returns_data() {
        let e = single_edge(2.0);
        let f = solve_bv(&e, &[3.0, 4.0]);
        assert_eq!(f.values, vec![3.0, 4.0]);
    }

    #[test]
    fn split_equivalence() {
        // cycle a-b-c-d-a with chord b-d, boundary {a, c} of degree 2
        let g = MetricGraph::new(
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            vec![
                crate::graph::EdgeSpec::new("1", "a", "b", 1.0),
                crate::graph::EdgeSpec::new("2", "b", "c", 2.0),
                crate::graph::EdgeSpec::new("3", "c", "d", 0.5),
                crate::graph::EdgeSpec::new("4", "d", "a", 1.5),
                crate::graph::EdgeSpec::new("5", "b", "d", 0.7),
            ],
            vec!["a".into(), "c".into()],
        )
        .unwrap();
        let f = solve_bv(&g, &[1.0, -2.0]);
        let sp = split_boundary_vertices(&g);
        let data: Vec<f64> = sp.graph.boundary().iter().map(|&v| f.values[sp.origin[v]]).collect();
        let h = solve_bv(&sp.graph, &data);
        for v in 0..sp.graph.vertex_count() {
            assert!((h.values[v] - f.values[sp.origin[v]]).abs() < 1e-12);
        }
    }

    #[test]
    fn iterative_backend_matches_direct() {
        let spec = crate::families::TreeFamilySpec::new(3, 0.4, 1.0, 4);
        let (g, _) = crate::families::build_kary_tree(&spec).unwrap();
        let b = g.boundary();
        let mut vals = vec![0.0; g.vertex_count()];
        for (i, &v) in b.iter().enumerate() {
            vals[v] = (i % 5) as f64;
        }
        let plain = SolverOptions { tree_reduction: false, ..Default::default() };
        let direct = DirichletSolver::with_fixed(&g, &b, plain).unwrap().solve(&vals).unwrap();
        let opts = SolverOptions { direct_threshold: 0, ..plain };
        let cg = DirichletSolver::with_fixed(&g, &b, opts).unwrap().solve(&vals).unwrap();
        for (x, y) in direct.values.iter().zip(&cg.values) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn tree_reduction_matches_factorization() {
        let spec = crate::families::TreeFamilySpec::new(2, 0.25, 1.0, 6);
        let (g, _) = crate::families::build_kary_tree(&spec).unwrap();
        let root = g.require("t").unwrap();
        let mut fixed = g.boundary();
        fixed.push(g.require("t01").unwrap());
        let mut vals = vec![0.0; g.vertex_count()];
        for (i, &v) in fixed.iter().enumerate() {
            vals[v] = ((i * 7) % 11) as f64 - 5.0;
        }
        let plain = SolverOptions { tree_reduction: false, ..Default::default() };
        let a = DirichletSolver::with_fixed(&g, &fixed, SolverOptions::default()).unwrap().solve(&vals).unwrap();
        let b = DirichletSolver::with_fixed(&g, &fixed, plain).unwrap().solve(&vals).unwrap();
        assert!(a.currents.is_some() && b.currents.is_none());
        for v in 0..g.vertex_count() {
            assert!((a.values[v] - b.values[v]).abs() < 1e-12);
            let scale = g.incident(v).iter().map(|&k| g.edge(k).conductance()).sum::<f64>();
            assert!((a.flux(v) - b.flux(v)).abs() < 1e-12 * scale);
        }
        assert!(a.flux(root).abs() < 1e-12);
        assert!((a.dirichlet_energy() - b.dirichlet_energy()).abs() < 1e-9 * b.dirichlet_energy());
    }

    #[test]
    fn tree_reduction_open_branch() {
        // only `a` is prescribed: the rest of the path floats at its value
        let p = path3(1.0, 2.0);
        let a = p.require("a").unwrap();
        let mut vals = vec![0.0; 3];
        vals[a] = 4.0;
        let f = DirichletSolver::with_fixed(&p, &[a], SolverOptions::default()).unwrap().solve(&vals).unwrap();
        assert_eq!(f.values, vec![4.0; 3]);
        assert_eq!(f.flux(a), 0.0);
    }

    #[test]
    fn recurrence_examples() {
        let spec = CounterexampleSpec::with_power(4, 2);
        let r = counterexample_recurrence(&spec).unwrap();
        assert_eq!(r.values[2], 2.25);
        assert!((r.fluxes[2] - 25.25).abs() < 1e-12);
        assert!((r.values[3] - (2.25 + 25.25 / 9.0)).abs() < 1e-12);
        assert!(r.bound_failures(&spec).is_empty());

        let ones = CounterexampleSpec { spine: 10, pendants: vec![1; 8] };
        let r = counterexample_recurrence(&ones).unwrap();
        assert!(r.values.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn recurrence_overflow_is_reported() {
        let spec = CounterexampleSpec { spine: 400, pendants: vec![usize::MAX / 2; 398] };
        let r = counterexample_recurrence(&spec).unwrap();
        assert!(r.overflow_at.is_some());
        assert!(r.values.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn recurrence_matches_solver() {
        let spec = CounterexampleSpec::with_power(12, 2);
        let r = counterexample_recurrence(&spec).unwrap();
        let g = build_counterexample(&spec).unwrap();
        let mut vals = vec![0.0; g.vertex_count()];
        vals[g.require(&spec.spine_id(12)).unwrap()] = r.values[11];
        let f = DirichletSolver::new(&g).unwrap().solve(&vals).unwrap();
        for n in 1..=12 {
            let x = f.value_of(&spec.spine_id(n)).unwrap();
            assert!((x - r.values[n - 1]).abs() <= 1e-10 * r.values[n - 1].abs().max(1.0));
        }
    }
}
