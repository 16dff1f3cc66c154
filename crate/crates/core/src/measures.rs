//! Measures on the cells of a nested partition.
//!
//! Two constructions are provided. The equal-splitting measure gives the
//! whole set mass one and divides the mass of every cell equally among its
//! children. The exit measure from a vertex `w` holds `w` at potential one and
//! the boundary at zero; a cell receives the harmonic current flowing into
//! its boundary vertices. Its total is the effective conductance between `w`
//! and the boundary.

use crate::error::{Error, Result};
use crate::families::{build_kary_tree, Address, AddressTable, TreeFamilySpec};
use crate::graph::MetricGraph;
use crate::harmonic::{DirichletSolver, HarmonicFunction, SolverOptions};
use crate::partition::{assign_leaves_to_cells, tree_cells_at_depth, BoundarySet, CellAssignment, CellTree};

/// Mass per cell for every level of a [`CellTree`].
#[derive(Clone, Debug, PartialEq)]
pub struct CellMeasure {
    pub levels: Vec<Vec<f64>>,
}

impl CellMeasure {
    /// Sums finest-cell masses up the tree.
    pub fn from_finest(tree: &CellTree, finest: &[f64]) -> Result<Self> {
        let n = tree.finest().len();
        if finest.len() != n {
            return Err(Error::Dimension { expected: n, got: finest.len() });
        }
        let mut levels = vec![Vec::new(); tree.levels.len()];
        levels[tree.depth()] = finest.to_vec();
        for j in (0..tree.depth()).rev() {
            let mut m = vec![0.0; tree.level(j).len()];
            for (c, &p) in tree.parent[j + 1].iter().enumerate() {
                m[p] += levels[j + 1][c];
            }
            levels[j] = m;
        }
        Ok(Self { levels })
    }

    /// Number of points per cell.
    pub fn counting(tree: &CellTree) -> Self {
        Self { levels: tree.levels.iter().map(|p| p.cells().iter().map(|c| c.len() as f64).collect()).collect() }
    }

    pub fn level(&self, j: usize) -> &[f64] {
        &self.levels[j]
    }

    pub fn finest(&self) -> &[f64] {
        self.levels.last().unwrap()
    }

    pub fn total(&self) -> f64 {
        self.levels[0].iter().sum()
    }

    /// Largest |mass(parent) - Σ mass(children)| over the tree.
    pub fn additivity_error(&self, tree: &CellTree) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 1..self.levels.len() {
            let mut sums = vec![0.0; self.levels[j - 1].len()];
            for (c, &p) in tree.parent[j].iter().enumerate() {
                sums[p] += self.levels[j][c];
            }
            for (s, m) in sums.iter().zip(&self.levels[j - 1]) {
                worst = worst.max((s - m).abs());
            }
        }
        worst
    }

    pub fn min_mass(&self) -> f64 {
        self.levels.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }

    /// Every cell carries mass above `rel · total`.
    pub fn is_positive(&self, rel: f64) -> bool {
        self.min_mass() > rel * self.total()
    }

    /// Scaled to total mass one.
    pub fn normalized(&self) -> Self {
        let t = self.total();
        Self { levels: self.levels.iter().map(|l| l.iter().map(|m| m / t).collect()).collect() }
    }
}

/// Mass one on the root, split equally among children at every level.
pub fn equal_split_measure(tree: &CellTree) -> CellMeasure {
    let mut levels = vec![vec![1.0]];
    for j in 1..tree.levels.len() {
        let parents = &tree.parent[j];
        let mut fanout = vec![0usize; tree.level(j - 1).len()];
        for &p in parents {
            fanout[p] += 1;
        }
        let next = parents.iter().map(|&p| levels[j - 1][p] / fanout[p] as f64).collect();
        levels.push(next);
    }
    CellMeasure { levels }
}

/// Exit measure on one partition level.
#[derive(Clone, Debug, PartialEq)]
pub struct ExitMeasure {
    pub masses: Vec<f64>,
    /// Current leaving the source vertex.
    pub source_flux: f64,
}

impl ExitMeasure {
    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Harmonic-measure convention: total one.
    pub fn normalized(&self) -> Vec<f64> {
        let t = self.total();
        self.masses.iter().map(|m| m / t).collect()
    }
}

/// Harmonic extension of the indicator of `w` with the boundary held at zero.
pub fn unit_potential<'g>(g: &'g MetricGraph, w: usize) -> Result<HarmonicFunction<'g>> {
    if g.is_boundary(w) {
        return Err(Error::InvalidArgument(format!("source `{}` is a boundary vertex", g.vertex_id(w))));
    }
    let mut fixed = g.boundary();
    if fixed.is_empty() {
        return Err(Error::InvalidArgument("graph has an empty boundary".into()));
    }
    fixed.push(w);
    let solver = DirichletSolver::with_fixed(g, &fixed, SolverOptions::default())?;
    let mut values = vec![0.0; g.vertex_count()];
    values[w] = 1.0;
    solver.solve(&values)
}

/// Current into each cell from a unit potential at `w`: for every boundary
/// vertex, `Σ_e (f(neighbour) - f(v)) / l_e`, summed over the cell.
pub fn exit_measure(g: &MetricGraph, w: usize, assignment: &CellAssignment) -> Result<ExitMeasure> {
    let f = unit_potential(g, w)?;
    exit_measure_from(&f, w, assignment)
}

fn exit_measure_from(f: &HarmonicFunction<'_>, w: usize, assignment: &CellAssignment) -> Result<ExitMeasure> {
    let g = f.graph;
    let mut masses = vec![0.0; assignment.cell_count];
    for v in g.boundary() {
        let c = assignment.cell_of[v]
            .ok_or_else(|| Error::NoCell(g.vertex_id(v).to_string()))?;
        masses[c] -= f.flux(v);
    }
    let source_flux = f.flux(w);
    let floor = 1e-14 * source_flux.abs();
    if let Some(c) = masses.iter().position(|&m| !(m > floor)) {
        return Err(Error::ZeroMass(c));
    }
    Ok(ExitMeasure { masses, source_flux })
}

/// Exit measure evaluated independently on every level of `tree`.
pub fn exit_cell_measure(
    g: &MetricGraph,
    w: usize,
    addresses: Option<&AddressTable>,
    points: &BoundarySet,
    tree: &CellTree,
) -> Result<CellMeasure> {
    let f = unit_potential(g, w)?;
    let levels = (0..tree.levels.len())
        .map(|j| {
            let a = assign_leaves_to_cells(g, addresses, points, tree, j)?;
            Ok(exit_measure_from(&f, w, &a)?.masses)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellMeasure { levels })
}

/// One depth of a truncation sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureStep {
    pub depth: usize,
    pub masses: Vec<f64>,
    /// Max cellwise change from the previous depth.
    pub change: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureLimit {
    pub masses: Vec<f64>,
    pub depth: usize,
    pub converged: bool,
    pub trace: Vec<MeasureStep>,
}

pub(crate) fn check_schedule(depths: &[usize], tol: f64) -> Result<()> {
    if depths.is_empty() || depths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("depth schedule must be nonempty and strictly increasing".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Exit measure on level-`level` cells over a sequence of truncation depths,
/// stopping at the first depth whose max cellwise change is below `tol`.
pub fn exit_measure_limit(
    family: &TreeFamilySpec,
    source: &Address,
    level: usize,
    depths: &[usize],
    tol: f64,
) -> Result<MeasureLimit> {
    check_schedule(depths, tol)?;
    let mut trace: Vec<MeasureStep> = Vec::new();
    for &depth in depths {
        if source.len() >= depth {
            return Err(Error::InvalidArgument(format!("source address is not interior at depth {depth}")));
        }
        let (g, assignment) = tree_cells_at_depth(family, level, depth)?;
        let w = g.require(&family.vertex_id(source))?;
        let masses = exit_measure(&g, w, &assignment)?.masses;
        let change = trace.last().map(|p| max_abs_diff(&p.masses, &masses));
        trace.push(MeasureStep { depth, masses: masses.clone(), change });
        if change.is_some_and(|c| c < tol) {
            return Ok(MeasureLimit { masses, depth, converged: true, trace });
        }
    }
    let last = trace.last().unwrap().clone();
    Ok(MeasureLimit { masses: last.masses, depth: last.depth, converged: false, trace })
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Smallest C with `C·ν₁ ≥ ν₂` on every cell.
pub fn dominance_constant(nu1: &[f64], nu2: &[f64]) -> Result<f64> {
    if nu1.len() != nu2.len() {
        return Err(Error::Dimension { expected: nu1.len(), got: nu2.len() });
    }
    if let Some(c) = nu1.iter().position(|&m| !(m > 0.0)) {
        return Err(Error::ZeroMass(c));
    }
    Ok(nu1.iter().zip(nu2).map(|(a, b)| b / a).fold(f64::NEG_INFINITY, f64::max))
}

/// `1 / f₁(w₂)`, where f₁ is the unit potential from `w1`. Any C above this
/// value satisfies `C·ν_{w₁} ≥ ν_{w₂}` by the maximum principle.
pub fn harmonic_dominance_bound(g: &MetricGraph, w1: usize, w2: usize) -> Result<f64> {
    let f1 = unit_potential(g, w1)?;
    Ok(1.0 / f1.value(w2))
}

/// Builds the depth-`depth` truncation and returns the exit measure from the
/// vertex at `source` on level-`level` cells.
pub fn tree_exit_measure(family: &TreeFamilySpec, source: &Address, level: usize, depth: usize) -> Result<ExitMeasure> {
    let (g, a) = tree_cells_at_depth(family, level, depth)?;
    let w = g.require(&family.vertex_id(source))?;
    exit_measure(&g, w, &a)
}

/// Exit measure on the full canonical cell tree of a truncation.
pub fn tree_exit_cell_measure(family: &TreeFamilySpec, source: &Address) -> Result<(CellTree, CellMeasure)> {
    let points = BoundarySet::from_tree(family)?;
    let tree = crate::partition::canonical_nested_partitions(&points);
    let (g, table) = build_kary_tree(family)?;
    let w = g.require(&family.vertex_id(source))?;
    let m = exit_cell_measure(&g, w, Some(&table), &points, &tree)?;
    Ok((tree, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::fixtures::star;
    use crate::graph::{EdgeSpec, MetricGraph};
    use crate::partition::{canonical_nested_partitions, Partition};

    fn quarter() -> TreeFamilySpec {
        TreeFamilySpec::new(2, 0.25, 1.0, 3)
    }

    #[test]
    fn equal_split_on_dyadic_tree() {
        let t = canonical_nested_partitions(&BoundarySet::from_tree(&quarter()).unwrap());
        let rho = equal_split_measure(&t);
        for (k, level) in rho.levels.iter().enumerate() {
            assert!(level.iter().all(|&m| m == 0.5f64.powi(k as i32)));
        }
        assert_eq!(rho.finest(), &[0.125; 8]);
        assert_eq!(rho.additivity_error(&t), 0.0);
        assert!(rho.is_positive(0.0));
    }

    #[test]
    fn equal_split_with_three_children() {
        // points 0..4: level 1 = {0,1,2} {3}; level 2 = singletons
        let pts: [f64; 4] = [0.0, 1.0, 2.0, 50.0];
        let n = pts.len();
        let b = BoundarySet::new(
            (0..n).map(|i| format!("p{i}")).collect(),
            (0..n * n).map(|k| (pts[k / n] - pts[k % n]).abs()).collect(),
        )
        .unwrap();
        let mut t = canonical_nested_partitions(&b);
        assert_eq!(t.levels[1], Partition::from_cells(vec![vec![0, 1, 2], vec![3]]));
        let rho = equal_split_measure(&t);
        assert_eq!(rho.levels[1], vec![0.5, 0.5]);
        assert_eq!(rho.levels[2], vec![0.5 / 3.0, 0.5 / 3.0, 0.5 / 3.0, 0.5]);
        // relabelling children does not change their masses
        t.levels[2] = Partition::from_cells(vec![vec![2], vec![0], vec![1], vec![3]]);
        assert_eq!(equal_split_measure(&t).levels[2], rho.levels[2]);
    }

    #[test]
    fn star_exit_measure() {
        let s = star(3, 1.0);
        let w = s.require("c").unwrap();
        let nu = exit_measure(&s, w, &CellAssignment::singletons(&s)).unwrap();
        for m in &nu.masses {
            assert!((m - 1.0).abs() < 1e-15);
        }
        assert!((nu.total() - 3.0).abs() < 1e-14);
        assert!((nu.source_flux - 3.0).abs() < 1e-14);
        assert!(exit_measure(&s, s.require("v1").unwrap(), &CellAssignment::singletons(&s)).is_err());
    }

    #[test]
    fn single_edge_exit_measure() {
        // w is a pendant interior vertex here; the solve does not need validity
        let g = MetricGraph::from_parts(
            vec!["b".into(), "w".into()],
            vec![EdgeSpec::new("e", "w", "b", 2.0)],
            vec!["b".into()],
        )
        .unwrap();
        let nu = exit_measure(&g, g.require("w").unwrap(), &CellAssignment::singletons(&g)).unwrap();
        assert_eq!(nu.masses, vec![0.5]);
    }

    #[test]
    fn deep_tree_root_subtrees() {
        let nu = tree_exit_measure(&quarter(), &vec![], 1, 12).unwrap();
        for m in &nu.masses {
            assert!((m - 3.5).abs() < 1e-8);
        }
        assert!((nu.total() - 7.0).abs() < 1e-8);
        assert!((nu.source_flux - nu.total()).abs() < 1e-10);
    }

    #[test]
    fn limit_examples() {
        let fam = quarter();
        let depths: Vec<usize> = (4..=12).collect();
        let lim = exit_measure_limit(&fam, &vec![], 1, &depths, 1e-8).unwrap();
        assert!(lim.converged);
        assert!(lim.masses.iter().all(|m| (m - 3.5).abs() < 1e-8));
        let lim0 = exit_measure_limit(&fam, &vec![], 0, &depths, 1e-8).unwrap();
        assert!((lim0.masses[0] - 7.0).abs() < 1e-8);
        let loose = exit_measure_limit(&fam, &vec![], 1, &depths, 1.0).unwrap();
        assert_eq!(loose.depth, 5);
        assert_eq!(loose.trace.len(), 2);
        assert!(exit_measure_limit(&fam, &vec![], 1, &[5, 4], 1.0).is_err());
        assert!(exit_measure_limit(&fam, &vec![], 1, &[4, 5], 0.0).is_err());
        let short = exit_measure_limit(&fam, &vec![], 1, &[4, 5], 1e-15).unwrap();
        assert!(!short.converged);
    }

    #[test]
    fn dominance_examples() {
        let a = [1.0, 2.0, 0.5];
        assert_eq!(dominance_constant(&a, &a).unwrap(), 1.0);
        let b: Vec<f64> = a.iter().map(|x| 2.0 * x).collect();
        assert_eq!(dominance_constant(&a, &b).unwrap(), 2.0);
        assert!(dominance_constant(&[0.0, 1.0], &[1.0, 1.0]).is_err());
        assert!(dominance_constant(&[1.0], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn exit_cell_measure_is_additive() {
        let (tree, nu) = tree_exit_cell_measure(&quarter().with_depth(5), &vec![]).unwrap();
        assert!(nu.additivity_error(&tree) < 1e-12);
        assert!(nu.is_positive(1e-14));
        let agg = CellMeasure::from_finest(&tree, nu.finest()).unwrap();
        for (x, y) in agg.levels.iter().flatten().zip(nu.levels.iter().flatten()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
