//! Dirichlet-to-Neumann maps.
//!
//! For boundary data F with harmonic extension f, the μ-weighted map is
//! `Λ_μ F(v) = μ(v)⁻¹ Σ_{e∼v} ∂_ν f_e(v)`. It is self-adjoint for
//! `⟨F, G⟩_μ = μ(∂)⁻¹ Σ F(v) G(v) μ(v)` and nonnegative. Given a partition of
//! the boundary into cells with weights μ(E), the compressed map acts on
//! cellwise-constant data and sums the boundary current over each cell.
//!
//! Matrices are assembled column by column: one indicator solve per basis
//! element against a single shared factorization.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{Address, TreeFamilySpec};
use crate::graph::MetricGraph;
use crate::harmonic::DirichletSolver;
use crate::measures::{check_schedule, exit_measure, max_abs_diff};
use crate::partition::{tree_cells_at_depth, CellAssignment};

/// Positive weights on boundary vertices (or cells), in basis order.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryMeasureMu {
    weights: Vec<f64>,
}

impl BoundaryMeasureMu {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument(format!("weight {i} must be positive and finite, got {}", weights[i])));
        }
        Ok(Self { weights })
    }

    pub fn counting(n: usize) -> Self {
        Self { weights: vec![1.0; n] }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `⟨F, G⟩_μ = μ(∂)⁻¹ Σ F(v) G(v) μ(v)`.
pub fn inner_product_mu(f: &[f64], g: &[f64], mu: &BoundaryMeasureMu) -> Result<f64> {
    if f.len() != mu.len() || g.len() != mu.len() {
        return Err(Error::Dimension { expected: mu.len(), got: f.len().min(g.len()) });
    }
    let s: f64 = f.iter().zip(g).zip(mu.weights()).map(|((a, b), w)| a * b * w).sum();
    Ok(s / mu.total())
}

/// Square operator on boundary vertices or cells.
#[derive(Clone, Debug, PartialEq)]
pub struct DtnMatrix {
    /// Basis labels (vertex ids or cell labels).
    pub labels: Vec<String>,
    pub entries: DMatrix<f64>,
    pub measure: BoundaryMeasureMu,
}

/// Structural checks of a [`DtnMatrix`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DtnReport {
    /// max |(DΛ)_{ij} - (DΛ)_{ji}|.
    pub symmetry_error: f64,
    /// max |(Λ𝟙)_i|.
    pub kernel_error: f64,
    /// Smallest eigenvalue of D^{1/2} Λ D^{-1/2}.
    pub min_eigenvalue: f64,
}

impl DtnReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.symmetry_error < tol && self.kernel_error < tol && self.min_eigenvalue >= -tol
    }
}

impl DtnMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        (&self.entries * DVector::from_column_slice(f)).iter().copied().collect()
    }

    pub fn symmetry_error(&self) -> f64 {
        let w = self.measure.weights();
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max((w[i] * self.entries[(i, j)] - w[j] * self.entries[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn kernel_error(&self) -> f64 {
        self.entries.row_iter().map(|r| r.sum().abs()).fold(0.0, f64::max)
    }

    /// D^{1/2} Λ D^{-1/2}, symmetrized.
    pub fn symmetrized(&self) -> DMatrix<f64> {
        let s: Vec<f64> = self.measure.weights().iter().map(|w| w.sqrt()).collect();
        let n = self.dim();
        let m = DMatrix::from_fn(n, n, |i, j| s[i] * self.entries[(i, j)] / s[j]);
        (&m + m.transpose()) * 0.5
    }

    pub fn min_eigenvalue(&self) -> f64 {
        if self.dim() == 0 {
            return 0.0;
        }
        self.symmetrized().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn report(&self) -> DtnReport {
        DtnReport {
            symmetry_error: self.symmetry_error(),
            kernel_error: self.kernel_error(),
            min_eigenvalue: self.min_eigenvalue(),
        }
    }

    pub fn max_abs_diff(&self, other: &DtnMatrix) -> f64 {
        (&self.entries - &other.entries).amax()
    }
}

/// Λ_μ on the boundary vertices of `g` (boundary order).
pub fn dtn_matrix(g: &MetricGraph, mu: &BoundaryMeasureMu) -> Result<DtnMatrix> {
    let b = g.boundary();
    if mu.len() != b.len() {
        return Err(Error::Dimension { expected: b.len(), got: mu.len() });
    }
    let solver = DirichletSolver::new(g)?;
    let cols: Vec<Vec<f64>> = (0..b.len())
        .into_par_iter()
        .map(|j| {
            let mut values = vec![0.0; g.vertex_count()];
            values[b[j]] = 1.0;
            let f = solver.solve(&values)?;
            Ok(b.iter().zip(mu.weights()).map(|(&v, w)| f.flux(v) / w).collect())
        })
        .collect::<Result<_>>()?;
    let n = b.len();
    let entries = DMatrix::from_fn(n, n, |i, j| cols[j][i]);
    Ok(DtnMatrix { labels: g.boundary_ids(), entries, measure: mu.clone() })
}

/// Λ_{ℰ,μ} on the cells of `assignment`, with cell weights μ(E).
pub fn compressed_dtn(g: &MetricGraph, assignment: &CellAssignment, cell_weights: &[f64]) -> Result<DtnMatrix> {
    let n = assignment.cell_count;
    if cell_weights.len() != n {
        return Err(Error::Dimension { expected: n, got: cell_weights.len() });
    }
    let mu = BoundaryMeasureMu::new(cell_weights.to_vec())?;
    let members = assignment.members();
    if let Some(c) = members.iter().position(Vec::is_empty) {
        return Err(Error::InvalidArgument(format!("cell {c} is empty")));
    }
    if let Some(v) = g.boundary().into_iter().find(|&v| assignment.cell_of[v].is_none()) {
        return Err(Error::NoCell(g.vertex_id(v).to_string()));
    }
    let solver = DirichletSolver::new(g)?;
    let cols: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|m| {
            let mut values = vec![0.0; g.vertex_count()];
            for &v in &members[m] {
                values[v] = 1.0;
            }
            let f = solver.solve(&values)?;
            Ok(members
                .iter()
                .zip(cell_weights)
                .map(|(cell, w)| cell.iter().map(|&v| f.flux(v)).sum::<f64>() / w)
                .collect())
        })
        .collect::<Result<_>>()?;
    let entries = DMatrix::from_fn(n, n, |i, j| cols[j][i]);
    let labels = members.iter().map(|c| g.vertex_id(c[0]).to_string()).collect();
    Ok(DtnMatrix { labels, entries, measure: mu })
}

/// Cell weights for the truncation-limit procedure.
#[derive(Clone, Debug, PartialEq)]
pub enum CellWeights {
    /// Exit measure from the vertex at this address.
    Exit(Address),
    /// Number of truncation leaves in the cell.
    Counting,
    /// Equal splitting: every level-j cell of a k-ary tree gets k^{-j}.
    Rho,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DtnStep {
    pub depth: usize,
    pub matrix: DtnMatrix,
    pub change: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DtnLimit {
    pub matrix: DtnMatrix,
    pub depth: usize,
    pub converged: bool,
    pub trace: Vec<DtnStep>,
}

impl DtnLimit {
    pub fn changes(&self) -> Vec<f64> {
        self.trace.iter().filter_map(|s| s.change).collect()
    }
}

/// Compressed map on level-`level` cells of a truncation.
pub fn tree_compressed_dtn(family: &TreeFamilySpec, level: usize, depth: usize, weights: &CellWeights) -> Result<DtnMatrix> {
    let (g, a) = tree_cells_at_depth(family, level, depth)?;
    let w = match weights {
        CellWeights::Exit(source) => {
            if source.len() >= depth {
                return Err(Error::InvalidArgument(format!("source address is not interior at depth {depth}")));
            }
            exit_measure(&g, g.require(&family.vertex_id(source))?, &a)?.masses
        }
        CellWeights::Counting => a.members().iter().map(|m| m.len() as f64).collect(),
        CellWeights::Rho => vec![1.0 / a.cell_count as f64; a.cell_count],
    };
    let mut m = compressed_dtn(&g, &a, &w)?;
    m.labels = crate::families::words(family.arity, level).iter().map(|x| family.vertex_id(x)).collect();
    Ok(m)
}

/// Compressed maps on successive truncations, stopping once consecutive
/// matrices differ by less than `tol` in max norm.
pub fn compressed_dtn_limit(
    family: &TreeFamilySpec,
    level: usize,
    depths: &[usize],
    weights: &CellWeights,
    tol: f64,
) -> Result<DtnLimit> {
    check_schedule(depths, tol)?;
    let mut trace: Vec<DtnStep> = Vec::new();
    for &depth in depths {
        let matrix = tree_compressed_dtn(family, level, depth, weights)?;
        let change = trace.last().map(|p| max_abs_diff(p.matrix.entries.as_slice(), matrix.entries.as_slice()));
        trace.push(DtnStep { depth, matrix: matrix.clone(), change });
        if change.is_some_and(|c| c < tol) {
            return Ok(DtnLimit { matrix, depth, converged: true, trace });
        }
    }
    let last = trace.last().unwrap().clone();
    Ok(DtnLimit { matrix: last.matrix, depth: last.depth, converged: false, trace })
}

/// Returns `(μ(∂)·⟨Λ_μF, F⟩_μ, Σ_e Δf²/l_e)`; the two agree for harmonic f.
pub fn quadratic_form_check(g: &MetricGraph, mu: &BoundaryMeasureMu, data: &[f64]) -> Result<(f64, f64)> {
    let b = g.boundary();
    if data.len() != b.len() || mu.len() != b.len() {
        return Err(Error::Dimension { expected: b.len(), got: data.len() });
    }
    let mut values = vec![0.0; g.vertex_count()];
    for (&v, &x) in b.iter().zip(data) {
        values[v] = x;
    }
    let f = DirichletSolver::new(g)?.solve(&values)?;
    let lambda_f: Vec<f64> = b.iter().zip(mu.weights()).map(|(&v, w)| f.flux(v) / w).collect();
    let form = mu.total() * inner_product_mu(&lambda_f, data, mu)?;
    Ok((form, f.dirichlet_energy()))
}
