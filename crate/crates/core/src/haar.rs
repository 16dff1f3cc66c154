//! Generalized Haar bases for a nested partition and a positive cell measure.
//!
//! The first basis function is the normalized constant. Each cell E with
//! children E(1), …, E(M) then contributes M - 1 detail functions, obtained
//! by Gram–Schmidt on 1_E, 1_{E(1)}, …, 1_{E(M-1)} in L²(μ) and discarding
//! the first (constant on E) result. Functions are stored by their values on
//! the finest cells.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::measures::CellMeasure;
use crate::partition::CellTree;

#[derive(Clone, Debug, PartialEq)]
pub struct HaarBasis {
    /// Values on the finest cells, one vector per basis function.
    pub functions: Vec<Vec<f64>>,
    /// Partition level at which each function first appears; 0 for the
    /// constant. A level-n function is constant on level-n cells.
    pub levels: Vec<usize>,
    /// Cell (level, index) a detail function is supported on.
    pub support: Vec<Option<(usize, usize)>>,
    /// μ of each finest cell.
    pub weights: Vec<f64>,
}

impl HaarBasis {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// `∫ f g dμ`.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        f.iter().zip(g).zip(&self.weights).map(|((a, b), w)| a * b * w).sum()
    }

    pub fn gram(&self) -> DMatrix<f64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| self.inner(&self.functions[i], &self.functions[j]))
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.weights.len() {
            return Err(Error::Dimension { expected: self.weights.len(), got: n });
        }
        Ok(())
    }

    /// Coefficients `⟨F, χ_k⟩_μ`.
    pub fn analyze(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(f.len())?;
        Ok(self.functions.iter().map(|chi| self.inner(f, chi)).collect())
    }

    pub fn synthesize(&self, coefficients: &[f64]) -> Result<Vec<f64>> {
        if coefficients.len() != self.len() {
            return Err(Error::Dimension { expected: self.len(), got: coefficients.len() });
        }
        let mut out = vec![0.0; self.weights.len()];
        for (c, chi) in coefficients.iter().zip(&self.functions) {
            if *c != 0.0 {
                for (o, x) in out.iter_mut().zip(chi) {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }
}

/// Gram–Schmidt against `basis` (orthonormal in the weighted product), run
/// twice to keep drift below rounding level.
fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>], w: &[f64]) {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).zip(w).map(|((x, y), m)| x * y * m).sum::<f64>();
    for _ in 0..2 {
        for q in basis {
            let c = dot(v, q);
            for (x, y) in v.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
    }
}

pub fn build_haar_basis(tree: &CellTree, mu: &CellMeasure) -> Result<HaarBasis> {
    let weights = mu.finest().to_vec();
    if weights.len() != tree.finest().len() {
        return Err(Error::Dimension { expected: tree.finest().len(), got: weights.len() });
    }
    for level in &mu.levels {
        if let Some(c) = level.iter().position(|&m| !(m > 0.0)) {
            return Err(Error::ZeroMass(c));
        }
    }
    // child masses are recomputed from the finest level so that local and
    // global inner products agree exactly
    let masses = CellMeasure::from_finest(tree, &weights)?;
    let total: f64 = weights.iter().sum();

    let mut functions = vec![vec![total.powf(-0.5); weights.len()]];
    let mut levels = vec![0];
    let mut support = vec![None];

    for n in 0..tree.depth() {
        let owner = tree.ancestor_at(n + 1);
        for e in 0..tree.level(n).len() {
            let children = tree.children(n, e);
            if children.len() < 2 {
                continue;
            }
            let w: Vec<f64> = children.iter().map(|&c| masses.levels[n + 1][c]).collect();
            let mass: f64 = w.iter().sum();
            let mut local = vec![vec![mass.powf(-0.5); children.len()]];
            for m in 0..children.len() - 1 {
                let mut v = vec![0.0; children.len()];
                v[m] = 1.0;
                orthogonalize(&mut v, &local, &w);
                let norm = v.iter().zip(&w).map(|(x, m)| x * x * m).sum::<f64>().sqrt();
                let first = v.iter().copied().find(|x| x.abs() > 1e-300).unwrap_or(1.0);
                let scale = first.signum() / norm;
                v.iter_mut().for_each(|x| *x *= scale);
                local.push(v);
            }
            let slot: std::collections::HashMap<usize, usize> =
                children.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            for v in &local[1..] {
                let f = owner.iter().map(|c| slot.get(c).map_or(0.0, |&k| v[k])).collect();
                functions.push(f);
                levels.push(n + 1);
                support.push(Some((n, e)));
            }
        }
    }
    Ok(HaarBasis { functions, levels, support, weights })
}

/// Multiplies each basis coefficient by 0 (constant) or by `1/α(n)` for a
/// detail function of level n; `jumps[n - 1]` is α(n).
pub fn multiresolution_operator(basis: &HaarBasis, jumps: &[f64], f: &[f64]) -> Result<Vec<f64>> {
    let top = basis.levels.iter().copied().max().unwrap_or(0);
    if jumps.len() < top {
        return Err(Error::Dimension { expected: top, got: jumps.len() });
    }
    let c = basis.analyze(f)?;
    let scaled: Vec<f64> = c
        .iter()
        .zip(&basis.levels)
        .map(|(c, &n)| if n == 0 { 0.0 } else { c / jumps[n - 1] })
        .collect();
    basis.synthesize(&scaled)
}
