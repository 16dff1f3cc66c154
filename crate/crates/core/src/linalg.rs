//! Sparse symmetric positive definite solvers for the interior block of a
//! graph Laplacian.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// Symmetric matrix stored as a diagonal plus one sorted row of
/// off-diagonal entries per index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymmetricSparse {
    pub diag: Vec<f64>,
    pub rows: Vec<Vec<(usize, f64)>>,
}

impl SymmetricSparse {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        self.diag
            .iter()
            .zip(&self.rows)
            .zip(x)
            .map(|((d, row), xi)| d * xi + row.iter().map(|&(j, a)| a * x[j]).sum::<f64>())
            .collect()
    }
}

/// LDLᵀ factorization with a greedy minimum-degree elimination order.
///
/// Trees eliminate leaf-first and produce no fill.
#[derive(Clone, Debug)]
pub struct SparseCholesky {
    order: Vec<usize>,
    /// For pivot `p`, the multipliers `L[i, p]` for rows eliminated after `p`.
    cols: Vec<Vec<(usize, f64)>>,
    d: Vec<f64>,
}

impl SparseCholesky {
    /// Fails with the offending index if a pivot is not positive.
    pub fn factor(a: &SymmetricSparse) -> std::result::Result<Self, usize> {
        let n = a.dim();
        let mut work: Vec<BTreeMap<usize, f64>> =
            a.rows.iter().map(|r| r.iter().copied().filter(|&(_, v)| v != 0.0).collect()).collect();
        let mut diag = a.diag.clone();
        let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|i| (work[i].len(), i)).collect();
        let mut order = Vec::with_capacity(n);
        let mut cols = vec![Vec::new(); n];
        let mut d = vec![0.0; n];

        while let Some((_, p)) = queue.pop_first() {
            let pivot = diag[p];
            if !(pivot > 0.0) || !pivot.is_finite() {
                return Err(p);
            }
            let row = std::mem::take(&mut work[p]);
            let nbrs: Vec<(usize, f64)> = row.into_iter().collect();
            for &(i, _) in &nbrs {
                queue.remove(&(work[i].len(), i));
                work[i].remove(&p);
            }
            for (x, &(i, ai)) in nbrs.iter().enumerate() {
                diag[i] -= ai * ai / pivot;
                for &(j, aj) in &nbrs[x + 1..] {
                    let upd = ai * aj / pivot;
                    *work[i].entry(j).or_insert(0.0) -= upd;
                    *work[j].entry(i).or_insert(0.0) -= upd;
                }
            }
            for &(i, _) in &nbrs {
                queue.insert((work[i].len(), i));
            }
            cols[p] = nbrs.into_iter().map(|(i, ai)| (i, ai / pivot)).collect();
            d[p] = pivot;
            order.push(p);
        }
        Ok(Self { order, cols, d })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        for &p in &self.order {
            let xp = x[p];
            if xp != 0.0 {
                for &(i, l) in &self.cols[p] {
                    x[i] -= l * xp;
                }
            }
        }
        for (xi, di) in x.iter_mut().zip(&self.d) {
            *xi /= di;
        }
        for &p in self.order.iter().rev() {
            let s: f64 = self.cols[p].iter().map(|&(i, l)| l * x[i]).sum();
            x[p] -= s;
        }
        x
    }

    pub fn fill(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }
}

/// Outcome of a conjugate-gradient run.
#[derive(Clone, Debug)]
pub struct CgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub relative_residual: f64,
}

/// Jacobi-preconditioned conjugate gradient.
pub fn conjugate_gradient(a: &SymmetricSparse, b: &[f64], tol: f64, max_iter: usize) -> Result<CgOutcome> {
    let n = a.dim();
    let bnorm = norm(b);
    if bnorm == 0.0 {
        return Ok(CgOutcome { x: vec![0.0; n], iterations: 0, relative_residual: 0.0 });
    }
    let inv_diag: Vec<f64> = a.diag.iter().map(|d| 1.0 / d).collect();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(r, m)| r * m).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut rel = 1.0;
    for it in 0..max_iter {
        let ap = a.mul(&p);
        let alpha = rz / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        rel = norm(&r) / bnorm;
        if rel <= tol {
            // recompute the true residual to guard against drift
            let true_r: Vec<f64> = a.mul(&x).iter().zip(b).map(|(ax, b)| b - ax).collect();
            rel = norm(&true_r) / bnorm;
            if rel <= tol {
                return Ok(CgOutcome { x, iterations: it + 1, relative_residual: rel });
            }
            r = true_r;
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::NoConvergence { residual: rel, iterations: max_iter })
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
