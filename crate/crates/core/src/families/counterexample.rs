use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, MetricGraph};

use super::tree::DEFAULT_VERTEX_CAP;

/// Spine `v_1 … v_N` with `d(v_n, v_{n+1}) = 1/n²` and `M_n` unit-length
/// pendant edges at each `v_n`, `2 ≤ n < N`.
///
/// The truncation keeps `v_N` on the boundary as a stand-in for the limit
/// point of the spine.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleSpec {
    pub spine: usize,
    /// `pendants[n - 2]` is `M_n` for `n = 2..N`.
    pub pendants: Vec<usize>,
}

impl CounterexampleSpec {
    /// `M_n = n^exponent`.
    pub fn with_power(spine: usize, exponent: u32) -> Self {
        let pendants = (2..spine.max(2)).map(|n| n.saturating_pow(exponent)).collect();
        Self { spine, pendants }
    }

    pub fn pendant_count(&self, n: usize) -> usize {
        self.pendants[n - 2]
    }

    pub fn check(&self) -> Result<()> {
        if self.spine < 3 {
            return Err(Error::InvalidArgument(format!("spine needs at least 3 vertices, got {}", self.spine)));
        }
        if self.pendants.len() != self.spine - 2 {
            return Err(Error::Dimension { expected: self.spine - 2, got: self.pendants.len() });
        }
        if let Some(i) = self.pendants.iter().position(|&m| m == 0) {
            return Err(Error::InvalidArgument(format!("M_{} must be positive", i + 2)));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.pendants.iter().fold(self.spine, |acc, &m| acc.saturating_add(m))
    }

    fn width(&self) -> usize {
        self.spine.to_string().len()
    }

    pub fn spine_id(&self, n: usize) -> String {
        format!("v{n:0w$}", w = self.width())
    }

    pub fn pendant_id(&self, n: usize, m: usize) -> String {
        let mw = self.pendants.iter().max().copied().unwrap_or(1).to_string().len();
        format!("w{n:0w$}_{m:0mw$}", w = self.width())
    }

    /// Length of the spine edge `(v_n, v_{n+1})`.
    pub fn spine_length(n: usize) -> f64 {
        1.0 / (n as f64 * n as f64)
    }
}

pub fn build_counterexample(spec: &CounterexampleSpec) -> Result<MetricGraph> {
    build_counterexample_capped(spec, DEFAULT_VERTEX_CAP)
}

pub fn build_counterexample_capped(spec: &CounterexampleSpec, cap: usize) -> Result<MetricGraph> {
    spec.check()?;
    let requested = spec.vertex_count();
    if requested > cap {
        return Err(Error::VertexCap { requested, cap });
    }
    let n_max = spec.spine;
    let mut vertices: Vec<String> = (1..=n_max).map(|n| spec.spine_id(n)).collect();
    let mut boundary = vec![spec.spine_id(1), spec.spine_id(n_max)];
    let mut edges: Vec<EdgeSpec> = (1..n_max)
        .map(|n| {
            EdgeSpec::new(
                format!("s{}", spec.spine_id(n)),
                spec.spine_id(n),
                spec.spine_id(n + 1),
                CounterexampleSpec::spine_length(n),
            )
        })
        .collect();
    for n in 2..n_max {
        for m in 1..=spec.pendant_count(n) {
            let w = spec.pendant_id(n, m);
            edges.push(EdgeSpec::new(format!("p{w}"), spec.spine_id(n), w.clone(), 1.0));
            boundary.push(w.clone());
            vertices.push(w);
        }
    }
    MetricGraph::new(vertices, edges, boundary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instance() {
        let spec = CounterexampleSpec { spine: 3, pendants: vec![4] };
        let g = build_counterexample(&spec).unwrap();
        assert_eq!(g.vertex_count(), 7);
        let ids: Vec<_> = g.vertex_ids().to_vec();
        assert_eq!(ids, vec!["v1", "v2", "v3", "w2_1", "w2_2", "w2_3", "w2_4"]);
        let spine: Vec<f64> =
            g.edges().iter().filter(|e| e.id.starts_with('s')).map(|e| e.length).collect();
        assert_eq!(spine, vec![1.0, 0.25]);
        assert_eq!(g.boundary().len(), 6);
    }

    #[test]
    fn zero_pendants_rejected() {
        let spec = CounterexampleSpec { spine: 3, pendants: vec![0] };
        assert!(build_counterexample(&spec).is_err());
        assert!(build_counterexample(&CounterexampleSpec::with_power(2, 2)).is_err());
    }

    #[test]
    fn square_schedule() {
        let spec = CounterexampleSpec::with_power(5, 2);
        assert_eq!(spec.pendants, vec![4, 9, 16]);
        let g = build_counterexample(&spec).unwrap();
        let expected: f64 = (1..5).map(CounterexampleSpec::spine_length).sum::<f64>() + 29.0;
        assert!((g.volume() - expected).abs() < 1e-12);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn cap() {
        let spec = CounterexampleSpec::with_power(200, 3);
        assert!(matches!(build_counterexample_capped(&spec, 1000), Err(Error::VertexCap { .. })));
    }
}
