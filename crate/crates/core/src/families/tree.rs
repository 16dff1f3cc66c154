use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, MetricGraph};

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

/// A word over `{0..k-1}` locating a vertex of a k-ary tree; the empty word is
/// the root.
pub type Address = Vec<u32>;

/// Self-similar k-ary metric tree truncated at a finite depth.
///
/// Edges entering level `d` (d = 1..=depth) have length `base_length * ratio^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeFamilySpec {
    pub arity: u32,
    pub ratio: f64,
    pub base_length: f64,
    pub depth: usize,
}

impl TreeFamilySpec {
    pub fn new(arity: u32, ratio: f64, base_length: f64, depth: usize) -> Self {
        Self { arity, ratio, base_length, depth }
    }

    pub fn with_depth(&self, depth: usize) -> Self {
        Self { depth, ..self.clone() }
    }

    pub fn check(&self) -> Result<()> {
        if self.arity < 2 {
            return Err(Error::InvalidArgument(format!("arity must be at least 2, got {}", self.arity)));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::InvalidArgument(format!("ratio must lie in (0,1), got {}", self.ratio)));
        }
        if !(self.base_length > 0.0 && self.base_length.is_finite()) {
            return Err(Error::InvalidArgument(format!("base length must be positive, got {}", self.base_length)));
        }
        if self.depth == 0 {
            return Err(Error::InvalidArgument("depth must be at least 1".into()));
        }
        Ok(())
    }

    /// Length of an edge entering level `d`.
    pub fn edge_length(&self, d: usize) -> f64 {
        self.base_length * self.ratio.powi(d as i32)
    }

    /// Whether the infinite tree has finite total length (k·r < 1).
    pub fn finite_volume(&self) -> bool {
        self.arity as f64 * self.ratio < 1.0
    }

    /// `(k^{n+1} - 1) / (k - 1)`, saturating.
    pub fn vertex_count(&self) -> usize {
        let k = self.arity as usize;
        let mut total: usize = 1;
        let mut level: usize = 1;
        for _ in 0..self.depth {
            level = level.saturating_mul(k);
            total = total.saturating_add(level);
        }
        total
    }

    /// Identifier of the vertex at `address`: `t` followed by the letters,
    /// each zero-padded to a common width so ids sort in address order.
    pub fn vertex_id(&self, address: &[u32]) -> String {
        let width = (self.arity - 1).to_string().len();
        let mut s = String::with_capacity(1 + width * address.len());
        s.push('t');
        for &a in address {
            s.push_str(&format!("{a:0width$}"));
        }
        s
    }

    /// Inverse of [`TreeFamilySpec::vertex_id`].
    pub fn parse_address(&self, id: &str) -> Option<Address> {
        let width = (self.arity - 1).to_string().len();
        let rest = id.strip_prefix('t')?;
        if rest.len() % width != 0 {
            return None;
        }
        (0..rest.len() / width)
            .map(|i| rest.get(i * width..(i + 1) * width)?.parse::<u32>().ok().filter(|&a| a < self.arity))
            .collect()
    }
}

/// Leaf id → root-to-leaf word.
pub type AddressTable = BTreeMap<String, Address>;

/// Words of length `len` in lexicographic order.
pub fn words(arity: u32, len: usize) -> Vec<Address> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..arity).map(move |a| {
                    let mut x = w.clone();
                    x.push(a);
                    x
                })
            })
            .collect();
    }
    out
}

/// Builds the depth-n truncation. The root is interior; the boundary is the
/// set of depth-n leaves.
pub fn build_kary_tree(spec: &TreeFamilySpec) -> Result<(MetricGraph, AddressTable)> {
    build_kary_tree_capped(spec, DEFAULT_VERTEX_CAP)
}

pub fn build_kary_tree_capped(spec: &TreeFamilySpec, cap: usize) -> Result<(MetricGraph, AddressTable)> {
    spec.check()?;
    let requested = spec.vertex_count();
    if requested > cap {
        return Err(Error::VertexCap { requested, cap });
    }
    let mut vertices = Vec::with_capacity(requested);
    let mut edges = Vec::with_capacity(requested - 1);
    let mut frontier: Vec<Address> = vec![Vec::new()];
    vertices.push(spec.vertex_id(&[]));
    for d in 1..=spec.depth {
        let len = spec.edge_length(d);
        let mut next = Vec::with_capacity(frontier.len() * spec.arity as usize);
        for parent in &frontier {
            let pid = spec.vertex_id(parent);
            for a in 0..spec.arity {
                let mut child = parent.clone();
                child.push(a);
                let cid = spec.vertex_id(&child);
                edges.push(EdgeSpec::new(format!("e{cid}"), pid.clone(), cid.clone(), len));
                vertices.push(cid);
                next.push(child);
            }
        }
        frontier = next;
    }
    let table: AddressTable = frontier.into_iter().map(|w| (spec.vertex_id(&w), w)).collect();
    let boundary = table.keys().cloned().collect();
    let g = MetricGraph::new(vertices, edges, boundary)?;
    Ok((g, table))
}
