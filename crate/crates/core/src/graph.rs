//! Metric graph data model.
//!
//! A [`MetricGraph`] is an undirected multigraph whose edges carry positive
//! finite lengths, together with a designated set of boundary vertices.
//! Vertices and edges are kept sorted by identifier so that every derived
//! matrix, table and file comes out in the same order on every run.
//!
//! Besides the data model this module hosts the purely metric operations:
//! shortest-path distances, the ε-subgraph of points far from the boundary,
//! decoupling of boundary vertices, and minimum vertex separators.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge description by vertex identifiers, as used in the JSON wire format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub u: String,
    pub v: String,
    pub length: f64,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, u: impl Into<String>, v: impl Into<String>, length: f64) -> Self {
        Self { id: id.into(), u: u.into(), v: v.into(), length }
    }
}

/// An edge with endpoints resolved to vertex indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    /// The endpoint opposite to `x`, or `None` if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn conductance(&self) -> f64 {
        1.0 / self.length
    }
}

/// A single failed graph invariant.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Empty,
    NonpositiveLength { edge: String, length: f64 },
    NonfiniteLength { edge: String },
    SelfLoop { edge: String, vertex: String },
    IsolatedVertex { vertex: String },
    Disconnected { components: usize, unreachable: String },
    LeafNotInBoundary { vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "graph has no vertices"),
            Violation::NonpositiveLength { edge, length } => {
                write!(f, "nonpositive length {length} on edge `{edge}`")
            }
            Violation::NonfiniteLength { edge } => write!(f, "nonfinite length on edge `{edge}`"),
            Violation::SelfLoop { edge, vertex } => {
                write!(f, "self-loop `{edge}` at vertex `{vertex}`")
            }
            Violation::IsolatedVertex { vertex } => write!(f, "isolated vertex `{vertex}`"),
            Violation::Disconnected { components, unreachable } => write!(
                f,
                "graph has {components} connected components (`{unreachable}` unreachable from the first vertex)"
            ),
            Violation::LeafNotInBoundary { vertex } => {
                write!(f, "degree-1 vertex `{vertex}` not in boundary")
            }
        }
    }
}

/// Weighted multigraph with a designated boundary vertex set.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    boundary: Vec<bool>,
    incident: Vec<Vec<usize>>,
}

impl MetricGraph {
    /// Builds a graph and checks every invariant.
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeSpec>, boundary: Vec<String>) -> Result<Self> {
        let g = Self::from_parts(vertices, edges, boundary)?;
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Builds a graph checking only referential integrity and identifier
    /// uniqueness. The result may violate the metric invariants; see
    /// [`MetricGraph::validate`].
    pub fn from_parts(
        mut vertices: Vec<String>,
        mut edges: Vec<EdgeSpec>,
        boundary: Vec<String>,
    ) -> Result<Self> {
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Schema(format!("duplicate vertex id `{}`", w[0])));
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = edges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::Schema(format!("duplicate edge id `{}`", w[0].id)));
        }
        let index: HashMap<String, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));

        let mut resolved = Vec::with_capacity(edges.len());
        let mut incident = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.into_iter().enumerate() {
            let u = lookup(&e.u)?;
            let v = lookup(&e.v)?;
            incident[u].push(k);
            if v != u {
                incident[v].push(k);
            }
            resolved.push(Edge { id: e.id, u, v, length: e.length });
        }
        let mut is_boundary = vec![false; vertices.len()];
        for b in &boundary {
            let i = lookup(b)?;
            if is_boundary[i] {
                return Err(Error::Schema(format!("duplicate boundary vertex `{b}`")));
            }
            is_boundary[i] = true;
        }
        Ok(Self { vertices, index, edges: resolved, boundary: is_boundary, incident })
    }

    /// Lists every violated invariant. Empty iff the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push(Violation::Empty);
            return out;
        }
        for e in &self.edges {
            if !e.length.is_finite() {
                out.push(Violation::NonfiniteLength { edge: e.id.clone() });
            } else if e.length <= 0.0 {
                out.push(Violation::NonpositiveLength { edge: e.id.clone(), length: e.length });
            }
            if e.u == e.v {
                out.push(Violation::SelfLoop { edge: e.id.clone(), vertex: self.vertices[e.u].clone() });
            }
        }
        for v in 0..self.vertex_count() {
            match self.degree(v) {
                0 => out.push(Violation::IsolatedVertex { vertex: self.vertices[v].clone() }),
                1 if !self.boundary[v] => {
                    out.push(Violation::LeafNotInBoundary { vertex: self.vertices[v].clone() })
                }
                _ => {}
            }
        }
        let comp = self.components(&[]);
        let count = comp.iter().copied().max().map_or(0, |m| m + 1);
        if count > 1 {
            let unreachable = comp.iter().position(|&c| c != comp[0]).unwrap();
            out.push(Violation::Disconnected {
                components: count,
                unreachable: self.vertices[unreachable].clone(),
            });
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Like [`MetricGraph::index_of`] but with an error for unknown ids.
    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    /// Indices of the edges incident on `v`, in edge order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Number of edge ends at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].iter().map(|&k| if self.edges[k].u == self.edges[k].v { 2 } else { 1 }).sum()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    /// Boundary vertex indices in sorted-id order.
    pub fn boundary(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.boundary[v]).collect()
    }

    pub fn interior(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| !self.boundary[v]).collect()
    }

    /// Total length Σ l_e.
    pub fn volume(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Edge specs with vertex names, in edge order.
    pub fn edge_specs(&self) -> Vec<EdgeSpec> {
        self.edges
            .iter()
            .map(|e| EdgeSpec::new(e.id.clone(), self.vertices[e.u].clone(), self.vertices[e.v].clone(), e.length))
            .collect()
    }

    pub fn boundary_ids(&self) -> Vec<String> {
        self.boundary().into_iter().map(|v| self.vertices[v].clone()).collect()
    }

    /// Connected component label per vertex, ignoring `removed` vertices
    /// (which receive `usize::MAX`). Labels are assigned in vertex order.
    pub fn components(&self, removed: &[usize]) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut gone = vec![false; self.vertex_count()];
        for &r in removed {
            gone[r] = true;
        }
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.vertex_count() {
            if gone[start] || label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for &k in &self.incident[x] {
                    let y = self.edges[k].other(x).unwrap();
                    if !gone[y] && label[y] == usize::MAX {
                        label[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

/// Shortest-path distances from a source set.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceTable {
    pub sources: Vec<usize>,
    pub dist: Vec<f64>,
}

#[derive(PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Dijkstra from every vertex in `sources` simultaneously.
pub fn multi_source_distance(g: &MetricGraph, sources: &[usize]) -> Result<DistanceTable> {
    if sources.is_empty() {
        return Err(Error::InvalidArgument("source set is empty".into()));
    }
    let mut dist = vec![f64::INFINITY; g.vertex_count()];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        if s >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{s}")));
        }
        dist[s] = 0.0;
        heap.push(HeapItem(0.0, s));
    }
    while let Some(HeapItem(d, x)) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for &k in g.incident(x) {
            let e = g.edge(k);
            let y = e.other(x).unwrap();
            let nd = d + e.length;
            if nd < dist[y] {
                dist[y] = nd;
                heap.push(HeapItem(nd, y));
            }
        }
    }
    let mut sources = sources.to_vec();
    sources.sort_unstable();
    sources.dedup();
    Ok(DistanceTable { sources, dist })
}

/// Same as [`multi_source_distance`] with sources given by id.
pub fn multi_source_distance_by_id(g: &MetricGraph, sources: &[&str]) -> Result<DistanceTable> {
    let idx = sources.iter().map(|s| g.require(s)).collect::<Result<Vec<_>>>()?;
    multi_source_distance(g, &idx)
}

/// The subgraph of edges reaching distance at least ε from the boundary.
#[derive(Clone, Debug)]
pub struct EpsilonSubgraph {
    /// Boundary of this graph is the relative boundary. The subgraph need not
    /// be connected, so it is not validated.
    pub graph: MetricGraph,
    pub relative_boundary: Vec<String>,
}

/// Extracts G_ε. An edge (u, v) is kept when the largest distance to the
/// boundary over its points, `(d(u) + d(v) + l) / 2`, is at least `eps`.
///
/// The relative boundary consists of kept vertices that are leaves of `g`,
/// boundary vertices of `g`, or have an incident edge that was dropped.
pub fn epsilon_subgraph(g: &MetricGraph, eps: f64) -> Result<EpsilonSubgraph> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let dist = multi_source_distance(g, &g.boundary())?.dist;
    let keep: Vec<bool> =
        g.edges().iter().map(|e| (dist[e.u] + dist[e.v] + e.length) / 2.0 >= eps).collect();
    if !keep.iter().any(|&k| k) {
        return Err(Error::EmptySubgraph { eps });
    }
    let mut in_sub = vec![false; g.vertex_count()];
    for (e, _) in g.edges().iter().zip(&keep).filter(|(_, &k)| k) {
        in_sub[e.u] = true;
        in_sub[e.v] = true;
    }
    let relative: Vec<String> = (0..g.vertex_count())
        .filter(|&v| in_sub[v])
        .filter(|&v| g.degree(v) == 1 || g.is_boundary(v) || g.incident(v).iter().any(|&k| !keep[k]))
        .map(|v| g.vertex_id(v).to_string())
        .collect();
    let vertices = (0..g.vertex_count()).filter(|&v| in_sub[v]).map(|v| g.vertex_id(v).to_string()).collect();
    let edges = g.edge_specs().into_iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| e).collect();
    let graph = MetricGraph::from_parts(vertices, edges, relative.clone())?;
    Ok(EpsilonSubgraph { graph, relative_boundary: relative })
}

/// Result of decoupling boundary vertices.
#[derive(Clone, Debug)]
pub struct SplitGraph {
    pub graph: MetricGraph,
    /// For every vertex of `graph`, the index of the vertex of the original
    /// graph it came from.
    pub origin: Vec<usize>,
}

/// Replaces every boundary vertex of degree K > 1 by K degree-1 copies named
/// `{id}#{k}`, one per incident edge (k counts in edge order).
pub fn split_boundary_vertices(g: &MetricGraph) -> SplitGraph {
    let split = |v: usize| g.is_boundary(v) && g.degree(v) > 1;
    let mut vertices = Vec::new();
    let mut boundary = Vec::new();
    let mut origin_of: HashMap<String, usize> = HashMap::new();
    let mut copy_name: HashMap<(usize, usize), String> = HashMap::new();

    for v in 0..g.vertex_count() {
        let id = g.vertex_id(v);
        if split(v) {
            for (k, &e) in g.incident(v).iter().enumerate() {
                let name = format!("{id}#{k}");
                copy_name.insert((v, e), name.clone());
                origin_of.insert(name.clone(), v);
                boundary.push(name.clone());
                vertices.push(name);
            }
        } else {
            origin_of.insert(id.to_string(), v);
            if g.is_boundary(v) {
                boundary.push(id.to_string());
            }
            vertices.push(id.to_string());
        }
    }
    let end = |v: usize, k: usize| -> String {
        if split(v) {
            copy_name[&(v, k)].clone()
        } else {
            g.vertex_id(v).to_string()
        }
    };
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| EdgeSpec::new(e.id.clone(), end(e.u, k), end(e.v, k), e.length))
        .collect();
    let graph = MetricGraph::from_parts(vertices, edges, boundary).expect("split graph is well formed");
    let origin = graph.vertex_ids().iter().map(|id| origin_of[id]).collect();
    SplitGraph { graph, origin }
}

const CAP_INF: i64 = i64::MAX / 4;

struct FlowNet {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        Self { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, a: usize, b: usize, c: i64) {
        self.adj[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.adj[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    /// Edmonds-Karp; returns the set of nodes reachable from `s` in the final
    /// residual network.
    fn max_flow(&mut self, s: usize, t: usize) -> Vec<bool> {
        loop {
            let mut pred = vec![usize::MAX; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &a in &self.adj[x] {
                    let y = self.head[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        pred[y] = a;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                return seen;
            }
            let mut bottleneck = CAP_INF;
            let mut y = t;
            while y != s {
                let a = pred[y];
                bottleneck = bottleneck.min(self.cap[a]);
                y = self.head[a ^ 1];
            }
            let mut y = t;
            while y != s {
                let a = pred[y];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                y = self.head[a ^ 1];
            }
        }
    }
}

/// Minimum-cardinality vertex set, disjoint from `s` and `t`, whose removal
/// disconnects every vertex of `s` from every vertex of `t`.
///
/// Unit-capacity vertex-split max-flow; meant for graphs up to ~10⁴ vertices.
pub fn min_vertex_separator(g: &MetricGraph, s: &[usize], t: &[usize]) -> Result<Vec<usize>> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::InvalidArgument("separator endpoints must be nonempty".into()));
    }
    let n = g.vertex_count();
    let mut side = vec![0u8; n];
    for &x in s {
        side[x] = 1;
    }
    for &x in t {
        if side[x] == 1 {
            return Err(Error::InvalidArgument(format!("`{}` is in both sets", g.vertex_id(x))));
        }
        side[x] = 2;
    }
    for e in g.edges() {
        if side[e.u] * side[e.v] == 2 {
            return Err(Error::Inseparable(g.vertex_id(e.u).to_string(), g.vertex_id(e.v).to_string()));
        }
    }
    // vertex v -> (2v in, 2v+1 out); source 2n, sink 2n+1
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        let c = if side[v] == 0 { 1 } else { CAP_INF };
        net.add(2 * v, 2 * v + 1, c);
        match side[v] {
            1 => net.add(src, 2 * v, CAP_INF),
            2 => net.add(2 * v + 1, sink, CAP_INF),
            _ => {}
        }
    }
    for e in g.edges() {
        net.add(2 * e.u + 1, 2 * e.v, CAP_INF);
        net.add(2 * e.v + 1, 2 * e.u, CAP_INF);
    }
    let reach = net.max_flow(src, sink);
    Ok((0..n).filter(|&v| side[v] == 0 && reach[2 * v] && !reach[2 * v + 1]).collect())
}

/// True when removing `w` leaves no path from `s` to `t`.
pub fn separates(g: &MetricGraph, s: &[usize], t: &[usize], w: &[usize]) -> bool {
    let comp = g.components(w);
    let from: BTreeSet<usize> = s.iter().map(|&x| comp[x]).collect();
    t.iter().all(|&y| comp[y] == usize::MAX || !from.contains(&comp[y]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[&str], e: &[(&str, &str, &str, f64)], b: &[&str]) -> MetricGraph {
        MetricGraph::from_parts(
            v.iter().map(|s| s.to_string()).collect(),
            e.iter().map(|&(id, u, w, l)| EdgeSpec::new(id, u, w, l)).collect(),
            b.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn path(l1: f64, l2: f64, b: &[&str]) -> MetricGraph {
        g(&["a", "b", "c"], &[("e1", "a", "b", l1), ("e2", "b", "c", l2)], b)
    }

    fn star() -> MetricGraph {
        g(
            &["c", "v1", "v2", "v3"],
            &[("e1", "c", "v1", 1.0), ("e2", "c", "v2", 1.0), ("e3", "c", "v3", 1.0)],
            &["v1", "v2", "v3"],
        )
    }

    #[test]
    fn validate_examples() {
        assert!(g(&["a", "b"], &[("e", "a", "b", 1.0)], &["a", "b"]).validate().is_empty());
        let zero = g(&["a", "b"], &[("e", "a", "b", 0.0)], &["a", "b"]).validate();
        assert!(matches!(zero.as_slice(), [Violation::NonpositiveLength { .. }]));
        let leaf = path(1.0, 1.0, &["a"]).validate();
        assert_eq!(leaf, vec![Violation::LeafNotInBoundary { vertex: "c".into() }]);
    }

    #[test]
    fn validate_reports_loops_isolation_and_components() {
        let v = g(&["a", "b", "c"], &[("e", "a", "b", 1.0), ("l", "a", "a", 1.0)], &["a", "b"]).validate();
        assert!(v.iter().any(|x| matches!(x, Violation::SelfLoop { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::IsolatedVertex { vertex } if vertex == "c")));
        assert!(v.iter().any(|x| matches!(x, Violation::Disconnected { components: 2, .. })));
        let inf = g(&["a", "b"], &[("e", "a", "b", f64::INFINITY)], &["a", "b"]).validate();
        assert!(matches!(inf.as_slice(), [Violation::NonfiniteLength { .. }]));
    }

    #[test]
    fn duplicate_ids_are_schema_errors() {
        let r = MetricGraph::from_parts(
            vec!["a".into(), "b".into()],
            vec![EdgeSpec::new("e", "a", "b", 1.0), EdgeSpec::new("e", "a", "b", 2.0)],
            vec![],
        );
        assert!(matches!(r, Err(Error::Schema(_))));
        let r = MetricGraph::from_parts(vec!["a".into()], vec![EdgeSpec::new("e", "a", "z", 1.0)], vec![]);
        assert!(matches!(r, Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn distances() {
        let p = path(1.0, 2.0, &["a", "c"]);
        assert_eq!(multi_source_distance_by_id(&p, &["a"]).unwrap().dist, vec![0.0, 1.0, 3.0]);
        assert_eq!(multi_source_distance_by_id(&p, &["a", "c"]).unwrap().dist[1], 1.0);
        let tri = g(
            &["a", "b", "c"],
            &[("e1", "a", "b", 1.0), ("e2", "b", "c", 1.0), ("e3", "a", "c", 1.0)],
            &[],
        );
        let d = multi_source_distance_by_id(&tri, &["a"]).unwrap().dist;
        assert_eq!((d[1], d[2]), (1.0, 1.0));
        assert!(multi_source_distance(&tri, &[]).is_err());
        assert!(multi_source_distance_by_id(&tri, &["q"]).is_err());
    }

    #[test]
    fn epsilon_subgraph_examples() {
        let p = path(1.0, 1.0, &["a", "c"]);
        let s = epsilon_subgraph(&p, 0.75).unwrap();
        assert_eq!(s.graph.edge_count(), 2);
        assert_eq!(s.relative_boundary, vec!["a", "c"]);
        assert!(matches!(epsilon_subgraph(&p, 1.2), Err(Error::EmptySubgraph { .. })));
        assert!(epsilon_subgraph(&p, 0.0).is_err());

        let s = epsilon_subgraph(&star(), 0.5).unwrap();
        assert_eq!(s.graph.edge_count(), 3);
        assert_eq!(s.relative_boundary, vec!["v1", "v2", "v3"]);
    }

    #[test]
    fn epsilon_subgraph_drops_short_edges() {
        // a-b long, b-c short hanging edge, c boundary; eps kills b-c only
        let h = g(
            &["a", "b", "c", "d"],
            &[("e1", "a", "b", 4.0), ("e2", "b", "c", 0.5), ("e3", "b", "d", 4.0)],
            &["a", "c", "d"],
        );
        let s = epsilon_subgraph(&h, 1.0).unwrap();
        assert_eq!(s.graph.edge_count(), 2);
        assert_eq!(s.relative_boundary, vec!["a", "b", "d"]);
    }

    #[test]
    fn split_examples() {
        let s = star();
        let sp = split_boundary_vertices(&s);
        assert_eq!(sp.graph, s);

        let hub = g(
            &["v", "x", "y", "z"],
            &[("e1", "v", "x", 1.0), ("e2", "v", "y", 1.0), ("e3", "v", "z", 1.0)],
            &["v", "x", "y", "z"],
        );
        let sp = split_boundary_vertices(&hub);
        assert_eq!(sp.graph.vertex_count(), 6);
        for k in 0..3 {
            let c = sp.graph.index_of(&format!("v#{k}")).unwrap();
            assert_eq!(sp.graph.degree(c), 1);
            assert_eq!(sp.origin[c], 0);
        }

        let cyc = g(
            &["a", "b", "c"],
            &[("e1", "a", "b", 1.0), ("e2", "b", "c", 1.0), ("e3", "c", "a", 1.0)],
            &["a"],
        );
        let sp = split_boundary_vertices(&cyc);
        assert!(sp.graph.validate().is_empty());
        assert_eq!(sp.graph.boundary_ids(), vec!["a#0", "a#1"]);
        let b = sp.graph.index_of("b").unwrap();
        let c = sp.graph.index_of("c").unwrap();
        assert_eq!((sp.graph.degree(b), sp.graph.degree(c)), (2, 2));
        assert_eq!(sp.graph.volume(), cyc.volume());
    }

    #[test]
    fn separator_examples() {
        let p = path(1.0, 1.0, &["a", "c"]);
        assert_eq!(min_vertex_separator(&p, &[0], &[2]).unwrap(), vec![1]);
        assert!(matches!(min_vertex_separator(&p, &[0], &[1]), Err(Error::Inseparable(..))));

        // a-p1-p2-z and a-q1-q2-z
        let two = g(
            &["a", "p1", "p2", "q1", "q2", "z"],
            &[
                ("1", "a", "p1", 1.0),
                ("2", "p1", "p2", 1.0),
                ("3", "p2", "z", 1.0),
                ("4", "a", "q1", 1.0),
                ("5", "q1", "q2", 1.0),
                ("6", "q2", "z", 1.0),
            ],
            &["a", "z"],
        );
        let w = min_vertex_separator(&two, &[0], &[5]).unwrap();
        assert_eq!(w.len(), 2);
        assert!(separates(&two, &[0], &[5], &w));
        assert!(!separates(&two, &[0], &[5], &w[..1]));
    }
}
