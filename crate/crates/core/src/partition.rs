//! ε-components of a boundary point set and the canonical nested partitions
//! they generate.
//!
//! Two points are ε-chained when a finite sequence of points joins them with
//! every consecutive distance strictly below ε. The number of ε-components,
//! η(ε), is a nonincreasing step function that is continuous from the left;
//! its jumps α(1) > α(2) > … are the distinct single-linkage merge heights,
//! read off a minimum spanning tree.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{build_kary_tree, words, Address, AddressTable, TreeFamilySpec};
use crate::graph::{multi_source_distance, MetricGraph};

/// Distance along the truncated tree between two leaves with addresses `x`
/// and `y`: twice the length from their branch point down to depth n.
pub fn tree_boundary_distance(spec: &TreeFamilySpec, x: &[u32], y: &[u32]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Dimension { expected: x.len(), got: y.len() });
    }
    let Some(a) = x.iter().zip(y).position(|(p, q)| p != q) else {
        return Ok(0.0);
    };
    Ok(2.0 * (a + 1..=x.len()).map(|d| spec.edge_length(d)).sum::<f64>())
}

/// Finite set of boundary points with a symmetric distance table.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySet {
    labels: Vec<String>,
    addresses: Option<Vec<Address>>,
    dist: Vec<f64>,
}

impl BoundarySet {
    /// `dist` is a full row-major `n × n` table.
    pub fn new(labels: Vec<String>, dist: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if dist.len() != n * n {
            return Err(Error::Dimension { expected: n * n, got: dist.len() });
        }
        Ok(Self { labels, addresses: None, dist })
    }

    /// Leaves of the depth-n truncation with the exact tree metric.
    pub fn from_tree(spec: &TreeFamilySpec) -> Result<Self> {
        spec.check()?;
        let leaves = words(spec.arity, spec.depth);
        let n = leaves.len();
        let dist: Vec<f64> = (0..n * n)
            .into_par_iter()
            .map(|k| tree_boundary_distance(spec, &leaves[k / n], &leaves[k % n]).unwrap())
            .collect();
        let labels = leaves.iter().map(|w| spec.vertex_id(w)).collect();
        Ok(Self { labels, addresses: Some(leaves), dist })
    }

    /// Boundary vertices of `g` with the path metric of `g`.
    pub fn from_graph(g: &MetricGraph) -> Result<Self> {
        let b = g.boundary();
        let rows: Vec<Vec<f64>> = b
            .par_iter()
            .map(|&s| multi_source_distance(g, &[s]).map(|t| b.iter().map(|&v| t.dist[v]).collect()))
            .collect::<Result<_>>()?;
        // path sums in opposite directions can differ in the last bit
        let n = b.len();
        let dist = (0..n * n).map(|k| rows[k / n][k % n].min(rows[k % n][k / n])).collect();
        let labels = b.iter().map(|&v| g.vertex_id(v).to_string()).collect();
        Ok(Self { labels, addresses: None, dist })
    }

    /// Attaches tree addresses (one per point) for prefix-based cell lookup.
    pub fn with_addresses(mut self, addresses: Vec<Address>) -> Result<Self> {
        if addresses.len() != self.len() {
            return Err(Error::Dimension { expected: self.len(), got: addresses.len() });
        }
        self.addresses = Some(addresses);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn addresses(&self) -> Option<&[Address]> {
        self.addresses.as_deref()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Returns a description of the first failed metric axiom, if any.
    pub fn check_metric(&self, tol: f64) -> Option<String> {
        let n = self.len();
        for i in 0..n {
            if self.distance(i, i) != 0.0 {
                return Some(format!("d({0},{0}) != 0", self.labels[i]));
            }
            for j in 0..n {
                let d = self.distance(i, j);
                if d != self.distance(j, i) {
                    return Some(format!("asymmetric at ({}, {})", self.labels[i], self.labels[j]));
                }
                if i != j && !(d > 0.0) {
                    return Some(format!("d({}, {}) is not positive", self.labels[i], self.labels[j]));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.distance(i, k) > self.distance(i, j) + self.distance(j, k) + tol {
                        return Some(format!(
                            "triangle inequality fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        None
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Disjoint cover of the points `0..n`. Cells hold sorted members and are
/// ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups points by an arbitrary per-point key.
    pub fn from_keys<K: std::hash::Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut slot: HashMap<K, usize> = HashMap::new();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for (i, k) in keys.into_iter().enumerate() {
            let c = *slot.entry(k).or_insert_with(|| {
                cells.push(Vec::new());
                cells.len() - 1
            });
            cells[c].push(i);
        }
        // points are visited in increasing order, so cells are already
        // ordered by their smallest member
        Self { cells }
    }

    pub fn from_cells(mut cells: Vec<Vec<usize>>) -> Self {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.retain(|c| !c.is_empty());
        cells.sort_by_key(|c| c[0]);
        Self { cells }
    }

    fn from_sets(mut sets: DisjointSets, n: usize) -> Self {
        Self::from_keys((0..n).map(|i| sets.find(i)))
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn point_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Cell index for each point.
    pub fn cell_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.point_count()];
        for (c, members) in self.cells.iter().enumerate() {
            for &p in members {
                out[p] = c;
            }
        }
        out
    }

    /// True when every cell of `self` lies inside a cell of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let owner = coarser.cell_of();
        self.cells.iter().all(|c| c.iter().all(|&p| owner[p] == owner[c[0]]))
    }
}

/// Components of the graph joining points at distance strictly below `eps`.
pub fn epsilon_components(b: &BoundarySet, eps: f64) -> Partition {
    let n = b.len();
    let mut sets = DisjointSets::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if b.distance(i, j) < eps {
                sets.union(i, j);
            }
        }
    }
    Partition::from_sets(sets, n)
}

/// A value of ε where η changes: η(α) = `before`, η(α + δ) = `after`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jump {
    pub alpha: f64,
    pub before: usize,
    pub after: usize,
}

impl Jump {
    /// Number of simultaneous merges at this value.
    pub fn multiplicity(&self) -> usize {
        self.before - self.after
    }
}

/// Prim's algorithm on the dense distance table; edge weights only.
fn mst_weights(b: &BoundarySet) -> Vec<(f64, usize, usize)> {
    let n = b.len();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut from = vec![0usize; n];
    let mut out = Vec::with_capacity(n - 1);
    let mut cur = 0;
    in_tree[0] = true;
    for _ in 1..n {
        for j in 0..n {
            if !in_tree[j] && b.distance(cur, j) < best[j] {
                best[j] = b.distance(cur, j);
                from[j] = cur;
            }
        }
        let next = (0..n).filter(|&j| !in_tree[j]).min_by(|&x, &y| best[x].total_cmp(&best[y])).unwrap();
        in_tree[next] = true;
        out.push((best[next], from[next], next));
        cur = next;
    }
    out
}

/// Jump values of η in decreasing order.
pub fn jump_values(b: &BoundarySet) -> Vec<Jump> {
    let mut w: Vec<f64> = mst_weights(b).into_iter().map(|e| e.0).collect();
    w.sort_by(|x, y| y.total_cmp(x));
    let mut out: Vec<Jump> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let alpha = w[i];
        let mut j = i;
        while j < w.len() && w[j] == alpha {
            j += 1;
        }
        // η(ε) = 1 + #{MST edges with weight ≥ ε}
        out.push(Jump { alpha, before: 1 + j, after: 1 + i });
        i = j;
    }
    out
}

/// Nested partitions: level 0 is the whole set, level j the ε-components at
/// ε = α(j).
#[derive(Clone, Debug, PartialEq)]
pub struct CellTree {
    pub levels: Vec<Partition>,
    /// `jumps[j - 1]` is α(j), the value producing level j.
    pub jumps: Vec<Jump>,
    /// Largest cell diameter per level.
    pub mesh: Vec<f64>,
    /// `parent[j][c]`: index at level j - 1 of the cell containing cell c of
    /// level j (empty for level 0).
    pub parent: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl CellTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, j: usize) -> &Partition {
        &self.levels[j]
    }

    pub fn finest(&self) -> &Partition {
        self.levels.last().unwrap()
    }

    /// Children of cell `c` at level `j`, as indices into level `j + 1`.
    pub fn children(&self, j: usize, c: usize) -> Vec<usize> {
        self.parent[j + 1].iter().enumerate().filter(|&(_, &p)| p == c).map(|(k, _)| k).collect()
    }

    /// Label of the smallest member of a cell; stable across levels.
    pub fn cell_label(&self, j: usize, c: usize) -> &str {
        &self.labels[self.levels[j].cells()[c][0]]
    }

    pub fn point_labels(&self) -> &[String] {
        &self.labels
    }

    /// For every finest cell, the index of the level-`j` cell containing it.
    pub fn ancestor_at(&self, j: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.finest().len()).collect();
        for lvl in (j + 1..self.levels.len()).rev() {
            for x in idx.iter_mut() {
                *x = self.parent[lvl][*x];
            }
        }
        idx
    }
}

/// Single-linkage dendrogram cut at every jump value.
pub fn canonical_nested_partitions(b: &BoundarySet) -> CellTree {
    let n = b.len();
    let mut edges = mst_weights(b);
    edges.sort_by(|x, y| x.0.total_cmp(&y.0));
    let jumps = jump_values(b);

    let mut levels = vec![Partition::from_cells(vec![(0..n).collect()])];
    for jump in &jumps {
        let mut sets = DisjointSets::new(n);
        for &(w, p, q) in edges.iter().take_while(|e| e.0 < jump.alpha) {
            debug_assert!(w < jump.alpha);
            sets.union(p, q);
        }
        levels.push(Partition::from_sets(sets, n));
    }
    let mesh = levels.iter().map(|p| mesh(p, b)).collect();
    let mut parent = vec![Vec::new()];
    for j in 1..levels.len() {
        let owner = levels[j - 1].cell_of();
        parent.push(levels[j].cells().iter().map(|c| owner[c[0]]).collect());
    }
    CellTree { levels, jumps, mesh, parent, labels: b.labels().to_vec() }
}

/// Largest within-cell distance.
pub fn mesh(p: &Partition, b: &BoundarySet) -> f64 {
    p.cells()
        .iter()
        .map(|c| {
            let mut m: f64 = 0.0;
            for (x, &i) in c.iter().enumerate() {
                for &j in &c[x + 1..] {
                    m = m.max(b.distance(i, j));
                }
            }
            m
        })
        .fold(0.0, f64::max)
}

/// Which cell each boundary vertex of a graph belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct CellAssignment {
    /// Indexed by vertex of the graph; `None` for non-boundary vertices.
    pub cell_of: Vec<Option<usize>>,
    pub cell_count: usize,
}

impl CellAssignment {
    /// Boundary vertices grouped by cell.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cell_count];
        for (v, c) in self.cell_of.iter().enumerate() {
            if let Some(c) = c {
                out[*c].push(v);
            }
        }
        out
    }

    /// One cell per boundary vertex, in boundary order.
    pub fn singletons(g: &MetricGraph) -> Self {
        let mut cell_of = vec![None; g.vertex_count()];
        let b = g.boundary();
        for (c, &v) in b.iter().enumerate() {
            cell_of[v] = Some(c);
        }
        Self { cell_of, cell_count: b.len() }
    }
}

/// Assigns boundary vertices of `g` to the level-`level` cells of `tree`.
///
/// With `addresses` (tree truncations) a leaf goes to the cell whose members
/// share its length-`level` prefix; otherwise boundary vertices are matched to
/// points by label.
pub fn assign_leaves_to_cells(
    g: &MetricGraph,
    addresses: Option<&AddressTable>,
    points: &BoundarySet,
    tree: &CellTree,
    level: usize,
) -> Result<CellAssignment> {
    let part = tree
        .levels
        .get(level)
        .ok_or_else(|| Error::InvalidArgument(format!("cell tree has no level {level}")))?;
    let mut cell_of = vec![None; g.vertex_count()];
    match (addresses, points.addresses()) {
        (Some(table), Some(point_addr)) => {
            let mut by_prefix: HashMap<&[u32], usize> = HashMap::new();
            for (c, members) in part.cells().iter().enumerate() {
                for &p in members {
                    let a = &point_addr[p];
                    if a.len() < level {
                        return Err(Error::InvalidArgument(format!("address of `{}` shorter than level", points.label(p))));
                    }
                    if let Some(&other) = by_prefix.get(&a[..level]) {
                        if other != c {
                            return Err(Error::InvalidArgument(format!(
                                "level-{level} cells do not follow address prefixes"
                            )));
                        }
                    }
                    by_prefix.insert(&a[..level], c);
                }
            }
            for (leaf, word) in table {
                let v = g.require(leaf)?;
                if word.len() < level {
                    return Err(Error::InvalidArgument(format!("truncation is shallower than level {level}")));
                }
                let c = by_prefix.get(&word[..level]).ok_or_else(|| Error::NoCell(leaf.clone()))?;
                cell_of[v] = Some(*c);
            }
        }
        _ => {
            let owner = part.cell_of();
            let index: HashMap<&str, usize> = points.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            for v in g.boundary() {
                let id = g.vertex_id(v);
                let p = index.get(id).ok_or_else(|| Error::NoCell(id.to_string()))?;
                cell_of[v] = Some(owner[*p]);
            }
        }
    }
    Ok(CellAssignment { cell_of, cell_count: part.len() })
}

/// Level-`level` cells of a tree family, and the assignment of the leaves of
/// the depth-`depth` truncation to them.
pub fn tree_cells_at_depth(
    family: &TreeFamilySpec,
    level: usize,
    depth: usize,
) -> Result<(MetricGraph, CellAssignment)> {
    if depth < level {
        return Err(Error::InvalidArgument(format!("depth {depth} is below level {level}")));
    }
    let points = BoundarySet::from_tree(&family.with_depth(level.max(1)))?;
    let tree = canonical_nested_partitions(&points);
    let (g, table) = build_kary_tree(&family.with_depth(depth))?;
    let assignment = assign_leaves_to_cells(&g, Some(&table), &points, &tree, level)?;
    Ok((g, assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::fixtures::star;

    fn tree3() -> TreeFamilySpec {
        TreeFamilySpec::new(2, 0.25, 1.0, 3)
    }

    fn line(points: &[f64]) -> BoundarySet {
        let n = points.len();
        let dist = (0..n * n).map(|k| (points[k / n] - points[k % n]).abs()).collect();
        BoundarySet::new((0..n).map(|i| format!("p{i}")).collect(), dist).unwrap()
    }

    #[test]
    fn tree_distance_examples() {
        let s = tree3();
        assert_eq!(tree_boundary_distance(&s, &[0, 0, 0], &[1, 0, 0]).unwrap(), 0.65625);
        assert_eq!(tree_boundary_distance(&s, &[0, 0, 0], &[0, 1, 0]).unwrap(), 0.15625);
        assert_eq!(tree_boundary_distance(&s, &[0, 0, 0], &[0, 0, 1]).unwrap(), 0.03125);
        assert!(tree_boundary_distance(&s, &[0, 0], &[0, 0, 1]).is_err());
    }

    #[test]
    fn tree_distance_matches_graph_distance() {
        let s = tree3();
        let (g, _) = build_kary_tree(&s).unwrap();
        let exact = BoundarySet::from_tree(&s).unwrap();
        let graph = BoundarySet::from_graph(&g).unwrap();
        assert_eq!(exact.labels(), graph.labels());
        for i in 0..8 {
            for j in 0..8 {
                assert!((exact.distance(i, j) - graph.distance(i, j)).abs() < 1e-15);
            }
        }
        assert!(exact.check_metric(1e-12).is_none());
    }

    #[test]
    fn epsilon_component_examples() {
        let b = BoundarySet::from_tree(&tree3()).unwrap();
        assert_eq!(epsilon_components(&b, 1.0).len(), 1);
        let two = epsilon_components(&b, 0.5);
        assert_eq!(two.cells(), &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
        let pair = line(&[0.0, 1.0]);
        assert_eq!(epsilon_components(&pair, 1.0).len(), 2);
        assert_eq!(epsilon_components(&pair, 1.0 + 1e-12).len(), 1);
    }

    #[test]
    fn jump_examples() {
        let b = BoundarySet::from_tree(&tree3()).unwrap();
        let j = jump_values(&b);
        let alphas: Vec<f64> = j.iter().map(|x| x.alpha).collect();
        assert_eq!(alphas, vec![0.65625, 0.15625, 0.03125]);
        let counts: Vec<(usize, usize)> = j.iter().map(|x| (x.before, x.after)).collect();
        assert_eq!(counts, vec![(2, 1), (4, 2), (8, 4)]);

        assert_eq!(jump_values(&line(&[0.0, 1.0])), vec![Jump { alpha: 1.0, before: 2, after: 1 }]);
        let three = jump_values(&line(&[0.0, 1.0, 2.0]));
        assert_eq!(three, vec![Jump { alpha: 1.0, before: 3, after: 1 }]);
        assert_eq!(three[0].multiplicity(), 2);
        assert!(jump_values(&line(&[0.0])).is_empty());
    }

    #[test]
    fn eta_is_left_continuous_at_jumps() {
        let b = line(&[0.0, 0.3, 1.0, 1.1, 3.0]);
        for j in jump_values(&b) {
            assert_eq!(epsilon_components(&b, j.alpha).len(), j.before);
            assert_eq!(epsilon_components(&b, j.alpha * (1.0 + 1e-9)).len(), j.after);
            assert_eq!(epsilon_components(&b, j.alpha * (1.0 - 1e-9)).len(), j.before);
        }
    }

    #[test]
    fn nested_partition_examples() {
        let b = BoundarySet::from_tree(&tree3()).unwrap();
        let t = canonical_nested_partitions(&b);
        let sizes: Vec<usize> = t.levels.iter().map(Partition::len).collect();
        assert_eq!(sizes, vec![1, 2, 4, 8]);
        assert_eq!(t.mesh, vec![0.65625, 0.15625, 0.03125, 0.0]);
        assert_eq!(t.children(1, 1), vec![2, 3]);
        assert_eq!(t.cell_label(2, 1), "t010");
        for j in 1..t.levels.len() {
            assert!(t.levels[j].refines(&t.levels[j - 1]));
        }

        let single = canonical_nested_partitions(&line(&[0.0]));
        assert_eq!(single.levels.len(), 1);
        assert_eq!(single.levels[0].len(), 1);

        let pair = canonical_nested_partitions(&line(&[0.0, 1.0]));
        assert_eq!(pair.levels.iter().map(Partition::len).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(pair.mesh, vec![1.0, 0.0]);
    }

    #[test]
    fn mesh_examples() {
        let pair = line(&[0.0, 1.0]);
        assert_eq!(mesh(&Partition::from_cells(vec![vec![0], vec![1]]), &pair), 0.0);
        assert_eq!(mesh(&Partition::from_cells(vec![vec![0, 1]]), &pair), 1.0);
        let b = BoundarySet::from_tree(&tree3()).unwrap();
        assert_eq!(mesh(&epsilon_components(&b, 0.5), &b), 0.15625);
    }

    #[test]
    fn leaf_assignment_examples() {
        let spec = tree3();
        let coarse = BoundarySet::from_tree(&spec.with_depth(2)).unwrap();
        let tree = canonical_nested_partitions(&coarse);
        let (g, table) = build_kary_tree(&spec).unwrap();

        let a1 = assign_leaves_to_cells(&g, Some(&table), &coarse, &tree, 1).unwrap();
        assert_eq!(a1.cell_of[g.require("t010").unwrap()], Some(0));
        let a2 = assign_leaves_to_cells(&g, Some(&table), &coarse, &tree, 2).unwrap();
        let c = a2.cell_of[g.require("t110").unwrap()].unwrap();
        assert_eq!(tree.cell_label(2, c), "t11");
        assert!(assign_leaves_to_cells(&g, Some(&table), &coarse, &tree, 5).is_err());

        // finite star: cells {v1}, {v2, v3}
        let s = star(3, 1.0);
        let points = BoundarySet::from_graph(&s).unwrap();
        let mut custom = canonical_nested_partitions(&points);
        custom.levels.push(Partition::from_cells(vec![vec![0], vec![1, 2]]));
        let a = assign_leaves_to_cells(&s, None, &points, &custom, custom.levels.len() - 1).unwrap();
        assert_eq!(a.cell_of[s.require("v2").unwrap()], Some(1));
        assert_eq!(a.cell_of[s.require("c").unwrap()], None);
    }

    #[test]
    fn tree_cells_at_depth_groups_leaves() {
        let spec = TreeFamilySpec::new(3, 0.2, 1.0, 1);
        let (g, a) = tree_cells_at_depth(&spec, 1, 3).unwrap();
        assert_eq!(a.cell_count, 3);
        assert!(a.members().iter().all(|m| m.len() == 9));
        assert_eq!(g.boundary().len(), 27);
        let (_, a0) = tree_cells_at_depth(&spec, 0, 2).unwrap();
        assert_eq!(a0.cell_count, 1);
        assert!(tree_cells_at_depth(&spec, 3, 2).is_err());
    }
}
