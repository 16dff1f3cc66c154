//! Small hand-checkable graphs.

use crate::graph::{EdgeSpec, MetricGraph};

fn ids(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// `a – b` with both ends on the boundary.
pub fn single_edge(length: f64) -> MetricGraph {
    MetricGraph::new(ids(&["a", "b"]), vec![EdgeSpec::new("e", "a", "b", length)], ids(&["a", "b"])).unwrap()
}

/// `a – b – c` with ends on the boundary.
pub fn path3(l1: f64, l2: f64) -> MetricGraph {
    MetricGraph::new(
        ids(&["a", "b", "c"]),
        vec![EdgeSpec::new("e1", "a", "b", l1), EdgeSpec::new("e2", "b", "c", l2)],
        ids(&["a", "c"]),
    )
    .unwrap()
}

/// Center `c` joined to leaves `v1..vk` by edges of the given length.
pub fn star(leaves: usize, length: f64) -> MetricGraph {
    let mut v = vec!["c".to_string()];
    let mut e = Vec::new();
    let mut b = Vec::new();
    for i in 1..=leaves {
        let leaf = format!("v{i}");
        e.push(EdgeSpec::new(format!("e{i}"), "c", leaf.clone(), length));
        b.push(leaf.clone());
        v.push(leaf);
    }
    MetricGraph::new(v, e, b).unwrap()
}
