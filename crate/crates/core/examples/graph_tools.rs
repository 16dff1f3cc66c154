//! Distances to the boundary, ε-subgraphs, boundary splitting and vertex
//! separators on a small graph with a cycle.

use metric_boundary::graph::{
    epsilon_subgraph, min_vertex_separator, multi_source_distance, split_boundary_vertices, EdgeSpec, MetricGraph,
};

fn main() -> metric_boundary::Result<()> {
    let ids = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let g = MetricGraph::new(
        ids(&["a", "b", "c", "d", "e"]),
        vec![
            EdgeSpec::new("ab", "a", "b", 1.0),
            EdgeSpec::new("bc", "b", "c", 2.0),
            EdgeSpec::new("bd", "b", "d", 1.5),
            EdgeSpec::new("cd", "c", "d", 0.5),
            EdgeSpec::new("de", "d", "e", 1.0),
            EdgeSpec::new("ce", "c", "e", 3.0),
        ],
        ids(&["a", "e"]),
    )?;
    println!("{} vertices, {} edges, volume {}", g.vertex_count(), g.edge_count(), g.volume());

    let d = multi_source_distance(&g, &g.boundary())?;
    for v in 0..g.vertex_count() {
        println!("dist({}, boundary) = {}", g.vertex_id(v), d.dist[v]);
    }

    for eps in [0.5, 1.0, 1.5] {
        let sub = epsilon_subgraph(&g, eps)?;
        println!("G_{eps}: {} edges, relative boundary {:?}", sub.graph.edge_count(), sub.relative_boundary);
    }

    let split = split_boundary_vertices(&g);
    println!("after splitting: {} vertices (boundary {:?})", split.graph.vertex_count(), split.graph.boundary_ids());

    let (a, e) = (g.require("a")?, g.require("e")?);
    let w = min_vertex_separator(&g, &[a], &[e])?;
    let names: Vec<&str> = w.iter().map(|&v| g.vertex_id(v)).collect();
    println!("minimum separator between a and e: {names:?}");
    Ok(())
}
