//! Builds the two graph families and writes them in the JSON wire format.

use metric_boundary::families::{build_counterexample, build_kary_tree, load_graph, save_graph, CounterexampleSpec, TreeFamilySpec};

fn main() -> metric_boundary::Result<()> {
    let spec = TreeFamilySpec::new(2, 0.25, 1.0, 3);
    let (tree, addresses) = build_kary_tree(&spec)?;
    println!(
        "binary tree, depth {}: {} vertices, {} leaves, volume {:.6}",
        spec.depth,
        tree.vertex_count(),
        tree.boundary().len(),
        tree.volume()
    );
    for (leaf, word) in addresses.iter().take(3) {
        println!("  leaf {leaf} has address {word:?}");
    }

    let ce = CounterexampleSpec::with_power(6, 2);
    let g = build_counterexample(&ce)?;
    println!("pendant spine, N = {}: {} vertices, {} boundary", ce.spine, g.vertex_count(), g.boundary().len());

    let json = save_graph(&tree);
    let back = load_graph(&json)?;
    assert_eq!(save_graph(&back), json);
    println!("{}", &json[..json.find("\"edges\"").unwrap_or(json.len())]);
    Ok(())
}
