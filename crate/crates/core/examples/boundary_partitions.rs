//! Jump values and canonical nested partitions of a tree boundary, checked
//! against the brute-force ε-chain oracle.

use metric_boundary::families::TreeFamilySpec;
use metric_boundary::oracles::{epsilon_chain_components, tree_jump_closed_form};
use metric_boundary::partition::{canonical_nested_partitions, epsilon_components, BoundarySet};

fn main() -> metric_boundary::Result<()> {
    let spec = TreeFamilySpec::new(2, 0.25, 1.0, 4);
    let points = BoundarySet::from_tree(&spec)?;
    let tree = canonical_nested_partitions(&points);

    println!("level  alpha          closed form    cells  mesh");
    for (j, jump) in tree.jumps.iter().enumerate() {
        println!(
            "{:>5}  {:<13.10}  {:<13.10}  {:>5}  {:.6}",
            j + 1,
            jump.alpha,
            tree_jump_closed_form(&spec, j),
            tree.level(j + 1).len(),
            tree.mesh[j + 1]
        );
    }

    for eps in [0.05, 0.2, 0.7] {
        let p = epsilon_components(&points, eps);
        assert_eq!(p, epsilon_chain_components(&points, eps));
        println!("eps = {eps}: {} components", p.len());
    }
    for c in 0..tree.level(2).len() {
        let members: Vec<&str> = tree.level(2).cells()[c].iter().map(|&p| points.label(p)).collect();
        println!("level 2 cell {}: {members:?}", tree.cell_label(2, c));
    }
    Ok(())
}
