//! Exit measure from the root of the r = 1/4 binary tree. The total tends
//! to the root-to-boundary conductance (2 - r)/r = 7 as the truncation deepens.

use metric_boundary::families::TreeFamilySpec;
use metric_boundary::measures::exit_measure_limit;

fn main() -> metric_boundary::Result<()> {
    let family = TreeFamilySpec::new(2, 0.25, 1.0, 1);
    let depths: Vec<usize> = (2..=14).collect();
    let limit = exit_measure_limit(&family, &vec![], 2, &depths, 1e-10)?;
    println!("depth  total              change");
    for step in &limit.trace {
        let total: f64 = step.masses.iter().sum();
        println!("{:>5}  {:.15}  {}", step.depth, total, step.change.map_or(String::new(), |c| format!("{c:.3e}")));
    }
    println!("converged at depth {}: {:?}", limit.depth, limit.masses);
    Ok(())
}
