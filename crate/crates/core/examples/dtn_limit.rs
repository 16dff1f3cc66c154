//! Compressed DtN maps on level-1 cells of growing truncations of the
//! r = 1/4 binary tree, under equal splitting and under the exit measure.

use metric_boundary::dtn::{compressed_dtn_limit, CellWeights};
use metric_boundary::families::TreeFamilySpec;

fn main() -> metric_boundary::Result<()> {
    let family = TreeFamilySpec::new(2, 0.25, 1.0, 1);
    let depths: Vec<usize> = (4..=14).collect();
    for (name, weights) in [("rho", CellWeights::Rho), ("exit", CellWeights::Exit(vec![]))] {
        let limit = compressed_dtn_limit(&family, 1, &depths, &weights, 1e-9)?;
        println!("{name}: changes {:?}", limit.changes().iter().map(|c| format!("{c:.2e}")).collect::<Vec<_>>());
        println!("limit at depth {} (converged: {}){:.10}", limit.depth, limit.converged, limit.matrix.entries);
    }
    Ok(())
}
