//! Dirichlet-to-Neumann matrix of a random graph, compared with the dense
//! Schur complement, and the energy identity for one data vector.

use metric_boundary::dtn::{dtn_matrix, quadratic_form_check, BoundaryMeasureMu};
use metric_boundary::oracles::{random_connected_graph, schur_complement_dtn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> metric_boundary::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = random_connected_graph(&mut rng, 12, 5, 0.1, 10.0, 3);
    let n = g.boundary().len();
    let mu = BoundaryMeasureMu::new((0..n).map(|k| 1.0 + k as f64 / n as f64).collect())?;

    let m = dtn_matrix(&g, &mu)?;
    let oracle = schur_complement_dtn(&g, &mu);
    println!("boundary {:?}", m.labels);
    println!("{:.5}", m.entries);
    println!("max difference from Schur complement: {:.2e}", (&m.entries - oracle).amax());
    let r = m.report();
    println!(
        "symmetry error {:.2e}, kernel error {:.2e}, min eigenvalue {:.3e}",
        r.symmetry_error, r.kernel_error, r.min_eigenvalue
    );

    let data: Vec<f64> = (0..n).map(|k| (k as f64).sin()).collect();
    let (form, energy) = quadratic_form_check(&g, &mu, &data)?;
    println!("mu(boundary) <Lambda F, F> = {form:.12}, energy = {energy:.12}");
    Ok(())
}
