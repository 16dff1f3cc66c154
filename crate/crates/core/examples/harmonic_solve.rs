//! Dirichlet problems: the harmonic extension of boundary data, its fluxes,
//! energy and a Kirchhoff/maximum-principle report.

use std::collections::BTreeMap;

use metric_boundary::families::fixtures::star;
use metric_boundary::harmonic::{check_harmonic, solve_dirichlet, DirichletProblem};

fn main() -> metric_boundary::Result<()> {
    let g = star(4, 1.0);
    let data = BTreeMap::from([
        ("v1".to_string(), 1.0),
        ("v2".to_string(), 0.0),
        ("v3".to_string(), 0.0),
        ("v4".to_string(), -0.5),
    ]);
    let f = solve_dirichlet(&DirichletProblem::new(&g, &data)?)?;
    for v in 0..g.vertex_count() {
        println!("f({}) = {:+.6}  flux {:+.6}", g.vertex_id(v), f.value(v), f.flux(v));
    }
    let report = check_harmonic(&f, 1e-12);
    println!("energy {:.6}, max residual {:.2e}, maximum principle {}", report.energy, report.max_residual, report.max_principle);
    Ok(())
}
