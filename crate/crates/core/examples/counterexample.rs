//! Spine values of the pendant-spine graph with M_n = n^2: the flux
//! recurrence against a full Dirichlet solve.

use std::collections::BTreeMap;

use metric_boundary::families::{build_counterexample, CounterexampleSpec};
use metric_boundary::harmonic::{counterexample_recurrence, solve_dirichlet, DirichletProblem};

fn main() -> metric_boundary::Result<()> {
    let spec = CounterexampleSpec::with_power(30, 2);
    let rec = counterexample_recurrence(&spec)?;
    for (k, f) in rec.values.iter().enumerate().take(12) {
        println!("f(v{}) = {f:.6}", k + 1);
    }
    let first = rec.values.iter().position(|&f| f > 1e3).map(|k| k + 1);
    println!("first n with f(v_n) > 1e3: {first:?}; bound failures: {:?}", rec.bound_failures(&spec));

    let g = build_counterexample(&spec)?;
    let mut data: BTreeMap<String, f64> = g.boundary_ids().into_iter().map(|id| (id, 0.0)).collect();
    data.insert(spec.spine_id(spec.spine), *rec.values.last().unwrap());
    let f = solve_dirichlet(&DirichletProblem::new(&g, &data)?)?;
    let scale = rec.values.last().unwrap();
    let worst = (1..=spec.spine)
        .map(|n| (f.value_of(&spec.spine_id(n)).unwrap() - rec.values[n - 1]).abs() / scale)
        .fold(0.0, f64::max);
    println!("{} vertices; solver vs recurrence, relative: {worst:.2e}", g.vertex_count());
    Ok(())
}
