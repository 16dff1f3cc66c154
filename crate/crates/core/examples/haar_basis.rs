//! Generalized Haar basis for the exit measure of a ternary tree, a
//! round trip through the coefficients, and the multiresolution operator.

use metric_boundary::families::TreeFamilySpec;
use metric_boundary::haar::{build_haar_basis, multiresolution_operator};
use metric_boundary::measures::tree_exit_cell_measure;

fn main() -> metric_boundary::Result<()> {
    let spec = TreeFamilySpec::new(3, 0.2, 1.0, 3);
    let (tree, nu) = tree_exit_cell_measure(&spec, &vec![])?;
    let basis = build_haar_basis(&tree, &nu)?;
    let n = basis.len();
    let gram_error = (basis.gram() - nalgebra::DMatrix::identity(n, n)).amax();
    println!("{n} basis functions, Gram error {gram_error:.2e}");
    for level in 0..=tree.depth() {
        let count = basis.levels.iter().filter(|&&l| l == level).count();
        println!("  level {level}: {count} functions");
    }

    let f: Vec<f64> = (0..n).map(|k| ((k * 5) % 7) as f64).collect();
    let c = basis.analyze(&f)?;
    let back = basis.synthesize(&c)?;
    let err = f.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("round trip error {err:.2e}");

    let jumps: Vec<f64> = tree.jumps.iter().map(|j| j.alpha).collect();
    let g = multiresolution_operator(&basis, &jumps, &basis.functions[n - 1])?;
    let ratio = g.iter().zip(&basis.functions[n - 1]).find(|(_, x)| x.abs() > 0.0).map(|(y, x)| y / x).unwrap();
    println!("finest detail function is an eigenvector with eigenvalue {ratio:.6} = 1/{:.6}", 1.0 / ratio);
    Ok(())
}
