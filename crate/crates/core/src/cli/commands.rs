use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::artifacts::{num, ArtifactDir, Assertion};
use super::{check, BasisArgs, Cli, Command, FamilyArgs, FamilyKind, HaarMode, LimitArgs, MeasureKind, MuKind};
use crate::dtn::{compressed_dtn_limit, dtn_matrix, BoundaryMeasureMu, CellWeights, DtnMatrix};
use crate::error::{Error, Result};
use crate::families::{build_counterexample, build_kary_tree, load_graph, save_graph, words, Address, CounterexampleSpec, TreeFamilySpec};
use crate::graph::MetricGraph;
use crate::haar::{build_haar_basis, multiresolution_operator, HaarBasis};
use crate::harmonic::{check_harmonic, counterexample_recurrence, solve_dirichlet, DirichletProblem};
use crate::measures::{equal_split_measure, exit_measure_limit, tree_exit_cell_measure, CellMeasure};
use crate::oracles::{classical_haar, epsilon_chain_components, schur_complement_dtn};
use crate::partition::{canonical_nested_partitions, BoundarySet, CellTree};

const STRUCTURE_TOL: f64 = 1e-10;

pub(super) fn dispatch(cli: &Cli, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    match &cli.command {
        Command::Gen(f) => gen(f, dir),
        Command::Partitions { family, graph } => partitions(family, graph.as_deref(), dir),
        Command::Solve { graph, values } => solve(graph, values, dir),
        Command::Dtn { family, graph, mu, weights, check } => dtn(family, graph.as_deref(), *mu, weights.as_deref(), *check, dir),
        Command::DtnLimit { family, limit, measure } => dtn_limit(family, limit, *measure, dir),
        Command::ExitMeasure { family, limit, normalize } => exit(family, limit, *normalize, dir),
        Command::Haar { family, basis, check } => haar(family, basis, *check, cli.seed, dir),
        Command::HaarApply { family, basis, mode, input } => haar_apply(family, basis, *mode, input, dir),
        Command::Counterexample { spine, pendant_exponent, check } => {
            counterexample(&CounterexampleSpec::with_power(*spine, *pendant_exponent), *check, dir)
        }
        Command::Check => {
            let a = check::run_suite(cli.seed)?;
            let rows = a
                .iter()
                .map(|x| vec![x.name.clone(), num(x.measured), num(x.tolerance), x.passed.to_string()])
                .collect::<Vec<_>>();
            dir.write_csv("suite.csv", &["assertion", "measured", "tolerance", "passed"], &rows)?;
            Ok(a)
        }
    }
}

fn tree_spec(f: &FamilyArgs) -> Result<TreeFamilySpec> {
    if f.family != FamilyKind::Kary {
        return Err(Error::InvalidArgument("this command needs --family kary".into()));
    }
    let spec = TreeFamilySpec::new(f.arity, f.ratio, f.base_length, f.depth);
    spec.check()?;
    Ok(spec)
}

fn family_graph(f: &FamilyArgs) -> Result<MetricGraph> {
    match f.family {
        FamilyKind::Kary => Ok(build_kary_tree(&tree_spec(f)?)?.0),
        FamilyKind::Counterexample => build_counterexample(&CounterexampleSpec::with_power(f.spine, f.pendant_exponent)),
    }
}

fn read_graph(path: &Path) -> Result<MetricGraph> {
    load_graph(&std::fs::read_to_string(path)?)
}

fn read_object(path: &Path) -> Result<BTreeMap<String, f64>> {
    serde_json::from_str(&std::fs::read_to_string(path)?).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn source_address(spec: &TreeFamilySpec, id: &str) -> Result<Address> {
    spec.parse_address(id)
        .ok_or_else(|| Error::InvalidArgument(format!("`{id}` is not a vertex id of this tree family")))
}

/// Tolerance for a matrix check, relative to the largest entry when that
/// exceeds one.
fn scaled(m: &DMatrix<f64>) -> f64 {
    STRUCTURE_TOL * m.amax().max(1.0)
}

fn gen(f: &FamilyArgs, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    let g = family_graph(f)?;
    dir.write("graph.json", save_graph(&g).as_bytes())?;
    let mut a = vec![Assertion::none("validation_violations", g.validate().len())];
    let reparsed = load_graph(&save_graph(&g))?;
    a.push(Assertion::none("round_trip_mismatch", usize::from(save_graph(&reparsed) != save_graph(&g))));
    Ok(a)
}

fn partitions(f: &FamilyArgs, graph: Option<&Path>, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    let points = match graph {
        Some(p) => BoundarySet::from_graph(&read_graph(p)?)?,
        None if f.family == FamilyKind::Kary => BoundarySet::from_tree(&tree_spec(f)?)?,
        None => BoundarySet::from_graph(&family_graph(f)?)?,
    };
    let tree = canonical_nested_partitions(&points);
    let mut rows = Vec::new();
    for (j, level) in tree.levels.iter().enumerate() {
        for (c, cell) in level.cells().iter().enumerate() {
            let members = cell.iter().map(|&p| points.label(p)).collect::<Vec<_>>().join(";");
            let mut diam: f64 = 0.0;
            for (x, &p) in cell.iter().enumerate() {
                for &q in &cell[x + 1..] {
                    diam = diam.max(points.distance(p, q));
                }
            }
            let jump = if j == 0 { String::new() } else { num(tree.jumps[j - 1].alpha) };
            rows.push(vec![j.to_string(), tree.cell_label(j, c).to_string(), members, num(diam), jump]);
        }
    }
    dir.write_csv("partitions.csv", &["level", "cell", "members", "diameter", "jump"], &rows)?;
    let jumps: Vec<Vec<String>> = tree
        .jumps
        .iter()
        .enumerate()
        .map(|(k, j)| vec![(k + 1).to_string(), num(j.alpha), j.before.to_string(), j.after.to_string()])
        .collect();
    dir.write_csv("jumps.csv", &["level", "alpha", "components_at_alpha", "components_above_alpha"], &jumps)?;

    let nesting = (1..tree.levels.len()).filter(|&j| !tree.levels[j].refines(&tree.levels[j - 1])).count();
    let oracle = tree
        .jumps
        .iter()
        .enumerate()
        .filter(|(j, jump)| epsilon_chain_components(&points, jump.alpha) != tree.levels[j + 1])
        .count();
    let strictly_decreasing = tree.jumps.windows(2).filter(|w| !(w[0].alpha > w[1].alpha)).count();
    Ok(vec![
        Assertion::none("metric_violations", usize::from(points.check_metric(1e-12).is_some())),
        Assertion::none("nesting_violations", nesting),
        Assertion::none("oracle_mismatches", oracle),
        Assertion::none("jump_order_violations", strictly_decreasing),
    ])
}

fn solve(graph: &Path, values: &Path, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    let g = read_graph(graph)?;
    let data = read_object(values)?;
    let problem = DirichletProblem::new(&g, &data)?;
    let f = solve_dirichlet(&problem)?;
    let rows: Vec<Vec<String>> =
        (0..g.vertex_count()).map(|v| vec![g.vertex_id(v).to_string(), num(f.value(v))]).collect();
    dir.write_csv("values.csv", &["vertex", "value"], &rows)?;
    let scale = data.values().fold(1.0f64, |m, x| m.max(x.abs()));
    let report = check_harmonic(&f, STRUCTURE_TOL * scale);
    Ok(vec![
        Assertion::at_most("max_kirchhoff_residual", report.max_residual, STRUCTURE_TOL * scale),
        Assertion::none("maximum_principle_violations", usize::from(!report.max_principle)),
    ])
}

fn matrix_rows(m: &DtnMatrix) -> Vec<Vec<String>> {
    (0..m.dim())
        .map(|i| std::iter::once(m.labels[i].clone()).chain(m.entries.row(i).iter().map(|&x| num(x))).collect())
        .collect()
}

fn write_matrix(dir: &mut ArtifactDir, name: &str, m: &DtnMatrix) -> Result<()> {
    let header: Vec<&str> = std::iter::once("vertex").chain(m.labels.iter().map(|s| s.as_str())).collect();
    dir.write_csv(name, &header, &matrix_rows(m))?;
    Ok(())
}

fn structure(prefix: &str, m: &DtnMatrix) -> Vec<Assertion> {
    let r = m.report();
    let tol = scaled(&m.entries);
    vec![
        Assertion::at_most(format!("{prefix}symmetry_error"), r.symmetry_error, tol),
        Assertion::at_most(format!("{prefix}kernel_error"), r.kernel_error, tol),
        Assertion::at_least(format!("{prefix}min_eigenvalue"), r.min_eigenvalue, tol),
    ]
}

fn dtn(
    f: &FamilyArgs,
    graph: Option<&Path>,
    mu: MuKind,
    weights: Option<&Path>,
    check: bool,
    dir: &mut ArtifactDir,
) -> Result<Vec<Assertion>> {
    let g = match graph {
        Some(p) => read_graph(p)?,
        None => family_graph(f)?,
    };
    let b = g.boundary();
    let mu = match weights {
        Some(p) => {
            let w = read_object(p)?;
            if w.len() != b.len() {
                return Err(Error::Dimension { expected: b.len(), got: w.len() });
            }
            let v = b
                .iter()
                .map(|&v| w.get(g.vertex_id(v)).copied().ok_or_else(|| Error::UnknownVertex(g.vertex_id(v).to_string())))
                .collect::<Result<Vec<_>>>()?;
            BoundaryMeasureMu::new(v)?
        }
        None => match mu {
            MuKind::Counting => BoundaryMeasureMu::counting(b.len()),
            MuKind::Uniform => BoundaryMeasureMu::new(vec![1.0 / b.len() as f64; b.len()])?,
        },
    };
    let m = dtn_matrix(&g, &mu)?;
    write_matrix(dir, "dtn.csv", &m)?;
    let mut a = structure("", &m);
    if check {
        let oracle = schur_complement_dtn(&g, &mu);
        a.push(Assertion::at_most("schur_oracle_difference", (&m.entries - oracle).amax(), 10.0 * scaled(&m.entries)));
    }
    Ok(a)
}

fn dtn_limit(f: &FamilyArgs, limit: &LimitArgs, measure: MeasureKind, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    let spec = tree_spec(f)?;
    let tol = limit.tol.unwrap_or(1e-6);
    let weights = match measure {
        MeasureKind::Exit => CellWeights::Exit(source_address(&spec, &limit.source_vertex)?),
        MeasureKind::Counting => CellWeights::Counting,
        MeasureKind::Rho => CellWeights::Rho,
    };
    let out = compressed_dtn_limit(&spec, limit.level, &limit.depths.0, &weights, tol)?;
    write_matrix(dir, "dtn_limit.csv", &out.matrix)?;
    let trace: Vec<Vec<String>> = out
        .trace
        .iter()
        .map(|s| vec![s.depth.to_string(), s.change.map(num).unwrap_or_default()])
        .collect();
    dir.write_csv("trace.csv", &["depth", "change"], &trace)?;
    let changes = out.changes();
    let nonmonotone = changes.windows(2).filter(|w| !(w[1] < w[0])).count();
    let mut a = vec![
        Assertion::at_most("final_change", changes.last().copied().unwrap_or(f64::INFINITY), tol),
        Assertion::none("nonmonotone_changes", nonmonotone),
    ];
    a.extend(structure("limit_", &out.matrix));
    Ok(a)
}

fn exit(f: &FamilyArgs, limit: &LimitArgs, normalize: bool, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    let spec = tree_spec(f)?;
    let tol = limit.tol.unwrap_or(1e-8);
    let source = source_address(&spec, &limit.source_vertex)?;
    let out = exit_measure_limit(&spec, &source, limit.level, &limit.depths.0, tol)?;
    let labels: Vec<String> = words(spec.arity, limit.level).iter().map(|w| spec.vertex_id(w)).collect();
    let total: f64 = out.masses.iter().sum();
    let shown = |m: &[f64]| -> Vec<f64> {
        let t: f64 = m.iter().sum();
        m.iter().map(|x| if normalize { x / t } else { *x }).collect()
    };
    let rows: Vec<Vec<String>> = labels.iter().zip(shown(&out.masses)).map(|(l, m)| vec![l.clone(), num(m)]).collect();
    dir.write_csv("exit_measure.csv", &["cell", "mass"], &rows)?;
    let mut trace = Vec::new();
    for s in &out.trace {
        for (l, m) in labels.iter().zip(shown(&s.masses)) {
            trace.push(vec![s.depth.to_string(), l.clone(), num(m), s.change.map(num).unwrap_or_default()]);
        }
    }
    dir.write_csv("trace.csv", &["depth", "cell", "mass", "change"], &trace)?;

    let changes: Vec<f64> = out.trace.iter().filter_map(|s| s.change).collect();
    let mut a = vec![
        Assertion::at_most("final_change", changes.last().copied().unwrap_or(f64::INFINITY), tol),
        Assertion::at_least("min_mass", out.masses.iter().copied().fold(f64::INFINITY, f64::min), 0.0),
    ];
    if source.is_empty() {
        let q = spec.ratio / spec.arity as f64;
        let closed = (1.0 - q) / (spec.base_length * q);
        a.push(Assertion::within("total_vs_root_conductance", total, closed, tol));
        if changes.len() >= 2 {
            let ratio = changes.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
            a.push(Assertion::at_most("max_change_ratio", ratio, (1.6 * q).min(1.0)));
        }
    }
    Ok(a)
}

fn basis_for(f: &FamilyArgs, args: &BasisArgs) -> Result<(TreeFamilySpec, CellTree, CellMeasure, HaarBasis)> {
    let spec = tree_spec(f)?;
    let (tree, mu) = match args.measure {
        MeasureKind::Exit => tree_exit_cell_measure(&spec, &source_address(&spec, &args.source_vertex)?)?,
        kind => {
            let tree = canonical_nested_partitions(&BoundarySet::from_tree(&spec)?);
            let mu = if kind == MeasureKind::Rho { equal_split_measure(&tree) } else { CellMeasure::counting(&tree) };
            (tree, mu)
        }
    };
    let basis = build_haar_basis(&tree, &mu)?;
    Ok((spec, tree, mu, basis))
}

fn haar(f: &FamilyArgs, args: &BasisArgs, check: bool, seed: u64, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    let (spec, tree, mu, basis) = basis_for(f, args)?;
    let finest: Vec<String> = (0..tree.finest().len()).map(|c| tree.cell_label(tree.depth(), c).to_string()).collect();
    let header: Vec<&str> = ["index", "level", "support"].into_iter().chain(finest.iter().map(|s| s.as_str())).collect();
    let rows: Vec<Vec<String>> = basis
        .functions
        .iter()
        .enumerate()
        .map(|(k, chi)| {
            let support = basis.support[k].map(|(j, c)| tree.cell_label(j, c).to_string()).unwrap_or_default();
            [k.to_string(), basis.levels[k].to_string(), support].into_iter().chain(chi.iter().map(|&x| num(x))).collect()
        })
        .collect();
    dir.write_csv("basis.csv", &header, &rows)?;
    let mrows: Vec<Vec<String>> = mu
        .levels
        .iter()
        .enumerate()
        .flat_map(|(j, m)| m.iter().enumerate().map(move |(c, x)| (j, c, *x)))
        .map(|(j, c, x)| vec![j.to_string(), tree.cell_label(j, c).to_string(), num(x)])
        .collect();
    dir.write_csv("measure.csv", &["level", "cell", "mass"], &mrows)?;

    let mut a = vec![Assertion::within("dimension", basis.len() as f64, finest.len() as f64, 0.0)];
    if check {
        let gram = basis.gram();
        let n = basis.len();
        a.push(Assertion::at_most("gram_identity_error", (gram - DMatrix::identity(n, n)).amax(), STRUCTURE_TOL));
        a.push(Assertion::at_most("additivity_error", mu.additivity_error(&tree), STRUCTURE_TOL * mu.total().max(1.0)));
        let (parseval, round_trip) = parseval_errors(&basis, seed, 100)?;
        a.push(Assertion::at_most("parseval_relative_error", parseval, STRUCTURE_TOL));
        a.push(Assertion::at_most("round_trip_relative_error", round_trip, STRUCTURE_TOL));
        if args.measure == MeasureKind::Rho && spec.arity == 2 {
            a.push(Assertion::at_most("classical_haar_difference", classical_difference(&basis, spec.depth), STRUCTURE_TOL));
        }
    }
    Ok(a)
}

/// Largest relative Parseval defect and reconstruction error over `count`
/// seeded functions with values in [-1, 1].
pub(super) fn parseval_errors(basis: &HaarBasis, seed: u64, count: usize) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut parseval, mut round_trip) = (0.0f64, 0.0f64);
    for _ in 0..count {
        let f: Vec<f64> = (0..basis.weights.len()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let c = basis.analyze(&f)?;
        let norm2 = basis.inner(&f, &f);
        let coeff2: f64 = c.iter().map(|x| x * x).sum();
        parseval = parseval.max((norm2 - coeff2).abs() / norm2);
        let back = basis.synthesize(&c)?;
        let scale = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        round_trip = round_trip.max(back.iter().zip(&f).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale);
    }
    Ok((parseval, round_trip))
}

/// Max difference from the classical dyadic system, each function matched
/// up to sign.
pub(super) fn classical_difference(basis: &HaarBasis, depth: usize) -> f64 {
    let classical = classical_haar(depth);
    if classical.len() != basis.len() {
        return f64::INFINITY;
    }
    basis
        .functions
        .iter()
        .zip(&classical)
        .map(|(x, y)| {
            let plus = x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let minus = x.iter().zip(y).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
            plus.min(minus)
        })
        .fold(0.0, f64::max)
}

fn read_values(path: &Path) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_path(path)?;
    let col = r
        .headers()?
        .iter()
        .position(|h| h == "value")
        .ok_or_else(|| Error::Schema(format!("{}: missing `value` column", path.display())))?;
    r.records()
        .map(|rec| {
            let rec = rec?;
            let s = rec.get(col).unwrap_or("");
            s.trim().parse::<f64>().map_err(|_| Error::Schema(format!("{}: bad value `{s}`", path.display())))
        })
        .collect()
}

fn haar_apply(f: &FamilyArgs, args: &BasisArgs, mode: HaarMode, input: &Path, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    let (_, tree, _, basis) = basis_for(f, args)?;
    let x = read_values(input)?;
    let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let finest: Vec<String> = (0..tree.finest().len()).map(|c| tree.cell_label(tree.depth(), c).to_string()).collect();
    let (rows, a) = match mode {
        HaarMode::Analyze => {
            let c = basis.analyze(&x)?;
            let back = basis.synthesize(&c)?;
            let err = back.iter().zip(&x).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
            let rows: Vec<Vec<String>> = c.iter().enumerate().map(|(k, v)| vec![k.to_string(), num(*v)]).collect();
            (rows, vec![Assertion::at_most("round_trip_error", err, STRUCTURE_TOL * scale)])
        }
        HaarMode::Synthesize => {
            let v = basis.synthesize(&x)?;
            let back = basis.analyze(&v)?;
            let err = back.iter().zip(&x).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
            let rows = finest.iter().zip(&v).map(|(l, v)| vec![l.clone(), num(*v)]).collect();
            (rows, vec![Assertion::at_most("round_trip_error", err, STRUCTURE_TOL * scale)])
        }
        HaarMode::Operator => {
            let jumps: Vec<f64> = tree.jumps.iter().map(|j| j.alpha).collect();
            let v = multiresolution_operator(&basis, &jumps, &x)?;
            let mean = basis.inner(&v, &vec![1.0; v.len()]);
            let out_scale = v.iter().fold(scale, |m, y| m.max(y.abs()));
            let rows = finest.iter().zip(&v).map(|(l, v)| vec![l.clone(), num(*v)]).collect();
            (rows, vec![Assertion::within("output_integral", mean, 0.0, STRUCTURE_TOL * out_scale * basis.weights.iter().sum::<f64>())])
        }
    };
    let key = if mode == HaarMode::Analyze { "index" } else { "cell" };
    dir.write_csv("output.csv", &[key, "value"], &rows)?;
    Ok(a)
}

fn counterexample(spec: &CounterexampleSpec, check: bool, dir: &mut ArtifactDir) -> Result<Vec<Assertion>> {
    let rec = counterexample_recurrence(spec)?;
    let rows: Vec<Vec<String>> = rec
        .values
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let n = k + 1;
            let m = if (2..spec.spine).contains(&n) { spec.pendant_count(n).to_string() } else { "0".into() };
            let g = rec.fluxes.get(k).map(|x| num(*x)).unwrap_or_default();
            vec![spec.spine_id(n), n.to_string(), m, num(*f), g]
        })
        .collect();
    dir.write_csv("spine.csv", &["vertex", "n", "pendants", "value", "slope"], &rows)?;
    let increasing = rec.values.windows(2).filter(|w| !(w[1] > w[0])).count();
    let mut a = vec![
        Assertion::none("nonincreasing_steps", increasing),
        Assertion::none("bound_failures", rec.bound_failures(spec).len()),
        Assertion::none("overflow", usize::from(rec.overflow_at.is_some())),
    ];
    if check {
        let first = rec.values.iter().position(|&f| f > 1e3).map_or(f64::INFINITY, |k| (k + 1) as f64);
        a.push(Assertion::at_most("first_index_above_1e3", first, 100.0));
        a.push(Assertion::at_most("solver_relative_difference", check::recurrence_vs_solver(spec)?, 1e-8));
    }
    Ok(a)
}
