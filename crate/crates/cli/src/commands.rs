use std::f64::consts::PI;
use std::path::Path;

use contextia::constructions::{
    align_scenario, kcbs_pentagon, matrix_units, mixture_state, random_pure_state,
    typeiii_projections, umbrella_family,
};
use contextia::exclusivity::{
    enumerate_assignments_01, noncontextual_bound, pm_cycle_min, ExclusivityGraph,
};
use contextia::hvm::{hvm_random, pm_model_value, SignMeasure};
use contextia::io::{parse_graph, parse_model, parse_scenario, DecodeError};
use contextia::linalg::random::derive_seed;
use contextia::report::{CheckRecord, ViolationReport};
use contextia::tracial::{
    random_projection_pair, sample_campaign_pentagon, verify_dim2_no_violation, verify_proof_chain,
    verify_theorem1, verify_trace_modularity,
};
use contextia::{Tolerances, UnitVector, CLASSICAL_BOUND};
use serde::Serialize;

use crate::{Cli, CliError, CliResult, Command, Emitter, Exit};

/// Tolerance for the hidden-variable campaign bounds.
const HVM_TOL: f64 = 1e-12;

pub(crate) fn dispatch(cli: &Cli, out: &mut Emitter) -> CliResult<Exit> {
    let tol = Tolerances::with_projection(cli.global.tolerance);
    let seed = cli.global.seed;
    match &cli.command {
        Command::Bound { graph } => bound(graph, out),
        Command::Kcbs {
            epsilon,
            multiplicity,
            conjugate_seed,
        } => kcbs(
            *epsilon,
            *multiplicity,
            conjugate_seed.unwrap_or(seed),
            &tol,
            out,
        ),
        Command::Tracial {
            dims,
            trials,
            replay,
        } => match replay {
            Some(s) => tracial_replay(dims, *s, &tol, out),
            None => tracial(dims, *trials, seed, &tol, out),
        },
        Command::Hvm {
            graph,
            model,
            models,
        } => match model {
            Some(path) => hvm_model(path, out),
            None => hvm_campaign(graph.as_deref(), *models, seed, out),
        },
        Command::Scan { theta_range, steps } => scan(theta_range, *steps, out),
        Command::Verify { scenario } => verify(scenario, &tol, out),
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn decode_err(path: &Path) -> impl FnOnce(DecodeError) -> CliError + '_ {
    move |source| CliError::Decode {
        path: path.display().to_string(),
        source,
    }
}

fn announce_seed(seed: u64) {
    eprintln!("seed: {seed}");
}

#[derive(Serialize)]
struct BoundRecord {
    vertices: usize,
    bound: u32,
    assignments: usize,
}

fn bound(path: &Path, out: &mut Emitter) -> CliResult<Exit> {
    let g = parse_graph(&read(path)?).map_err(decode_err(path))?;
    let assignments = enumerate_assignments_01(&g)?.len();
    out.emit(&BoundRecord {
        vertices: g.n_vertices(),
        bound: noncontextual_bound(&g)?,
        assignments,
    })?;
    Ok(Exit::Success)
}

fn kcbs(
    epsilon: Option<f64>,
    m: usize,
    conj_seed: u64,
    tol: &Tolerances,
    out: &mut Emitter,
) -> CliResult<Exit> {
    let upper = 5f64.sqrt() - 2.0;
    if let Some(e) = epsilon {
        if !(e > 0.0 && e < upper) {
            return Err(CliError::Usage(format!(
                "--epsilon {e} violates the mixture precondition 0 < epsilon < √5 - 2 = {upper:.7}"
            )));
        }
    }
    if m == 0 {
        return Err(CliError::Usage("--multiplicity must be at least 1".into()));
    }
    let eps = epsilon.unwrap_or(0.1);
    announce_seed(conj_seed);

    let mut reports = Vec::with_capacity(4);
    let pentagon = kcbs_pentagon();
    reports.push(ViolationReport::new(
        "kcbs_pentagon",
        pentagon.value(tol)?,
        CLASSICAL_BOUND,
        Some("pure state (0, 0, 1)".into()),
    ));

    let units = matrix_units(m)?;
    let dim = units.dim();
    let r = typeiii_projections(&units, tol)?;
    let phi = UnitVector::basis(dim, 2 * m);
    let phi_perp = UnitVector::basis(dim, 0);
    let pure = r.clone().with_state(contextia::DensityState::pure(&phi))?;
    reports.push(ViolationReport::new(
        format!("matrix_units_m{m}"),
        pure.value(tol)?,
        CLASSICAL_BOUND,
        Some(format!("pure state e_{} in range(V33), dim {dim}", 2 * m)),
    ));

    let rho = mixture_state(&phi, &phi_perp, eps, tol)?;
    let mix_value = r.value_in(&rho, tol)?;
    reports.push(ViolationReport::new(
        format!("mixture_m{m}_eps{eps}"),
        mix_value,
        CLASSICAL_BOUND,
        Some(format!(
            "(1 - eps/sqrt5)|e_{0}><e_{0}| + (eps/sqrt5)|e_0><e_0|, eps = {eps}",
            2 * m
        )),
    ));

    let start = random_pure_state(dim, conj_seed);
    let aligned = align_scenario(&r, &start, &phi, tol)?;
    reports.push(ViolationReport::new(
        format!("conjugated_m{m}_seed{conj_seed}"),
        aligned.value(tol)?,
        CLASSICAL_BOUND,
        Some(format!(
            "random pure state (seed {conj_seed}) with projections U*R_iU, U aligning it onto e_{}",
            2 * m
        )),
    ));

    for rep in &reports {
        out.emit(rep)?;
    }
    let mixture_ok = mix_value >= 5f64.sqrt() - eps - tol.projection;
    if reports.iter().all(|r| r.violated) && mixture_ok {
        Ok(Exit::Success)
    } else {
        eprintln!("property failure: expected every scenario to exceed the classical bound");
        Ok(Exit::PropertyFailure)
    }
}

/// Per-dimension campaign summary.
#[derive(Debug, Serialize)]
struct TracialSummary {
    dim: usize,
    trials: usize,
    seed: u64,
    max_value: f64,
    max_rank_sum: usize,
    min_theorem_slack: f64,
    min_chain_slack: f64,
    min_modularity_slack: f64,
    failures: usize,
    first_failure_seed: Option<u64>,
}

fn check_dims(dims: &[usize]) -> CliResult<()> {
    if dims.is_empty() {
        return Err(CliError::Usage(
            "--dims must list at least one dimension".into(),
        ));
    }
    if let Some(d) = dims.iter().find(|d| !(2..=8).contains(*d)) {
        return Err(CliError::Usage(format!("dimension {d} outside 2..=8")));
    }
    Ok(())
}

fn trial_seed(base: u64, dim: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(base, dim as u64), trial as u64)
}

/// Every record of one trial, in a fixed order.
fn trial_records(
    dim: usize,
    seed: u64,
    tol: &Tolerances,
) -> CliResult<(Vec<CheckRecord>, f64, usize)> {
    let s = sample_campaign_pentagon(dim, seed, tol)?;
    let mut records = vec![verify_theorem1(&s).with_seed(Some(seed))];
    let value = records[0].value;
    records.extend(
        verify_proof_chain(&s, tol)?
            .steps
            .into_iter()
            .map(|r| r.with_seed(Some(seed))),
    );

    let (p, q) = random_projection_pair(dim, derive_seed(seed, 1), tol)?;
    records.push(verify_trace_modularity(&p, &q, tol)?.with_seed(Some(seed)));
    Ok((records, value, s.ranks().iter().sum()))
}

fn tracial(
    dims: &[usize],
    trials: usize,
    base: u64,
    tol: &Tolerances,
    out: &mut Emitter,
) -> CliResult<Exit> {
    check_dims(dims)?;
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    announce_seed(base);
    let mut exit = Exit::Success;
    for &dim in dims {
        let mut sum = TracialSummary {
            dim,
            trials,
            seed: base,
            max_value: f64::NEG_INFINITY,
            max_rank_sum: 0,
            min_theorem_slack: f64::INFINITY,
            min_chain_slack: f64::INFINITY,
            min_modularity_slack: f64::INFINITY,
            failures: 0,
            first_failure_seed: None,
        };
        for t in 0..trials {
            let ts = trial_seed(base, dim, t);
            let (records, value, ranks) = trial_records(dim, ts, tol)?;
            sum.max_value = sum.max_value.max(value);
            sum.max_rank_sum = sum.max_rank_sum.max(ranks);
            for r in &records {
                let slot = match r.check.as_str() {
                    "theorem1" => &mut sum.min_theorem_slack,
                    "trace_modularity" => &mut sum.min_modularity_slack,
                    _ => &mut sum.min_chain_slack,
                };
                *slot = slot.min(r.slack);
            }
            if !records.iter().all(CheckRecord::holds) {
                sum.failures += 1;
                if sum.first_failure_seed.is_none() {
                    sum.first_failure_seed = Some(ts);
                    for r in records.iter().filter(|r| !r.holds()) {
                        out.emit(r)?;
                    }
                    eprintln!("property failure in dim {dim}; replay with: contextia tracial --dims {dim} --replay {ts}");
                }
                exit = Exit::PropertyFailure;
            }
        }
        out.emit(&sum)?;
        if dim == 2 {
            let report = verify_dim2_no_violation(trials, derive_seed(base, 2))?;
            out.emit(&report)?;
            if !report.holds() {
                eprintln!(
                    "property failure in the dimension-2 campaign (seed {})",
                    report.seed
                );
                exit = Exit::PropertyFailure;
            }
        }
    }
    Ok(exit)
}

fn tracial_replay(
    dims: &[usize],
    seed: u64,
    tol: &Tolerances,
    out: &mut Emitter,
) -> CliResult<Exit> {
    check_dims(dims)?;
    announce_seed(seed);
    let mut exit = Exit::Success;
    for &dim in dims {
        let (records, _, _) = trial_records(dim, seed, tol)?;
        for r in &records {
            out.emit(r)?;
        }
        if !records.iter().all(CheckRecord::holds) {
            exit = Exit::PropertyFailure;
        }
    }
    Ok(exit)
}

#[derive(Serialize)]
struct HvmSummary {
    vertices: usize,
    assignments: usize,
    bound: u32,
    models: usize,
    seed: u64,
    max_total: f64,
    pm_cycle_min: Option<i64>,
    min_pm_value: Option<f64>,
    holds: bool,
}

fn hvm_campaign(
    graph: Option<&Path>,
    models: usize,
    base: u64,
    out: &mut Emitter,
) -> CliResult<Exit> {
    if models == 0 {
        return Err(CliError::Usage("--models must be at least 1".into()));
    }
    let g = match graph {
        Some(p) => parse_graph(&read(p)?).map_err(decode_err(p))?,
        None => ExclusivityGraph::cycle(5)?,
    };
    announce_seed(base);
    let n = g.n_vertices();
    let bound = noncontextual_bound(&g)?;
    let assignments = enumerate_assignments_01(&g)?.len();
    let mut max_total = f64::NEG_INFINITY;
    for i in 0..models {
        let m = hvm_random(&g, derive_seed(base, i as u64))?;
        max_total = max_total.max(m.predict().total);
    }
    let mut holds = max_total <= f64::from(bound) + HVM_TOL;

    // the ±1 form applies when the graph is a cycle
    let is_cycle = n >= 3 && ExclusivityGraph::cycle(n).is_ok_and(|c| c == g);
    let (pm_min, min_pm) = if is_cycle {
        let floor = pm_cycle_min(n)?;
        let mut lowest = f64::INFINITY;
        for i in 0..models {
            let mu = SignMeasure::random(n, derive_seed(base ^ 0x5151, i as u64))?;
            lowest = lowest.min(pm_model_value(n, &mu)?);
        }
        holds &= lowest >= floor as f64 - HVM_TOL;
        (Some(floor), Some(lowest))
    } else {
        (None, None)
    };
    out.emit(&HvmSummary {
        vertices: n,
        assignments,
        bound,
        models,
        seed: base,
        max_total,
        pm_cycle_min: pm_min,
        min_pm_value: min_pm,
        holds,
    })?;
    Ok(if holds {
        Exit::Success
    } else {
        Exit::PropertyFailure
    })
}

#[derive(Serialize)]
struct PredictionRecord {
    vertex: usize,
    probability: f64,
}

#[derive(Serialize)]
struct ModelSummary {
    total: f64,
    bound: u32,
    violated: bool,
}

fn hvm_model(path: &Path, out: &mut Emitter) -> CliResult<Exit> {
    let m = parse_model(&read(path)?).map_err(decode_err(path))?;
    let p = m.predict();
    for (vertex, &probability) in p.vertex_probs.iter().enumerate() {
        out.emit(&PredictionRecord {
            vertex,
            probability,
        })?;
    }
    let bound = noncontextual_bound(m.graph())?;
    let violated = p.total > f64::from(bound) + HVM_TOL;
    out.emit(&ModelSummary {
        total: p.total,
        bound,
        violated,
    })?;
    Ok(if violated {
        Exit::PropertyFailure
    } else {
        Exit::Success
    })
}

#[derive(Serialize)]
struct ScanRow {
    theta: f64,
    adjacent_overlap: f64,
    pentagon_value: f64,
}

fn scan(range: &[f64], steps: usize, out: &mut Emitter) -> CliResult<Exit> {
    let [a, b] = match range {
        [a, b] => [*a, *b],
        [] => [0.5, 1.2],
        _ => return Err(CliError::Usage("--theta-range takes two values".into())),
    };
    if !(a > 0.0 && a < b && b < PI / 2.0) {
        return Err(CliError::Usage(format!(
            "--theta-range needs 0 < a < b < π/2, got {a} {b}"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    for i in 0..steps {
        let theta = a + (b - a) * i as f64 / (steps - 1) as f64;
        let fam = umbrella_family(theta)?;
        out.emit(&ScanRow {
            theta,
            adjacent_overlap: fam.adjacent_overlap(),
            pentagon_value: fam.axis_value(),
        })?;
    }
    Ok(Exit::Success)
}

fn verify(path: &Path, tol: &Tolerances, out: &mut Emitter) -> CliResult<Exit> {
    let doc = parse_scenario(&read(path)?, tol).map_err(decode_err(path))?;
    let s = &doc.scenario;
    let id = doc.id.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|x| x.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scenario".into())
    });
    if s.state().is_some() {
        out.emit(&ViolationReport::new(
            id,
            s.value(tol)?,
            CLASSICAL_BOUND,
            Some("state from file".into()),
        ))?;
    }
    let mut records = vec![verify_theorem1(s)];
    records.extend(verify_proof_chain(s, tol)?.steps);
    for r in &records {
        out.emit(r)?;
    }
    Ok(if records.iter().all(CheckRecord::holds) {
        Exit::Success
    } else {
        Exit::PropertyFailure
    })
}
