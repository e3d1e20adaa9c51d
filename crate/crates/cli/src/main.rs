//! `qsl`: command-line front end for the quantum speed limit toolkit.
//!
//! Four verbs. `trace` samples survival curves and their lower bounds into
//! a CSV file; `bounds` prints the orthogonalization-time report for a
//! scenario; `witness` runs the Fisher-information entanglement witness;
//! `validate` loads a scenario file and reports the first violated
//! invariant. Scenarios come from JSON files (`--scenario`) or the built-in
//! table (`--builtin`).
//!
//! Exit codes: 0 success, 2 validation failure, 3 i/o failure. All
//! diagnostics go to stderr; reports and CSV summaries go to stdout.

#![forbid(unsafe_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use qsl_core::{
    build_collective_spin, build_named_state, build_one_qubit_example, build_two_qubit_example,
    dichotomy_check, empirical_theta_perp, entanglement_witness, fisher_bound, generalized_bounds,
    load_scenario, producibility_bound, quantum_fisher, std_dev, theta_perp_bounds,
    trace_evolution, with_rank_threshold, Axis, BoundCurve, Dichotomy, Error as CoreError,
    EvolutionTrace, NamedState, Scenario64, ScenarioHamiltonian, SurvivalKind,
};

/// Quantum speed limits of unitary evolution: survival curves, Fisher
/// information bounds, and entanglement witnesses.
#[derive(Parser)]
#[command(name = "qsl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample survival and bound curves onto a uniform grid, write CSV.
    Trace(TraceArgs),
    /// Report energy spread, Fisher information, and passage-time bounds.
    Bounds(BoundsArgs),
    /// Test for entanglement via Fisher information of a local generator.
    Witness(ScenarioArgs),
    /// Load a scenario and report whether it passes validation.
    Validate(ScenarioArgs),
}

/// Where the scenario comes from; exactly one must be given.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Scenario JSON file.
    #[arg(long, value_name = "FILE")]
    scenario: Option<PathBuf>,
    /// Built-in name: fig1, fig2, or ghz:<n>, product_plus:<n>,
    /// computational:<n> paired with the generator (1/2)*sum sigma_z.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args)]
struct ScenarioArgs {
    #[command(flatten)]
    source: Source,
    /// Eigenvalue threshold separating the state's range from its null
    /// space; overrides the default 1e-10.
    #[arg(long, value_name = "EPS")]
    tol_rank: Option<f64>,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_name = "EPS")]
    tol_rank: Option<f64>,
    /// Evolution horizon; defaults to the Fisher window end pi/sqrt(F).
    #[arg(long, value_name = "T")]
    t_max: Option<f64>,
    /// Number of grid samples from 0 to the horizon inclusive.
    #[arg(long, default_value_t = 400)]
    steps: usize,
    /// Output file.
    #[arg(long, default_value = "trace.csv", value_name = "FILE")]
    out: PathBuf,
    /// Output format.
    #[arg(long, default_value = "csv", value_parser = ["csv"])]
    format: String,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_name = "EPS")]
    tol_rank: Option<f64>,
    /// Horizon for the empirical root search and the dichotomy grid;
    /// defaults to pi/sqrt(F).
    #[arg(long, value_name = "T")]
    t_max: Option<f64>,
    /// Number of scan samples.
    #[arg(long, default_value_t = 400)]
    steps: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Trace(args) => cmd_trace(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 3 for filesystem failures, 2 for everything else (validation).
fn exit_code(err: &anyhow::Error) -> u8 {
    let core_io = err
        .downcast_ref::<CoreError>()
        .is_some_and(CoreError::is_io);
    if core_io || err.downcast_ref::<std::io::Error>().is_some() {
        3
    } else {
        2
    }
}

const CURVES: [(&str, SurvivalKind); 3] = [
    ("T", SurvivalKind::Fidelity),
    ("E", SurvivalKind::Projection),
    ("D", SurvivalKind::Distance),
];

fn resolve(source: &Source, tol_rank: Option<f64>) -> Result<Scenario64> {
    let scenario = match (&source.scenario, &source.builtin) {
        (Some(path), None) => load_scenario(path)
            .with_context(|| format!("cannot load scenario '{}'", path.display()))?,
        (None, Some(name)) => builtin_scenario(name)?,
        _ => unreachable!("clap enforces exactly one of --scenario/--builtin"),
    };
    Ok(match tol_rank {
        Some(threshold) => with_rank_threshold(&scenario, threshold)?,
        None => scenario,
    })
}

/// The built-in table. `fig1` and `fig2` freeze the two worked examples;
/// `<state>:<n>` pairs a named n-qubit state with `(1/2)*sum_k sigma_z^(k)`,
/// the standard generator for the witness.
fn builtin_scenario(name: &str) -> Result<Scenario64, CoreError> {
    match name {
        "fig1" => build_two_qubit_example(2f64.sqrt() - 1.0, 1.0),
        "fig2" => build_one_qubit_example(0.75, 1.0),
        _ => named_scenario(name),
    }
}

fn named_scenario(name: &str) -> Result<Scenario64, CoreError> {
    let unknown = || CoreError::UnknownName {
        kind: "builtin",
        name: name.to_string(),
    };
    let (state, count) = name.split_once(':').ok_or_else(unknown)?;
    let n: usize = count.parse().map_err(|_| unknown())?;
    let named = match state {
        "ghz" => NamedState::Ghz,
        "product_plus" => NamedState::ProductPlus,
        "computational" => NamedState::Computational,
        _ => return Err(unknown()),
    };
    let rho0 = build_named_state(named, n)?;
    let h = build_collective_spin(n, Axis::Z, 0.5)?;
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n as f64);
    Ok(Scenario64::new(
        name,
        rho0,
        ScenarioHamiltonian::Local(h),
        None,
        params,
    ))
}

/// 12 significant digits; the one formatting used for every real number we
/// emit, so identical inputs give identical bytes.
fn sig(v: f64) -> String {
    format!("{v:.11e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "unbounded".to_string(), sig)
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

// Same grid as the trace: endpoint pinned so the final sample sits exactly
// on t_max rather than one ulp past it.
fn uniform_grid(t_max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                t_max
            } else {
                t_max * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

fn cmd_trace(args: TraceArgs) -> Result<()> {
    let scenario = resolve(&args.source, args.tol_rank)?;
    let spec = scenario.to_evolution_spec()?;
    let dh = std_dev(spec.hamiltonian(), spec.rho0())?;
    let qfi = quantum_fisher(spec.rho0(), spec.hamiltonian())?.qfi;
    let t_max = match args.t_max {
        Some(t) => t,
        None if qfi > 0.0 => std::f64::consts::PI / qfi.sqrt(),
        None => bail!("F = 0 leaves the Fisher window unbounded; pass --t-max"),
    };
    let trace = trace_evolution(&spec, t_max, args.steps)?;

    // The generalized pair needs the initial overlap with the effective
    // projector, which the trace itself does not carry.
    let c = spec.survival_e(0.0);
    let (gen_lower, gen_upper) = generalized_bounds(qfi, c)?;
    let csv = render_csv(&trace, &gen_lower, &gen_upper);
    std::fs::write(&args.out, csv)
        .with_context(|| format!("cannot write '{}'", args.out.display()))?;

    println!("scenario: {}", scenario.name);
    println!("dim: {}", scenario.dim());
    if spec.rho0().is_pure() {
        println!("state: pure");
    } else {
        println!(
            "state: mixed (rank {}), P column left empty",
            spec.rho0().rank()
        );
    }
    println!("dH: {}", sig(dh));
    println!("F: {}", sig(qfi));
    println!("c: {}", sig(c));
    let theta = theta_perp_bounds(dh, qfi)?;
    println!("theta_mt: {}", fmt_opt(theta.mt));
    println!("theta_fisher: {}", fmt_opt(theta.fisher));
    for (label, kind) in CURVES {
        let root = empirical_theta_perp(&spec, kind, t_max, args.steps)?;
        println!(
            "theta_perp[{label}]: {}",
            root.map_or_else(|| "none in range".to_string(), sig)
        );
    }
    println!("wrote {} ({} rows)", args.out.display(), trace.times.len());
    Ok(())
}

/// One row per sample. Bound columns hold the raw trigonometric formulas at
/// every time; the two flag columns say where the MT and Fisher claims
/// actually apply. P stays empty for mixed initial states.
fn render_csv(
    trace: &EvolutionTrace<f64>,
    gen_lower: &BoundCurve<f64>,
    gen_upper: &BoundCurve<f64>,
) -> String {
    let mut out = String::with_capacity(64 + trace.times.len() * 200);
    out.push_str(
        "t,P,T,E,D,mt_bound,fisher_bound,gen_lower,gen_upper,in_mt_window,in_fisher_window\n",
    );
    for (i, &t) in trace.times.iter().enumerate() {
        let p = match &trace.survival_p {
            Some(values) => sig(values[i]),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            sig(t),
            p,
            sig(trace.survival_t[i]),
            sig(trace.survival_e[i]),
            sig(trace.survival_d[i]),
            sig(trace.bound_mt[i]),
            sig(trace.bound_fisher[i]),
            sig(gen_lower.raw_value(t)),
            sig(gen_upper.raw_value(t)),
            flag(trace.in_mt_window[i]),
            flag(trace.in_fisher_window[i]),
        ));
    }
    out
}

fn cmd_bounds(args: BoundsArgs) -> Result<()> {
    if args.steps < 2 {
        return Err(CoreError::TooFewSteps { steps: args.steps }.into());
    }
    let scenario = resolve(&args.source, args.tol_rank)?;
    let spec = scenario.to_evolution_spec()?;
    let dh = std_dev(spec.hamiltonian(), spec.rho0())?;
    let fisher = quantum_fisher(spec.rho0(), spec.hamiltonian())?;
    let qfi = fisher.qfi;

    println!("scenario: {}", scenario.name);
    println!("dim: {}", scenario.dim());
    println!("dH: {}", sig(dh));
    if fisher.saturated {
        println!("F: {} (saturates 4*dH^2)", sig(qfi));
    } else {
        println!("F: {} (4*dH^2 = {})", sig(qfi), sig(fisher.variance_bound));
    }
    let theta = theta_perp_bounds(dh, qfi)?;
    println!("theta_mt: {}", fmt_opt(theta.mt));
    println!("theta_fisher: {}", fmt_opt(theta.fisher));
    if qfi == 0.0 {
        println!("no finite passage time: the state is stationary under this generator");
    }

    // Empirical search needs a horizon; without one (F = 0 and no --t-max)
    // the state never moves and the roots cannot exist at any time.
    let horizon = args.t_max.or(theta.fisher);
    match horizon {
        Some(t_max) => {
            for (label, kind) in CURVES {
                let root = empirical_theta_perp(&spec, kind, t_max, args.steps)?;
                println!(
                    "theta_perp[{label}]: {}",
                    root.map_or_else(|| "none in range".to_string(), sig)
                );
            }
        }
        None => {
            for (label, _) in CURVES {
                println!("theta_perp[{label}]: none (stationary evolution)");
            }
        }
    }

    let grid = uniform_grid(horizon.unwrap_or(1.0), args.steps);
    match dichotomy_check(&spec, &grid) {
        Ok(class) => {
            let name = match class {
                Dichotomy::StrictAbove => "STRICT_ABOVE",
                Dichotomy::ExactEquality => "EXACT_EQUALITY",
                Dichotomy::Violation => "VIOLATION",
            };
            println!("dichotomy: {name}");
            // Both ends of the sampled gap: the minimum certifies soundness
            // (never materially below the bound), the maximum separates the
            // strict regime from exact equality. E(0) = bound(0) = 1 pins
            // the minimum near zero for every sound scenario.
            let curve = fisher_bound(qfi)?;
            let gaps = grid
                .iter()
                .filter_map(|&t| curve.value(t).map(|b| spec.survival_e(t) - b));
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for gap in gaps {
                lo = lo.min(gap);
                hi = hi.max(gap);
            }
            if lo.is_finite() {
                println!(
                    "gap E - fisher_bound in window: min {} max {}",
                    sig(lo),
                    sig(hi)
                );
            }
        }
        Err(CoreError::NonDefaultProjector) => {
            println!("dichotomy: not applicable (custom projector)");
        }
        Err(other) => return Err(other.into()),
    }
    Ok(())
}

fn cmd_witness(args: ScenarioArgs) -> Result<()> {
    let scenario = resolve(&args.source, args.tol_rank)?;
    let local = scenario.hamiltonian.local().ok_or_else(|| {
        anyhow!(
            "scenario '{}' has no local structure; the witness needs a collective_spin generator",
            scenario.name
        )
    })?;
    let report = entanglement_witness(&scenario.rho0, local)?;
    println!("scenario: {}", scenario.name);
    println!("n_qubits: {}", report.n_qubits);
    println!("epsilon: {}", sig(report.epsilon));
    println!("qfi_normalized: {}", sig(report.qfi_normalized));
    for k in 1..=report.n_qubits {
        println!("k={} bound={}", k, producibility_bound(report.n_qubits, k)?);
    }
    println!("entangled: {}", report.entangled);
    println!("theta_bound: {}", sig(report.theta_bound));
    println!("min_k={}", report.min_k);
    Ok(())
}

fn cmd_validate(args: ScenarioArgs) -> Result<()> {
    let scenario = resolve(&args.source, args.tol_rank)?;
    // Pairing the state with the generator exercises the cross-checks that
    // construction alone does not reach.
    scenario.to_evolution_spec()?;
    println!(
        "ok: scenario '{}' (dim {}, rank {}) passes validation",
        scenario.name,
        scenario.dim(),
        scenario.rho0.rank()
    );
    Ok(())
}
