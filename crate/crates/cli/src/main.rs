//! Command-line front end: bound tables, figure data, Monte Carlo simulation,
//! regime validation, and capacity sweeps.
//!
//! Exit codes are a stable contract: 0 success, 1 validation failure,
//! 2 usage error, 3 out-of-regime request without `--force`.

mod figures;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use sensecap::bounds::{
    lb_capacity_continuous, lb_capacity_correlated, lb_capacity_discrete,
    ub_capacity_01_contiguous, ub_capacity_01_random, ub_capacity_continuous_gaussian,
    ub_capacity_discrete_gaussian, ub_capacity_diversity, CapacityBound,
};
use sensecap::models::{
    validate, BoundValue, Distortion, EnsembleSpec, Scenario, SignalKind, SignalModel,
};
use sensecap::simulator::{
    run_capacity_sweep, run_simulation, SimulationConfig, SimulationReport, Verdict,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REGIME: u8 = 3;

/// Largest simulable signal dimension: the decoder enumerates 2^n candidates.
const MAX_SIM_N: usize = 20;

#[derive(Parser)]
#[command(name = "sensecap", version, about = "Sensing-capacity bounds, figure data, and Monte Carlo validation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable capacity bound for one configuration.
    Bounds(BoundsArgs),
    /// Emit the CSV data behind one of the standard figures.
    Figure(FigureArgs),
    /// Run a Monte Carlo simulation and print the JSON report.
    Simulate(SimulateArgs),
    /// Run the full Fano/union sandwich grid; exit 0 iff every cell is consistent.
    Validate(ValidateArgs),
    /// Sweep (capacity target, n) cells and emit one CSV row per cell.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Bernoulli,
    SparseGaussian,
}

#[derive(Args)]
struct BoundsArgs {
    /// Signal prior (default: bernoulli).
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Sparsity ratio in (0, 1/2].
    #[arg(long)]
    alpha: Option<f64>,
    /// Linear SNR (>= 0).
    #[arg(long)]
    snr: Option<f64>,
    /// SNR in dB; accepts -inf for zero linear SNR. Wins over --snr.
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    /// Target distortion.
    #[arg(long)]
    d0: Option<f64>,
    /// Diversity ratio in (0, 1].
    #[arg(long)]
    beta: Option<f64>,
    /// Signal dimension for the finite-n bounds.
    #[arg(long)]
    n: Option<usize>,
    /// Sensor count (validation only).
    #[arg(long)]
    m: Option<usize>,
    /// Signal alphabet size for the discrete achievable bound.
    #[arg(long)]
    alphabet_size: Option<usize>,
    /// Smallest eigenvalue of the column covariance, for the correlated bound.
    #[arg(long)]
    lambda_min: Option<f64>,
    /// Evaluate even when the configuration violates a bound's regime.
    #[arg(long)]
    force: bool,
    /// JSON file with the same keys as the flags; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// File-based defaults for `bounds`; field names match the flags.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundsFileConfig {
    model: Option<String>,
    alpha: Option<f64>,
    snr: Option<f64>,
    snr_db: Option<f64>,
    d0: Option<f64>,
    beta: Option<f64>,
    n: Option<usize>,
    m: Option<usize>,
    alphabet_size: Option<usize>,
    lambda_min: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "lower")]
enum FigureId {
    Fig2,
    Fig3a,
    Fig3b,
    Fig4,
    Fig5,
    Fig6,
}

#[derive(Args)]
struct FigureArgs {
    /// Which figure's data to emit.
    #[arg(long, value_enum)]
    id: FigureId,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    snr: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    d0: Option<f64>,
    /// Grid resolution.
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    snr: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    #[arg(long)]
    d0: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Reuse a single sensing matrix for every trial.
    #[arg(long)]
    fixed_matrix: bool,
    /// Also write the JSON report to this path.
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON file with the same keys as the flags; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateFileConfig {
    n: Option<usize>,
    m: Option<usize>,
    alpha: Option<f64>,
    snr: Option<f64>,
    snr_db: Option<f64>,
    d0: Option<f64>,
    trials: Option<usize>,
    seed: Option<u64>,
    fixed_matrix: Option<bool>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Trials per grid cell.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// Capacity targets c = n/m, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    c: Vec<f64>,
    /// Signal dimensions, comma separated.
    #[arg(long = "n-values", value_delimiter = ',', required = true)]
    n_values: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long)]
    snr: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    d0: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn snr_linear(snr_db: Option<f64>, snr: Option<f64>, default: f64) -> f64 {
    match (snr_db, snr) {
        (Some(db), _) => 10f64.powf(db / 10.0),
        (None, Some(s)) => s,
        (None, None) => default,
    }
}

fn load_config<T: Default + serde::de::DeserializeOwned>(path: &Option<PathBuf>) -> Result<T, String> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", p.display()))
        }
    }
}

fn bound_row(name: &str, bound: &CapacityBound) -> String {
    let value = match bound.result.value {
        BoundValue::Finite(v) if bound.result.valid => format!("{v}"),
        BoundValue::Unbounded => "unbounded".to_string(),
        _ => String::new(),
    };
    format!(
        "{name},{value},{},{},{}",
        bound.result.valid,
        bound.result.clamped,
        bound.result.reason.clone().unwrap_or_default()
    )
}

fn cmd_bounds(args: &BoundsArgs) -> ExitCode {
    let file: BoundsFileConfig = match load_config(&args.config) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let model_kind = match args.model {
        Some(ModelArg::Bernoulli) => SignalKind::BernoulliDiscrete,
        Some(ModelArg::SparseGaussian) => SignalKind::SparseGaussian,
        None => match file.model.as_deref() {
            Some("bernoulli") | None => SignalKind::BernoulliDiscrete,
            Some("sparse-gaussian") => SignalKind::SparseGaussian,
            Some(other) => return usage_error(&format!("unknown model `{other}` in config")),
        },
    };
    let alpha = args.alpha.or(file.alpha).unwrap_or(0.5);
    let snr = snr_linear(args.snr_db.or(file.snr_db), args.snr.or(file.snr), 10.0);
    let d0 = args.d0.or(file.d0).unwrap_or(0.0);
    let beta = args.beta.or(file.beta).unwrap_or(0.5);
    let n = args.n.or(file.n).unwrap_or(200);
    let m = args.m.or(file.m).unwrap_or(n / 2);
    let alphabet = args.alphabet_size.or(file.alphabet_size).unwrap_or(2);
    let lambda_min = args.lambda_min.or(file.lambda_min).unwrap_or(1.0);

    let model = match SignalModel::new(model_kind, alpha, 1.0, 0.0) {
        Ok(m) => m,
        Err(e) => return usage_error(&e.to_string()),
    };
    let distortion = match model_kind {
        SignalKind::BernoulliDiscrete => Distortion::Hamming,
        SignalKind::SparseGaussian => Distortion::Squared,
    };
    let scenario = match Scenario::new(n, m, snr, d0, distortion) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    let report = validate(&scenario, &model, &EnsembleSpec::gaussian_dense());
    if !report.is_clean() && !args.force {
        for v in &report.violations {
            eprintln!("regime violation [{}]: {}", v.constraint, v.message);
        }
        eprintln!("use --force to evaluate anyway");
        return ExitCode::from(EXIT_REGIME);
    }
    for w in &report.warnings {
        eprintln!("warning [{}]: {}", w.constraint, w.message);
    }

    println!("lemma,value,valid,clamped,reason");
    match model_kind {
        SignalKind::BernoulliDiscrete => {
            println!("{}", bound_row("ub_discrete_gaussian", &ub_capacity_discrete_gaussian(alpha, snr, d0)));
            println!("{}", bound_row("ub_diversity", &ub_capacity_diversity(alpha, beta, snr, d0, n)));
            println!("{}", bound_row("ub_01_random", &ub_capacity_01_random(alpha, beta, d0, n)));
            println!("{}", bound_row("ub_01_contiguous", &ub_capacity_01_contiguous(alpha, beta, d0)));
            if d0 > 0.0 {
                println!("{}", bound_row("lb_discrete", &lb_capacity_discrete(alpha, alphabet, snr, d0)));
            }
        }
        SignalKind::SparseGaussian => {
            println!("{}", bound_row("ub_continuous_gaussian", &ub_capacity_continuous_gaussian(alpha, snr, d0)));
            println!("{}", bound_row("lb_continuous", &lb_capacity_continuous(alpha, snr, d0)));
            println!("{}", bound_row("lb_correlated", &lb_capacity_correlated(alpha, snr, d0, lambda_min)));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_figure(args: &FigureArgs) -> ExitCode {
    let overrides = figures::FigureOverrides {
        alpha: args.alpha,
        snr: args.snr_db.map(|db| 10f64.powf(db / 10.0)).or(args.snr),
        n: args.n,
        beta: args.beta,
        d0: args.d0,
        points: args.points,
    };
    let csv = match args.id {
        FigureId::Fig2 => figures::fig2(&overrides),
        FigureId::Fig3a => figures::fig3a(&overrides),
        FigureId::Fig3b => figures::fig3b(&overrides),
        FigureId::Fig4 => figures::fig4(&overrides),
        FigureId::Fig5 => figures::fig5(&overrides),
        FigureId::Fig6 => figures::fig6(&overrides),
    };
    match &args.output {
        None => {
            print!("{csv}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::write(path, csv) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(EXIT_USAGE)
            }
        },
    }
}

fn cmd_simulate(args: &SimulateArgs) -> ExitCode {
    let file: SimulateFileConfig = match load_config(&args.config) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let n = args.n.or(file.n).unwrap_or(12);
    let m = args.m.or(file.m).unwrap_or(4 * n);
    let alpha = args.alpha.or(file.alpha).unwrap_or(0.5);
    let snr = snr_linear(args.snr_db.or(file.snr_db), args.snr.or(file.snr), 10.0);
    let d0 = args.d0.or(file.d0).unwrap_or(0.0);
    let trials = args.trials.or(file.trials).unwrap_or(1000);
    let seed = args.seed.or(file.seed).unwrap_or(7);
    let fixed_matrix = args.fixed_matrix || file.fixed_matrix.unwrap_or(false);

    if n > MAX_SIM_N {
        return usage_error(&format!("n={n} exceeds the exhaustive-decoder budget (n <= {MAX_SIM_N})"));
    }
    let scenario = match Scenario::new(n, m, snr, d0, Distortion::Hamming) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    let model = match SignalModel::bernoulli(alpha) {
        Ok(m) => m,
        Err(e) => return usage_error(&e.to_string()),
    };
    let config = SimulationConfig {
        scenario,
        model,
        ensemble: EnsembleSpec::gaussian_dense(),
        trials,
        seed,
        fixed_matrix,
    };
    let report = match run_simulation(&config) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{json}");
    if let Some(path) = &args.output {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_validate(args: &ValidateArgs) -> ExitCode {
    println!("{}", SimulationReport::csv_header());
    let mut all_consistent = true;
    for &n in &[8usize, 12, 16] {
        for &alpha in &[0.25, 0.5] {
            for &snr in &[1.0, 10.0] {
                for &d0 in &[0.0, 1.0 / n as f64] {
                    for &m in &[n / 2, 4 * n] {
                        let config = SimulationConfig {
                            scenario: Scenario::new(n, m, snr, d0, Distortion::Hamming)
                                .expect("grid scenario is valid"),
                            model: SignalModel::bernoulli(alpha).expect("grid alpha is valid"),
                            ensemble: EnsembleSpec::gaussian_dense(),
                            trials: args.trials,
                            seed: args.seed,
                            fixed_matrix: false,
                        };
                        let report = run_simulation(&config).expect("grid cell simulates");
                        println!("{}", report.to_csv_row());
                        if report.verdict != Verdict::Consistent {
                            all_consistent = false;
                            eprintln!(
                                "violation: n={n} m={m} alpha={alpha} snr={snr} d0={d0}: {:?}",
                                report.verdict
                            );
                        }
                    }
                }
            }
        }
    }
    if all_consistent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VALIDATION)
    }
}

fn cmd_sweep(args: &SweepArgs) -> ExitCode {
    if let Some(&n) = args.n_values.iter().find(|&&n| n > MAX_SIM_N) {
        return usage_error(&format!("n={n} exceeds the exhaustive-decoder budget (n <= {MAX_SIM_N})"));
    }
    let snr = snr_linear(args.snr_db, args.snr, 10.0);
    let template = match Scenario::new(
        *args.n_values.first().unwrap_or(&8),
        1,
        snr,
        args.d0,
        Distortion::Hamming,
    ) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    let model = match SignalModel::bernoulli(args.alpha) {
        Ok(m) => m,
        Err(e) => return usage_error(&e.to_string()),
    };
    let rows = match run_capacity_sweep(
        &template,
        &model,
        &EnsembleSpec::gaussian_dense(),
        &args.c,
        &args.n_values,
        args.trials,
        args.seed,
    ) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    println!("c,{}", SimulationReport::csv_header());
    for row in rows {
        println!("{},{}", row.c, row.report.to_csv_row());
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match &cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}
