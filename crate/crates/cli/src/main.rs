//! `rdbench`: run reward-doubling learners and baselines, verify their
//! bounds, and write CSV reports.
//!
//! Exit codes: 0 all checks passed, 1 a bound was violated, 2 usage or input
//! error, 3 no lower-bound witness within the budget.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reward_doubling::adversaries::{SequenceKind, SequenceSpec};
use reward_doubling::baselines::FtrlSign;
use reward_doubling::harness::{
    self, AlgorithmParams, AlgorithmSpec, ExperimentSpec, GradientSource, LowerBoundConfig, Status, Suite,
    SweepConfig, Table1Config, VerifyConfig,
};
use reward_doubling::multidim::EpsSchedule;
use reward_doubling::onedim::LemmaGrid;
use reward_doubling::report::{fmt_f64, read_gradient_rows};
use reward_doubling::{Error, Exec};

#[derive(Parser, Debug)]
#[command(name = "rdbench", version, about = "Reward-doubling online learning benchmark harness")]
struct Cli {
    /// Base seed for every random sequence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output directory for CSV reports.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Relative tolerance for identities and absolute margin for inequalities.
    #[arg(long, global = true, default_value_t = 1e-9, allow_negative_numbers = true)]
    tolerance: f64,

    /// Print the resolved configuration before running.
    #[arg(long, global = true)]
    dump_spec: bool,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one learner on one gradient sequence and check its bounds.
    Simulate(SimulateArgs),
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Compare learners across comparator regimes at two horizons.
    Table1(Table1Args),
    /// Search for a lower-bound witness sequence.
    LowerBound(LowerBoundArgs),
    /// Sweep the two potential-function lemmas over a lattice.
    SweepLemmas(SweepArgs),
}

#[derive(Args, Debug, Clone)]
struct LearnerArgs {
    /// Learning rate (smooth, gd, pgd, eg, ftrl).
    #[arg(long)]
    eta: Option<f64>,
    /// Initial epoch rate of rd1d (default 1/T).
    #[arg(long)]
    eta1: Option<f64>,
    /// Squared-gradient budget of rd1d (default T).
    #[arg(long)]
    hbar: Option<f64>,
    /// Ball radius of pgd.
    #[arg(long = "pgd-radius")]
    pgd_radius: Option<f64>,
    #[arg(long, value_enum)]
    ftrl_sign: Option<SignArg>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SignArg {
    Literal,
    RewardAligned,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ScheduleArg {
    Uniform,
    InverseSquare,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// rd1d | guess | smooth | gd | pgd | eg | ftrl | zero
    #[arg(long)]
    alg: String,
    #[command(flatten)]
    learner: LearnerArgs,
    /// Origin-regret budget (guess).
    #[arg(long)]
    eps: Option<f64>,
    /// rademacher | all_ones | alternating | ftrl_bad_1 | ftrl_bad_2 | custom
    #[arg(long, default_value = "rademacher")]
    seq: String,
    /// Number of rounds; for custom files, truncates the file.
    #[arg(long = "T")]
    rounds: Option<usize>,
    /// Gradient file for `--seq custom`.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    schedule: ScheduleArg,
    /// Comparators; in n dimensions c means c * (1, ..., 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    comparators: Vec<f64>,
}

#[derive(Args, Debug)]
struct Table1Args {
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long = "T", default_value_t = 10_000)]
    rounds: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    /// Rademacher sequences per horizon.
    #[arg(long, default_value_t = 20)]
    batch: usize,
    #[arg(long, default_value_t = 4096)]
    witness_budget: u64,
}

#[derive(Args, Debug)]
struct LowerBoundArgs {
    #[arg(long, default_value = "guess")]
    alg: String,
    #[command(flatten)]
    learner: LearnerArgs,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Origin-regret guarantee of the learner (also its budget for guess).
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    #[arg(long = "T", default_value_t = 12)]
    rounds: usize,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 1000)]
    tau_max: u32,
    #[arg(long, default_value_t = 100)]
    steps_per_unit: u32,
    /// Largest G for the same-sign lemma, in lattice steps.
    #[arg(long, default_value_t = 1000)]
    g_max_steps: u32,
    #[arg(long, default_value_t = 6)]
    same_sign_tau_min: u32,
    #[arg(long, default_value_t = 1)]
    sign_change_tau_min: u32,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl LearnerArgs {
    fn params(&self, eps: Option<f64>) -> AlgorithmParams {
        AlgorithmParams {
            eta: self.eta,
            eta1: self.eta1,
            hbar: self.hbar,
            eps,
            radius: self.pgd_radius,
            ftrl_sign: self.ftrl_sign.map(|s| match s {
                SignArg::Literal => FtrlSign::Literal,
                SignArg::RewardAligned => FtrlSign::RewardAligned,
            }),
        }
    }
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn experiment(cli: &Cli, args: &SimulateArgs) -> reward_doubling::Result<ExperimentSpec> {
    let source = if args.seq == "custom" {
        let path = args
            .file
            .clone()
            .ok_or_else(|| Error::Config("--seq custom needs --file".into()))?;
        let mut rows = read_gradient_rows(std::fs::File::open(&path)?)?;
        if let Some(t) = args.rounds {
            rows.truncate(t);
        }
        GradientSource::File { path, rows }
    } else {
        let kind: SequenceKind = args.seq.parse()?;
        let rounds = args
            .rounds
            .ok_or_else(|| Error::Config(format!("--seq {} needs --T", args.seq)))?;
        GradientSource::Generated(SequenceSpec::new(kind, rounds, cli.seed))
    };
    let algorithm = AlgorithmSpec::resolve(&args.alg, &args.learner.params(args.eps), source.rounds())?;
    Ok(ExperimentSpec {
        algorithm,
        source,
        dim: args.dim,
        comparators: args.comparators.clone(),
        schedule: match args.schedule {
            ScheduleArg::Uniform => EpsSchedule::Uniform,
            ScheduleArg::InverseSquare => EpsSchedule::InverseSquare,
        },
        out: cli.out.clone(),
        seed: cli.seed,
        tolerance: cli.tolerance,
        exec: exec(cli),
    })
}

fn run(cli: &Cli) -> reward_doubling::Result<Status> {
    match &cli.command {
        Command::Simulate(args) => {
            let spec = experiment(cli, args)?;
            if cli.dump_spec {
                println!("{spec}");
            }
            let report = harness::simulate(&spec)?;
            println!("trace: {}", report.trace_path.display());
            println!("bounds: {}", report.bounds_path.display());
            println!("rounds={} reward={}", report.rounds, fmt_f64(report.reward));
            for row in &report.rows {
                let verdict = match row.passed(spec.tolerance) {
                    Some(true) => "PASS",
                    Some(false) => "FAIL",
                    None => "reported",
                };
                let at = if row.comparator.is_empty() {
                    String::new()
                } else {
                    format!(" at {}", row.comparator)
                };
                println!("{}{at}: {verdict}", row.report);
            }
            Ok(report.status)
        }
        Command::Verify { suite } => {
            let cfg = VerifyConfig {
                seed: cli.seed,
                tolerance: cli.tolerance,
                exec: exec(cli),
                ..VerifyConfig::default()
            };
            if cli.dump_spec {
                println!("{cfg:#?}");
            }
            let report = harness::verify(*suite, &cfg)?;
            println!("{report}");
            Ok(report.status)
        }
        Command::Table1(args) => {
            let cfg = Table1Config {
                radius: args.radius,
                rounds: args.rounds,
                dim: args.n,
                eps: args.eps,
                seed: cli.seed,
                batch: args.batch,
                witness_budget: args.witness_budget,
                out: cli.out.clone(),
                exec: exec(cli),
            };
            if cli.dump_spec {
                println!("{cfg}");
            }
            let report = harness::table1(&cfg)?;
            println!("table: {}", report.path.display());
            for c in &report.checks {
                println!("{c}");
            }
            Ok(report.status)
        }
        Command::LowerBound(args) => {
            let algorithm = AlgorithmSpec::resolve(&args.alg, &args.learner.params(Some(args.eps)), args.rounds)?;
            let cfg = LowerBoundConfig {
                algorithm,
                radius: args.radius,
                eps: args.eps,
                rounds: args.rounds,
                budget: args.budget,
                seed: cli.seed,
                out: cli.out.clone(),
                exec: exec(cli),
            };
            if cli.dump_spec {
                println!("{cfg}");
            }
            let report = harness::lower_bound(&cfg)?;
            println!("{}", report.summary);
            Ok(report.status)
        }
        Command::SweepLemmas(args) => {
            let cfg = SweepConfig {
                grid: LemmaGrid {
                    same_sign_tau_min: args.same_sign_tau_min,
                    sign_change_tau_min: args.sign_change_tau_min,
                    tau_max: args.tau_max,
                    steps_per_unit: args.steps_per_unit,
                    g_abs_max_steps: args.g_max_steps,
                },
                out: cli.out.clone(),
                seed: cli.seed,
                exec: exec(cli),
            };
            if cli.dump_spec {
                println!("{cfg:#?}");
            }
            let report = harness::sweep_lemmas(&cfg)?;
            println!("lemmas: {}", report.path.display());
            for c in &report.checks {
                println!("{c}");
            }
            Ok(report.status)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            Status::Usage
        }
    };
    ExitCode::from(status.exit_code() as u8)
}
