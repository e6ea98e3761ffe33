use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use paes_core::oracle::{cover_time, GridWalkConfig, WalkMode};
use paes_core::{paes, PaesState, RunConfig, RunRecord};
use rand::SeedableRng;

use paes_harness::configfile::sweep_spec_from_text;
use paes_harness::fit::{fit_scaling, FitMetric, ScalingModel};
use paes_harness::spec::{parse_mutation, parse_reference, parse_stop, ArchiverKind, BenchmarkKind, BudgetSpec, SizeSpec};
use paes_harness::sweep::{read_csv_file, run_sweep, write_csv, write_csv_file, SweepSpec};
use paes_harness::trace::TraceRecord;
use paes_harness::verify::{run_suite, SuiteParams, SUITE_NAMES};

/// Workbench for PAES-25 on pseudo-Boolean benchmarks.
#[derive(Parser)]
#[command(name = "paes-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One run with explicit parameters; prints the run record.
    Run(RunArgs),
    /// Replicated runs over a list of sizes, defined by a key=value file.
    Sweep {
        /// Path to the flat key=value config.
        #[arg(long)]
        config: PathBuf,
    },
    /// Log-log scaling fit of a sweep CSV.
    Fit {
        /// Sweep CSV produced by `sweep`.
        #[arg(long)]
        input: PathBuf,
        /// Growth model: n2 | n3 | n3log2 | n4 | grid(m).
        #[arg(long)]
        model: String,
        /// Which time to fit: full-front | first-pareto.
        #[arg(long, default_value = "full-front")]
        metric: String,
    },
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Ground-truth oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct RunArgs {
    /// mlotz | omm | cocz
    #[arg(long)]
    benchmark: String,
    /// Number of objectives (2 unless mlotz).
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long)]
    n: u32,
    /// one-bit | standard-bit
    #[arg(long)]
    mutation: String,
    /// aga | hva | mga | none
    #[arg(long)]
    archiver: String,
    #[arg(long)]
    archive_size: usize,
    #[arg(long)]
    seed: u64,
    /// Iteration budget; 0 is rejected.
    #[arg(long)]
    budget: u64,
    /// full-front | budget | coverage:F
    #[arg(long, default_value = "full-front")]
    stop: String,
    /// HVA reference point, comma-separated integers <= 0.
    #[arg(long)]
    reference: Option<String>,
    /// AGA grid range override.
    #[arg(long)]
    grid_range: Option<u32>,
    /// AGA bisection count override.
    #[arg(long)]
    bisections: Option<u32>,
    /// Write a JSON-lines trace of every iteration to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the named suites.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    seeds: Option<u64>,
    #[arg(long)]
    archive_size: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    reps: Option<u64>,
    #[arg(long)]
    base_seed: Option<u64>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Cover time of a random walk on the k-fold product of a path graph.
    Cover {
        #[arg(long)]
        dims: usize,
        #[arg(long)]
        axis_nodes: usize,
        /// simple | lazy
        #[arg(long)]
        mode: String,
        /// Lazy-mode denominator (the problem size the walk mirrors).
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        reps: u64,
        #[arg(long)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(passed) => {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run(args) => {
            let record = run_once(&args)?;
            print_record(&record);
            Ok(true)
        }
        Command::Sweep { config } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let spec: SweepSpec = sweep_spec_from_text(&text)?;
            let rows = run_sweep(&spec)?;
            match &spec.output {
                Some(path) => {
                    write_csv_file(&rows, path)?;
                    eprintln!("wrote {} rows to {}", rows.len(), path.display());
                }
                None => write_csv(&rows, std::io::stdout().lock())?,
            }
            Ok(true)
        }
        Command::Fit { input, model, metric } => {
            let model: ScalingModel = model.parse()?;
            let metric: FitMetric = metric.parse()?;
            let rows = read_csv_file(&input)?;
            let fit = fit_scaling(&rows, metric, model)?;
            println!("slope {:.4}", fit.slope);
            println!("intercept {:.4}", fit.intercept);
            for p in &fit.points {
                println!(
                    "n={} mean={:.1} ratio_to_{model}={:.6} samples={} censored={}",
                    p.n, p.mean, p.ratio, p.samples, p.censored
                );
            }
            for n in &fit.excluded {
                eprintln!("warning: n={n} excluded, all replicates censored");
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let params = SuiteParams {
                n: args.n,
                m: args.m,
                steps: args.steps,
                seeds: args.seeds,
                archive_size: args.archive_size,
                budget: args.budget,
                n_max: args.n_max,
                reps: args.reps,
                base_seed: args.base_seed,
            };
            if !SUITE_NAMES.contains(&args.suite.as_str()) {
                anyhow::bail!("unknown suite {:?}, expected one of {SUITE_NAMES:?}", args.suite);
            }
            let report = run_suite(&args.suite, &params)?;
            for line in &report.lines {
                println!("{line}");
            }
            println!("{}: {}", report.name, if report.passed { "PASS" } else { "FAIL" });
            Ok(report.passed)
        }
        Command::Oracle(OracleCommand::Cover { dims, axis_nodes, mode, n, reps, seed }) => {
            let mode = match mode.as_str() {
                "simple" => WalkMode::Simple,
                "lazy" => {
                    anyhow::ensure!(n >= 2 * dims, "lazy mode needs --n >= 2 * dims");
                    WalkMode::Lazy { denominator: n }
                }
                other => anyhow::bail!("unknown mode {other:?}, expected simple | lazy"),
            };
            let cfg = GridWalkConfig {
                dims,
                axis_nodes,
                mode,
                start: vec![0; dims],
            };
            let mut rng = paes_core::RunRng::seed_from_u64(seed);
            let times: Vec<u64> = (0..reps).map(|_| cover_time(&cfg, &mut rng)).collect();
            let mean = times.iter().sum::<u64>() as f64 / times.len().max(1) as f64;
            let min = times.iter().min().copied().unwrap_or(0);
            let max = times.iter().max().copied().unwrap_or(0);
            println!("reps={reps} mean={mean:.1} min={min} max={max}");
            Ok(true)
        }
    }
}

fn run_once(args: &RunArgs) -> Result<RunRecord> {
    let bench = BenchmarkKind::parse(&args.benchmark)?.build(args.m, args.n)?;
    let capacity = SizeSpec::Fixed(args.archive_size).resolve(&bench);
    let reference = args.reference.as_deref().map(parse_reference).transpose()?;
    let archiver = ArchiverKind::parse(&args.archiver)?.build(
        &bench,
        capacity,
        reference.as_deref(),
        args.grid_range,
        args.bisections,
    )?;
    let budget = BudgetSpec::Fixed(args.budget).resolve(&bench, parse_mutation(&args.mutation)?);
    let config = RunConfig::new(
        bench,
        parse_mutation(&args.mutation)?,
        archiver,
        capacity,
        args.seed,
        budget,
    )?
    .with_stop(parse_stop(&args.stop)?);
    let record = match &args.trace {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("creating trace file {}", path.display()))?;
            let mut out = std::io::BufWriter::new(file);
            let mut state = PaesState::init(&config)?;
            let record = state.run_with_observer(|state, outcome| {
                TraceRecord::capture(state, outcome)
                    .write_line(&mut out)
                    .expect("trace write");
            });
            out.flush()?;
            record
        }
        None => paes::run(&config)?,
    };
    Ok(record)
}

fn print_record(record: &RunRecord) {
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".to_string());
    println!("benchmark {}", record.config.benchmark);
    println!("mutation {}", record.config.mutation.name());
    println!("archiver {}", record.config.archiver.name());
    println!("archive_size {}", record.config.archive_capacity);
    println!("seed {}", record.config.seed);
    println!("budget {}", record.config.budget);
    println!("iterations {}", record.iterations);
    println!("iterations_to_first_pareto {}", opt(record.iterations_to_first_pareto));
    println!("iterations_to_full_front {}", opt(record.iterations_to_full_front));
    println!("censored {}", record.censored);
    println!("coverage {:.6}", record.coverage);
    println!("hv_fraction {:.6}", record.hv_fraction);
    println!("wall_time_s {:.3}", record.wall_time.as_secs_f64());
}
