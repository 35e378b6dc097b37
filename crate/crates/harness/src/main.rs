use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shs_core::benchmarks::list_benchmarks;
use shs_core::Algorithm;
use shs_harness::{
    compare, replay, run_experiment, solve_app, BoundsMode, CompareTest, ExperimentSpec, HarnessError, Result,
    SolveRequest, Solver, BUILTIN_INSTANCES,
};

#[derive(Parser)]
#[command(name = "shs", version, about = "Scorpion hunting strategy experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run optimizers on benchmarks for several seeds and write traces, summary and manifest
    Run(RunArgs),
    /// Build statistical reports from a directory of trace files
    Compare(CompareArgs),
    /// Solve one application instance and write a solution report
    Solve(SolveArgs),
    /// List optimizers, benchmark functions and built-in instances
    List,
}

#[derive(Args)]
struct OutArg {
    /// Output directory
    #[arg(long, env = "SHS_OUT_DIR", default_value = "results")]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Optimizers to run (comma separated or repeated); default all
    #[arg(long = "optimizer", value_delimiter = ',')]
    optimizers: Vec<String>,
    /// Benchmark functions or built-in instances; default all ten benchmarks
    #[arg(long = "function", value_delimiter = ',')]
    functions: Vec<String>,
    #[arg(long, default_value_t = 20)]
    dim: usize,
    #[arg(long = "pop", default_value_t = 25)]
    pop_size: usize,
    #[arg(long = "iters", default_value_t = 300)]
    iterations: usize,
    #[arg(long, default_value_t = 30)]
    runs: usize,
    /// Base seed; run r uses seed + r
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// table3 searches [-10, 10] everywhere, native uses each function's domain
    #[arg(long, default_value = "table3")]
    bounds: BoundsMode,
    /// Use the textbook Ackley (minimum 0) instead of the default variant (minimum -e)
    #[arg(long)]
    canonical_ackley: bool,
    /// Worker threads; 1 runs sequentially (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Replay the experiment recorded in this manifest; other experiment flags are ignored
    #[arg(long, conflicts_with_all = ["optimizers", "functions"])]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct CompareArgs {
    /// Directory holding trace_<optimizer>_<function>.csv files
    trace_dir: PathBuf,
    /// wilcoxon, friedman, correlation, dispersion or all
    #[arg(long = "test", value_delimiter = ',', default_value = "all")]
    tests: Vec<String>,
    /// Output directory (default: the trace directory)
    #[arg(long, env = "SHS_OUT_DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Built-in instance name or instance file (.csv or .toml)
    instance: String,
    /// shs, pso, fa, de or prim-oracle
    #[arg(long, default_value = "shs")]
    optimizer: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "iters", default_value_t = 300)]
    iterations: usize,
    #[arg(long = "pop", default_value_t = 25)]
    pop_size: usize,
    #[command(flatten)]
    out: OutArg,
}

fn run(args: RunArgs, out: &mut dyn Write) -> io::Result<Result<()>> {
    let output = match &args.manifest {
        Some(path) => replay(path, Some(&args.out.out), args.jobs),
        None => {
            let defaults = ExperimentSpec::default();
            let spec = ExperimentSpec {
                optimizers: if args.optimizers.is_empty() {
                    defaults.optimizers
                } else {
                    args.optimizers
                },
                functions: if args.functions.is_empty() {
                    defaults.functions
                } else {
                    args.functions
                },
                dim: args.dim,
                runs: args.runs,
                iterations: args.iterations,
                pop_size: args.pop_size,
                base_seed: args.seed,
                bounds_mode: args.bounds,
                canonical_ackley: args.canonical_ackley,
                output_dir: args.out.out,
            };
            run_experiment(&spec, args.jobs)
        }
    };
    let output = match output {
        Ok(o) => o,
        Err(e) => return Ok(Err(e)),
    };
    writeln!(
        out,
        "{:<6} {:<16} {:>12} {:>12} {:>12} {:>12}",
        "algo", "function", "best", "median", "worst", "avg"
    )?;
    for row in &output.summary {
        let s = row.summary;
        writeln!(
            out,
            "{:<6} {:<16} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            row.algorithm, row.function, s.best, s.median, s.worst, s.avg
        )?;
    }
    writeln!(out, "wrote {} files", output.files.len())?;
    Ok(Ok(()))
}

fn compare_cmd(args: CompareArgs, out: &mut dyn Write) -> io::Result<Result<()>> {
    let mut tests = Vec::new();
    for t in &args.tests {
        if t.eq_ignore_ascii_case("all") {
            tests.extend(CompareTest::ALL);
        } else {
            match t.parse() {
                Ok(test) => tests.push(test),
                Err(e) => return Ok(Err(e)),
            }
        }
    }
    tests.sort();
    tests.dedup();
    let dir = args.out.unwrap_or_else(|| args.trace_dir.clone());
    let files = match compare(&args.trace_dir, &tests, &dir) {
        Ok(f) => f,
        Err(e) => return Ok(Err(e)),
    };
    for f in &files {
        writeln!(out, "{}", f.display())?;
    }
    Ok(Ok(()))
}

fn solve(args: SolveArgs, out: &mut dyn Write) -> io::Result<Result<()>> {
    let solved = args.optimizer.parse::<Solver>().and_then(|solver| {
        solve_app(&SolveRequest {
            instance: args.instance,
            solver,
            seed: args.seed,
            iterations: args.iterations,
            pop_size: args.pop_size,
            output_dir: args.out.out,
        })
    });
    let solved = match solved {
        Ok(s) => s,
        Err(e) => return Ok(Err(e)),
    };
    write!(out, "{}", solved.report)?;
    for f in &solved.files {
        writeln!(out, "wrote {}", f.display())?;
    }
    Ok(Ok(()))
}

fn list(out: &mut dyn Write) -> io::Result<Result<()>> {
    writeln!(out, "optimizers:")?;
    for a in Algorithm::ALL {
        writeln!(out, "  {a}")?;
    }
    writeln!(out, "  prim-oracle (solve, spanning-tree instances only)")?;
    writeln!(out, "\nbenchmark functions:")?;
    for e in list_benchmarks() {
        let modality = format!("{:?}", e.modality).to_lowercase();
        let domain = format!("[{}, {}]", e.default_domain.0, e.default_domain.1);
        writeln!(out, "  {:<12} {modality:<10} {domain:<26} {}", e.name, e.dimension_rule)?;
    }
    writeln!(out, "\nbuilt-in instances:")?;
    for (name, about) in BUILTIN_INSTANCES {
        writeln!(out, "  {name:<16} {about}")?;
    }
    Ok(Ok(()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    // The outer result is the console itself; the inner one is the command.
    let result = match cli.command {
        Command::Run(a) => run(a, &mut out),
        Command::Compare(a) => compare_cmd(a, &mut out),
        Command::Solve(a) => solve(a, &mut out),
        Command::List => list(&mut out),
    }
    .and_then(|r| out.flush().map(|_| r));
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error ({}): {e}", e.category());
            ExitCode::from(e.exit_code())
        }
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let e = HarnessError::io("<stdout>", e);
            eprintln!("error ({}): {e}", e.category());
            ExitCode::from(e.exit_code())
        }
    }
}
