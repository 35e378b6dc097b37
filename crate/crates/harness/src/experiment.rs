//! Seeded multi-run experiments and their on-disk artifacts.
//!
//! A run of `run_experiment` writes into `output_dir`:
//!
//! * `trace_<optimizer>_<function>.csv` with columns `run,iteration,best_cost`;
//! * `summary.csv` with one best/median/worst/avg row per optimizer and function;
//! * `manifest.toml`, the full experiment plus every resolved seed, from which
//!   [`replay`] reproduces the other files byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use shs_core::benchmarks::{find_benchmark, make_benchmark_with, BenchmarkOptions, DimensionRule, EXPERIMENT_DOMAIN};
use shs_core::stats::{summarize, SummaryRow};
use shs_core::{Algorithm, ObjectiveSpec, RngStream, RunResult};

use crate::error::{toml_error, HarnessError, Result};
use crate::instances::builtin_instance;

pub const MANIFEST_FILE: &str = "manifest.toml";
pub const SUMMARY_FILE: &str = "summary.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundsMode {
    /// Every benchmark searched on `[-10, 10]^d`.
    #[default]
    #[serde(rename = "table3")]
    Shared,
    /// Each benchmark's own domain.
    Native,
}

impl std::str::FromStr for BoundsMode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table3" => Ok(BoundsMode::Shared),
            "native" => Ok(BoundsMode::Native),
            _ => Err(HarnessError::Usage(format!(
                "unknown bounds mode `{s}` (expected table3 or native)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub optimizers: Vec<String>,
    /// Benchmark names, or built-in application instances.
    pub functions: Vec<String>,
    pub dim: usize,
    pub runs: usize,
    pub iterations: usize,
    pub pop_size: usize,
    pub base_seed: u64,
    pub bounds_mode: BoundsMode,
    #[serde(default)]
    pub canonical_ackley: bool,
    /// Not written to the manifest, which always lives in this directory.
    #[serde(skip_serializing, default = "default_output_dir")]
    pub output_dir: PathBuf,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            optimizers: Algorithm::ALL.iter().map(|a| a.name().to_string()).collect(),
            functions: shs_core::benchmarks::list_benchmarks()
                .iter()
                .map(|e| e.name.to_string())
                .collect(),
            dim: 20,
            runs: 30,
            iterations: 300,
            pop_size: 25,
            base_seed: 0,
            bounds_mode: BoundsMode::Shared,
            canonical_ackley: false,
            output_dir: default_output_dir(),
        }
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

impl ExperimentSpec {
    /// Seed of run `r`, shared by every optimizer.
    pub fn seed(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.runs).map(|r| self.seed(r)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |m: &str| Err(HarnessError::Usage(m.to_string()));
        if self.optimizers.is_empty() {
            return usage("at least one optimizer is required");
        }
        if self.functions.is_empty() {
            return usage("at least one function is required");
        }
        if self.runs == 0 || self.iterations == 0 || self.pop_size == 0 || self.dim == 0 {
            return usage("dim, runs, iterations and population size must all be positive");
        }
        Ok(())
    }

    pub fn algorithms(&self) -> Result<Vec<Algorithm>> {
        self.optimizers
            .iter()
            .map(|o| o.parse::<Algorithm>().map_err(HarnessError::from))
            .collect()
    }

    /// Builds the objective for `name` under this experiment's dimension and bounds.
    ///
    /// Two-variable benchmarks always run in two dimensions; application
    /// instances carry their own dimension and bounds.
    pub fn objective(&self, name: &str) -> Result<ObjectiveSpec> {
        match find_benchmark(name) {
            Ok(entry) => {
                let dim = if entry.dimension_rule == DimensionRule::Fixed2D {
                    2
                } else {
                    self.dim
                };
                let options = BenchmarkOptions {
                    domain_override: (self.bounds_mode == BoundsMode::Shared).then_some(EXPERIMENT_DOMAIN),
                    canonical_ackley: self.canonical_ackley,
                };
                Ok(make_benchmark_with(entry.name, dim, &options)?)
            }
            Err(miss) => match builtin_instance(name) {
                Some(inst) => Ok(inst.objective()?.with_name(name.to_ascii_lowercase())),
                None => Err(miss.into()),
            },
        }
    }
}

/// What the manifest records: the experiment and what it resolved to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool_version: String,
    pub experiment: ExperimentSpec,
    pub seeds: Vec<u64>,
    pub resolved: Vec<ResolvedFunction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedFunction {
    pub name: String,
    pub dim: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// Final costs and traces of one optimizer on one function, in run order.
#[derive(Debug, Clone)]
pub struct CellResult {
    pub optimizer: Algorithm,
    pub function: String,
    pub runs: Vec<RunResult>,
}

impl CellResult {
    pub fn final_costs(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.final_cost).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub cells: Vec<CellResult>,
    pub summary: Vec<SummaryRow>,
    pub files: Vec<PathBuf>,
}

/// Runs every optimizer on every function for `spec.runs` seeds and writes
/// the artifacts. `jobs` caps worker threads; `None` uses all cores and
/// `Some(1)` runs sequentially. The output does not depend on `jobs`.
pub fn run_experiment(spec: &ExperimentSpec, jobs: Option<usize>) -> Result<ExperimentOutput> {
    spec.validate()?;
    let algorithms = spec.algorithms()?;
    let objectives = spec
        .functions
        .iter()
        .map(|f| spec.objective(f))
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(&spec.output_dir).map_err(|e| HarnessError::io(&spec.output_dir, e))?;

    let tasks: Vec<(usize, usize, usize)> = (0..objectives.len())
        .flat_map(|f| (0..algorithms.len()).flat_map(move |a| (0..spec.runs).map(move |r| (f, a, r))))
        .collect();
    let execute = |&(f, a, r): &(usize, usize, usize)| -> Result<RunResult> {
        let mut rng = RngStream::new(spec.seed(r));
        Ok(algorithms[a].run(&objectives[f], spec.pop_size, spec.iterations, &mut rng)?)
    };
    let results: Vec<RunResult> = match jobs {
        Some(1) => tasks.iter().map(execute).collect::<Result<_>>()?,
        _ => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| HarnessError::Usage(format!("cannot start worker pool: {e}")))?;
            pool.install(|| tasks.par_iter().map(execute).collect::<Result<_>>())?
        }
    };

    let mut results = results.into_iter();
    let mut cells = Vec::new();
    for objective in &objectives {
        for &optimizer in &algorithms {
            cells.push(CellResult {
                optimizer,
                function: objective.name().to_string(),
                runs: results.by_ref().take(spec.runs).collect(),
            });
        }
    }

    let mut files = Vec::new();
    for cell in &cells {
        let path = spec
            .output_dir
            .join(trace_file_name(cell.optimizer.name(), &cell.function));
        write_file(&path, &trace_csv(&cell.runs))?;
        files.push(path);
    }

    let summary = cells
        .iter()
        .map(|c| {
            Ok(SummaryRow {
                algorithm: c.optimizer.name().to_string(),
                function: c.function.clone(),
                summary: summarize(&c.final_costs())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let path = spec.output_dir.join(SUMMARY_FILE);
    write_file(&path, &summary_csv(&summary))?;
    files.push(path);

    let manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        experiment: spec.clone(),
        seeds: spec.seeds(),
        resolved: objectives
            .iter()
            .map(|o| ResolvedFunction {
                name: o.name().to_string(),
                dim: o.dim(),
                lower: o.lower().to_vec(),
                upper: o.upper().to_vec(),
            })
            .collect(),
    };
    let text =
        toml::to_string_pretty(&manifest).map_err(|e| HarnessError::Data(format!("cannot serialize manifest: {e}")))?;
    let path = spec.output_dir.join(MANIFEST_FILE);
    write_file(&path, &text)?;
    files.push(path);

    Ok(ExperimentOutput { cells, summary, files })
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let manifest: Manifest = toml::from_str(&text).map_err(|e| toml_error(path, &text, e))?;
    if manifest.seeds != manifest.experiment.seeds() {
        return Err(HarnessError::Data(format!(
            "{}: recorded seeds do not follow base_seed + run",
            path.display()
        )));
    }
    Ok(manifest)
}

/// Re-runs the experiment recorded in a manifest, by default into the
/// manifest's own directory.
pub fn replay(manifest_path: &Path, output_dir: Option<&Path>, jobs: Option<usize>) -> Result<ExperimentOutput> {
    let mut spec = read_manifest(manifest_path)?.experiment;
    spec.output_dir = match output_dir {
        Some(dir) => dir.to_path_buf(),
        None => manifest_path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map_or_else(|| PathBuf::from("."), Path::to_path_buf),
    };
    run_experiment(&spec, jobs)
}

pub fn trace_file_name(optimizer: &str, function: &str) -> String {
    format!("trace_{optimizer}_{function}.csv")
}

/// Shortest round-trip representation in scientific notation.
pub fn fmt_float(v: f64) -> String {
    format!("{v:e}")
}

fn trace_csv(runs: &[RunResult]) -> String {
    let mut out = String::from("run,iteration,best_cost\n");
    for (r, run) in runs.iter().enumerate() {
        for (t, cost) in run.best_trace.iter().enumerate() {
            let _ = writeln!(out, "{r},{},{}", t + 1, fmt_float(*cost));
        }
    }
    out
}

fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("algorithm,function,best,median,worst,avg,runs\n");
    for row in rows {
        let s = &row.summary;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.algorithm,
            row.function,
            fmt_float(s.best),
            fmt_float(s.median),
            fmt_float(s.worst),
            fmt_float(s.avg),
            s.count
        );
    }
    out
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| HarnessError::io(path, e))
}
