//! Solving a single application instance and reporting the decoded solution.
//!
//! Each solve writes `<stem>.txt` (human-readable report), `<stem>.csv`
//! (the decoded solution as a table) and `<stem>_summary.csv` (`key,value`
//! rows with the objective and domain-specific totals).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use shs_core::apps::{
    decode_clusters, decode_hubs, decode_schedule, decode_tree, prim_mst_oracle, GraphInstance, SpanningTree,
};
use shs_core::{Algorithm, RngStream};

use crate::error::{HarnessError, Result};
use crate::experiment::write_file;
use crate::instances::{load_instance, Instance};

/// Either a registered optimizer or the exact spanning-tree oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Optimizer(Algorithm),
    PrimOracle,
}

impl std::str::FromStr for Solver {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("prim-oracle") {
            return Ok(Solver::PrimOracle);
        }
        s.parse::<Algorithm>().map(Solver::Optimizer).map_err(|_| {
            HarnessError::Core(shs_core::Error::Unknown {
                kind: "solver",
                name: s.to_string(),
                available: "shs, pso, fa, de, prim-oracle".into(),
            })
        })
    }
}

impl std::fmt::Display for Solver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Solver::Optimizer(a) => write!(f, "{a}"),
            Solver::PrimOracle => f.write_str("prim-oracle"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveRequest {
    /// Built-in instance name or path to an instance file.
    pub instance: String,
    pub solver: Solver,
    pub seed: u64,
    pub iterations: usize,
    pub pop_size: usize,
    pub output_dir: PathBuf,
}

/// A decoded solution in report form.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub objective: f64,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub totals: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub solution: Solution,
    pub report: String,
    pub files: Vec<PathBuf>,
}

/// Runs `solver` on `instance` and decodes the best position found.
pub fn solve_instance(
    instance: &Instance,
    solver: Solver,
    seed: u64,
    iterations: usize,
    pop_size: usize,
) -> Result<Solution> {
    let s = |v: f64| v.to_string();
    let algorithm = match (solver, instance) {
        (Solver::Optimizer(a), _) => a,
        (Solver::PrimOracle, Instance::Mst(graph)) => {
            let mut sol = tree_solution(graph, &prim_mst_oracle(graph));
            sol.totals.insert(0, ("objective".into(), s(sol.objective)));
            return Ok(sol);
        }
        (Solver::PrimOracle, other) => {
            return Err(HarnessError::Usage(format!(
                "prim-oracle only solves spanning-tree instances, not {}",
                other.kind()
            )));
        }
    };
    let spec = instance.objective()?;
    let run = algorithm.run(&spec, pop_size, iterations, &mut RngStream::new(seed))?;
    let x = &run.final_position;

    let mut solution = match instance {
        Instance::Mst(graph) => tree_solution(graph, &decode_tree(graph, x)),
        Instance::Pms(inst) => {
            let schedule = decode_schedule(inst, x);
            let mut rows = Vec::new();
            for (m, queue) in schedule.timeline(inst).iter().enumerate() {
                for (pos, &(task, start, ready, end)) in queue.iter().enumerate() {
                    rows.push(vec![
                        (m + 1).to_string(),
                        (pos + 1).to_string(),
                        (task + 1).to_string(),
                        start.to_string(),
                        ready.to_string(),
                        end.to_string(),
                    ]);
                }
            }
            let mut totals: Vec<(String, String)> = schedule
                .completion
                .iter()
                .enumerate()
                .map(|(m, c)| (format!("machine_{}_completion", m + 1), c.to_string()))
                .collect();
            totals.push(("cmax".into(), schedule.cmax.to_string()));
            Solution {
                objective: schedule.cmax as f64,
                header: cols(&["machine", "position", "task", "start", "setup_end", "end"]),
                rows,
                totals,
            }
        }
        Instance::Ed(inst) => {
            let d = inst.dispatch(x);
            let rows =
                d.p.iter()
                    .enumerate()
                    .map(|(i, p)| vec![(i + 1).to_string(), s(*p), s(inst.p_min[i]), s(inst.p_max[i])])
                    .collect();
            Solution {
                objective: run.final_cost,
                header: cols(&["generator", "p", "p_min", "p_max"]),
                rows,
                totals: vec![
                    ("PT".into(), s(d.total)),
                    ("PL".into(), s(d.loss)),
                    ("PD".into(), s(inst.demand)),
                    ("Error".into(), s(d.error)),
                    ("Cost".into(), s(d.cost)),
                ],
            }
        }
        Instance::Hlp(inst) => {
            let h = decode_hubs(inst, x);
            let rows = inst
                .clients
                .iter()
                .zip(&h.assignment)
                .enumerate()
                .map(|(i, (c, hub))| vec![(i + 1).to_string(), s(c[0]), s(c[1]), (hub + 1).to_string()])
                .collect();
            let mut totals = Vec::new();
            for (k, (hub, load)) in h.hubs.iter().zip(&h.loads).enumerate() {
                totals.push((format!("hub_{}_x", k + 1), s(hub[0])));
                totals.push((format!("hub_{}_y", k + 1), s(hub[1])));
                totals.push((format!("hub_{}_load", k + 1), load.to_string()));
            }
            totals.push(("total_distance".into(), s(h.total_distance)));
            totals.push(("load_std".into(), s(h.load_std)));
            Solution {
                objective: h.objective,
                header: cols(&["client", "x", "y", "hub"]),
                rows,
                totals,
            }
        }
        Instance::Clustering(inst) => {
            let a = decode_clusters(inst, x);
            let mut header = vec!["point".to_string()];
            header.extend((1..=inst.features()).map(|f| format!("x{f}")));
            header.push("cluster".into());
            let rows = inst
                .points
                .iter()
                .zip(&a.labels)
                .enumerate()
                .map(|(i, (p, label))| {
                    let mut row = vec![(i + 1).to_string()];
                    row.extend(p.iter().map(|v| s(*v)));
                    row.push((label + 1).to_string());
                    row
                })
                .collect();
            let mut totals = Vec::new();
            for (k, (c, size)) in a.centroids.iter().zip(&a.sizes).enumerate() {
                let coords: Vec<String> = c.iter().map(|v| s(*v)).collect();
                totals.push((format!("cluster_{}_centroid", k + 1), coords.join(" ")));
                totals.push((format!("cluster_{}_size", k + 1), size.to_string()));
            }
            Solution {
                objective: a.objective,
                header,
                rows,
                totals,
            }
        }
    };
    solution.totals.insert(0, ("objective".into(), s(solution.objective)));
    Ok(solution)
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn tree_solution(graph: &GraphInstance, tree: &SpanningTree) -> Solution {
    let rows = tree
        .edges
        .iter()
        .map(|&(a, b)| vec![(a + 1).to_string(), (b + 1).to_string(), graph.weight(a, b).to_string()])
        .collect();
    Solution {
        objective: tree.total_weight as f64,
        header: cols(&["from", "to", "weight"]),
        rows,
        totals: vec![
            ("total_weight".into(), tree.total_weight.to_string()),
            ("edges".into(), tree.edges.len().to_string()),
        ],
    }
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| HarnessError::Data(format!("cannot encode csv: {e}"));
    w.write_record(header).map_err(wrap)?;
    for r in rows {
        w.write_record(r).map_err(wrap)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| HarnessError::Data(format!("cannot encode csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn report_text(req: &SolveRequest, kind: &str, sol: &Solution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance:   {}", req.instance);
    let _ = writeln!(out, "kind:       {kind}");
    let _ = writeln!(out, "solver:     {}", req.solver);
    if let Solver::Optimizer(_) = req.solver {
        let _ = writeln!(out, "seed:       {}", req.seed);
        let _ = writeln!(out, "iterations: {}", req.iterations);
        let _ = writeln!(out, "population: {}", req.pop_size);
    }
    out.push('\n');
    let width = sol.totals.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &sol.totals {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out.push('\n');
    let widths: Vec<usize> = (0..sol.header.len())
        .map(|c| {
            sol.rows
                .iter()
                .map(|r| r[c].len())
                .chain([sol.header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in std::iter::once(&sol.header).chain(&sol.rows) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  "));
    }
    out
}

pub fn solve_app(req: &SolveRequest) -> Result<SolveOutput> {
    let instance = load_instance(&req.instance)?;
    let solution = solve_instance(&instance, req.solver, req.seed, req.iterations, req.pop_size)?;
    let report = report_text(req, instance.kind(), &solution);

    fs::create_dir_all(&req.output_dir).map_err(|e| HarnessError::io(&req.output_dir, e))?;
    let stem = format!("{}_{}", instance_stem(&req.instance), req.solver);
    let files = vec![
        req.output_dir.join(format!("{stem}.txt")),
        req.output_dir.join(format!("{stem}.csv")),
        req.output_dir.join(format!("{stem}_summary.csv")),
    ];
    write_file(&files[0], &report)?;
    write_file(&files[1], &csv_text(&solution.header, &solution.rows)?)?;
    let totals: Vec<Vec<String>> = solution
        .totals
        .iter()
        .map(|(k, v)| vec![k.clone(), v.clone()])
        .collect();
    write_file(&files[2], &csv_text(&cols(&["key", "value"]), &totals)?)?;
    Ok(SolveOutput {
        solution,
        report,
        files,
    })
}

fn instance_stem(arg: &str) -> String {
    Path::new(arg)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("instance")
        .to_ascii_lowercase()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::builtin_instance;

    #[test]
    fn solver_names() {
        assert_eq!("prim-oracle".parse::<Solver>().unwrap(), Solver::PrimOracle);
        assert_eq!("PSO".parse::<Solver>().unwrap(), Solver::Optimizer(Algorithm::Pso));
        let msg = "ga".parse::<Solver>().unwrap_err().to_string();
        assert!(msg.contains("prim-oracle"), "{msg}");
    }

    #[test]
    fn prim_oracle_rejects_other_kinds() {
        let inst = builtin_instance("paper-pms-2x20").unwrap();
        assert!(solve_instance(&inst, Solver::PrimOracle, 0, 1, 1).is_err());
    }

    #[test]
    fn prim_oracle_tree_has_n_minus_one_edges() {
        let inst = builtin_instance("paper-mst-22").unwrap();
        let sol = solve_instance(&inst, Solver::PrimOracle, 0, 1, 1).unwrap();
        assert_eq!(sol.rows.len(), 21);
        let sum: u64 = sol.rows.iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
        assert_eq!(sum as f64, sol.objective);
    }

    #[test]
    fn ed_report_lists_balance_error() {
        let dir = tempfile::tempdir().unwrap();
        let out = solve_app(&SolveRequest {
            instance: "paper-ed-3gen".into(),
            solver: Solver::Optimizer(Algorithm::Shs),
            seed: 1,
            iterations: 20,
            pop_size: 10,
            output_dir: dir.path().to_path_buf(),
        })
        .unwrap();
        assert!(out.report.contains("Error"));
        let summary = fs::read_to_string(&out.files[2]).unwrap();
        assert!(summary.lines().any(|l| l.starts_with("Error,")));
        assert_eq!(out.files[0].file_name().unwrap(), "paper-ed-3gen_shs.txt");
    }
}
