//! Statistical reports over a directory of trace files.
//!
//! Every report is written once per function:
//!
//! * `wilcoxon_<function>.csv`: optimizer x optimizer matrix of two-sided
//!   rank-sum p-values on final costs;
//! * `friedman_<function>.csv`: average rank of each optimizer with runs as
//!   blocks, plus the chi-square statistic and p-value;
//! * `correlation_<function>.csv`: optimizer x optimizer Pearson correlation
//!   of the mean convergence traces (empty when a trace is flat);
//! * `dispersion_<function>.csv`: final costs min-max normalized over all
//!   optimizers together.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use shs_core::stats::{friedman_ranks, minmax_normalize, pearson_correlation, wilcoxon_rank_sum, FriedmanResult};

use crate::error::{HarnessError, Result};
use crate::experiment::{fmt_float, write_file};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CompareTest {
    Wilcoxon,
    Friedman,
    Correlation,
    Dispersion,
}

impl CompareTest {
    pub const ALL: [CompareTest; 4] = [
        CompareTest::Wilcoxon,
        CompareTest::Friedman,
        CompareTest::Correlation,
        CompareTest::Dispersion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CompareTest::Wilcoxon => "wilcoxon",
            CompareTest::Friedman => "friedman",
            CompareTest::Correlation => "correlation",
            CompareTest::Dispersion => "dispersion",
        }
    }
}

impl FromStr for CompareTest {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        CompareTest::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                HarnessError::Usage(format!(
                    "unknown test `{s}` (expected wilcoxon, friedman, correlation or dispersion)"
                ))
            })
    }
}

/// Traces of one optimizer on one function: `runs[r][t]` is the best cost of
/// run `r` after iteration `t + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSet {
    pub runs: Vec<Vec<f64>>,
}

impl TraceSet {
    pub fn final_costs(&self) -> Vec<f64> {
        self.runs.iter().filter_map(|r| r.last().copied()).collect()
    }

    /// Iteration-wise mean over runs, up to the shortest run.
    pub fn mean_trace(&self) -> Vec<f64> {
        let len = self.runs.iter().map(Vec::len).min().unwrap_or(0);
        (0..len)
            .map(|t| self.runs.iter().map(|r| r[t]).sum::<f64>() / self.runs.len() as f64)
            .collect()
    }
}

/// All traces of a directory: function -> optimizer -> traces, both sorted by name.
pub type TraceTable = BTreeMap<String, BTreeMap<String, TraceSet>>;

/// Loads every `trace_<optimizer>_<function>.csv` in `dir`.
pub fn load_traces(dir: &Path) -> Result<TraceTable> {
    let entries = fs::read_dir(dir).map_err(|e| HarnessError::io(dir, e))?;
    let mut table = TraceTable::new();
    for entry in entries {
        let path = entry.map_err(|e| HarnessError::io(dir, e))?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
            continue;
        };
        let Some((optimizer, function)) = name
            .strip_prefix("trace_")
            .and_then(|n| n.strip_suffix(".csv"))
            .and_then(|n| n.split_once('_'))
        else {
            continue;
        };
        let set = read_trace_file(&path)?;
        table
            .entry(function.to_string())
            .or_default()
            .insert(optimizer.to_string(), set);
    }
    Ok(table)
}

pub fn read_trace_file(path: &Path) -> Result<TraceSet> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["run", "iteration", "best_cost"] {
        return Err(HarnessError::Parse {
            path: path.to_path_buf(),
            line: 1,
            column: 1,
            message: "expected header run,iteration,best_cost".into(),
        });
    }
    let mut runs: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = |i: usize| -> Result<&str> {
            record.get(i).ok_or_else(|| HarnessError::Parse {
                path: path.to_path_buf(),
                line,
                column: i + 1,
                message: "missing field".into(),
            })
        };
        let bad = |i: usize, what: &str| HarnessError::Parse {
            path: path.to_path_buf(),
            line,
            column: i + 1,
            message: format!("invalid {what}"),
        };
        let run: usize = field(0)?.trim().parse().map_err(|_| bad(0, "run index"))?;
        let iteration: usize = field(1)?.trim().parse().map_err(|_| bad(1, "iteration"))?;
        let cost: f64 = field(2)?.trim().parse().map_err(|_| bad(2, "cost"))?;
        if run == runs.len() {
            runs.push(Vec::new());
        }
        if run + 1 != runs.len() || iteration != runs[run].len() + 1 {
            return Err(bad(
                0,
                "ordering: rows must be grouped by run and numbered from iteration 1",
            ));
        }
        runs[run].push(cost);
    }
    if runs.is_empty() {
        return Err(HarnessError::Data(format!("{}: no trace rows", path.display())));
    }
    Ok(TraceSet { runs })
}

fn csv_error(path: &Path, err: csv::Error) -> HarnessError {
    let line = err.position().map_or(0, |p| p.line() as usize);
    match err.into_kind() {
        csv::ErrorKind::Io(e) => HarnessError::io(path, e),
        other => HarnessError::Parse {
            path: path.to_path_buf(),
            line,
            column: 1,
            message: format!("{other:?}"),
        },
    }
}

/// Pairwise rank-sum p-values; entry `[i][j]` compares optimizer `i` with `j`.
pub fn wilcoxon_matrix(sets: &[&TraceSet]) -> Result<Vec<Vec<f64>>> {
    let finals: Vec<Vec<f64>> = sets.iter().map(|s| s.final_costs()).collect();
    finals
        .iter()
        .map(|a| finals.iter().map(|b| Ok(wilcoxon_rank_sum(a, b)?.p_value)).collect())
        .collect()
}

/// Friedman test with runs as blocks. Refuses unequal run counts.
pub fn friedman_table(names: &[&str], sets: &[&TraceSet]) -> Result<FriedmanResult> {
    let finals: Vec<Vec<f64>> = sets.iter().map(|s| s.final_costs()).collect();
    require_paired(names, &finals)?;
    let blocks: Vec<Vec<f64>> = (0..finals[0].len())
        .map(|r| finals.iter().map(|f| f[r]).collect())
        .collect();
    Ok(friedman_ranks(&blocks)?)
}

/// Pearson correlation between mean traces. Refuses unequal trace lengths.
pub fn correlation_matrix(names: &[&str], sets: &[&TraceSet]) -> Result<Vec<Vec<Option<f64>>>> {
    let means: Vec<Vec<f64>> = sets.iter().map(|s| s.mean_trace()).collect();
    if let Some(i) = means.iter().position(|m| m.len() != means[0].len()) {
        return Err(HarnessError::Data(format!(
            "trace lengths differ: {} has {} iterations, {} has {}",
            names[0],
            means[0].len(),
            names[i],
            means[i].len()
        )));
    }
    means
        .iter()
        .map(|a| means.iter().map(|b| Ok(pearson_correlation(a, b)?)).collect())
        .collect()
}

/// Final costs normalized to `[0, 1]` over all optimizers together.
pub fn dispersion(sets: &[&TraceSet]) -> Vec<Vec<f64>> {
    let finals: Vec<Vec<f64>> = sets.iter().map(|s| s.final_costs()).collect();
    let pooled: Vec<f64> = finals.iter().flatten().copied().collect();
    let mut normalized = minmax_normalize(&pooled).into_iter();
    finals
        .iter()
        .map(|f| normalized.by_ref().take(f.len()).collect())
        .collect()
}

fn require_paired(names: &[&str], finals: &[Vec<f64>]) -> Result<()> {
    if let Some(i) = finals.iter().position(|f| f.len() != finals[0].len()) {
        return Err(HarnessError::Data(format!(
            "paired test needs equal run counts: {} has {} runs, {} has {}",
            names[0],
            finals[0].len(),
            names[i],
            finals[i].len()
        )));
    }
    Ok(())
}

fn matrix_csv<T>(names: &[&str], rows: &[Vec<T>], cell: impl Fn(&T) -> String) -> String {
    let mut out = format!("optimizer,{}\n", names.join(","));
    for (name, row) in names.iter().zip(rows) {
        let cells: Vec<String> = row.iter().map(&cell).collect();
        let _ = writeln!(out, "{name},{}", cells.join(","));
    }
    out
}

/// Runs `tests` on every function in `trace_dir` that has traces from at
/// least two optimizers, writing reports into `out_dir`.
pub fn compare(trace_dir: &Path, tests: &[CompareTest], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let table = load_traces(trace_dir)?;
    let comparable: Vec<_> = table.iter().filter(|(_, by_opt)| by_opt.len() >= 2).collect();
    if comparable.is_empty() {
        return Err(HarnessError::Data(format!(
            "{}: no function has traces from two or more optimizers",
            trace_dir.display()
        )));
    }
    fs::create_dir_all(out_dir).map_err(|e| HarnessError::io(out_dir, e))?;

    let mut written = Vec::new();
    for (function, by_opt) in comparable {
        let names: Vec<&str> = by_opt.keys().map(String::as_str).collect();
        let sets: Vec<&TraceSet> = by_opt.values().collect();
        for &test in tests {
            let body = match test {
                CompareTest::Wilcoxon => matrix_csv(&names, &wilcoxon_matrix(&sets)?, |p| fmt_float(*p)),
                CompareTest::Friedman => {
                    let f = friedman_table(&names, &sets)?;
                    let mut out = String::from("optimizer,average_rank,chi_square,p_value\n");
                    for (name, rank) in names.iter().zip(&f.average_ranks) {
                        let _ = writeln!(
                            out,
                            "{name},{},{},{}",
                            fmt_float(*rank),
                            fmt_float(f.chi_square),
                            fmt_float(f.p_value)
                        );
                    }
                    out
                }
                CompareTest::Correlation => matrix_csv(&names, &correlation_matrix(&names, &sets)?, |c| {
                    c.map(fmt_float).unwrap_or_default()
                }),
                CompareTest::Dispersion => {
                    let mut out = String::from("optimizer,run,final_cost,normalized\n");
                    for ((name, set), norm) in names.iter().zip(&sets).zip(dispersion(&sets)) {
                        for (r, (cost, n)) in set.final_costs().iter().zip(norm).enumerate() {
                            let _ = writeln!(out, "{name},{r},{},{}", fmt_float(*cost), fmt_float(n));
                        }
                    }
                    out
                }
            };
            let path = out_dir.join(format!("{}_{function}.csv", test.name()));
            write_file(&path, &body)?;
            written.push(path);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(finals: &[f64]) -> TraceSet {
        TraceSet {
            runs: finals.iter().map(|&f| vec![f + 1.0, f]).collect(),
        }
    }

    #[test]
    fn identical_sets_give_unit_p_values() {
        let a = set(&[1.0, 2.0, 3.0, 4.0]);
        let m = wilcoxon_matrix(&[&a, &a.clone()]).unwrap();
        assert_eq!(m, vec![vec![1.0; 2]; 2]);
    }

    #[test]
    fn strictly_best_optimizer_ranks_first() {
        let best = set(&[0.1, 0.2, 0.3]);
        let mid = set(&[1.0, 2.0, 3.0]);
        let worst = set(&[10.0, 20.0, 30.0]);
        let f = friedman_table(&["a", "b", "c"], &[&best, &mid, &worst]).unwrap();
        assert_eq!(f.average_ranks, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn friedman_refuses_unpaired_runs() {
        let err = friedman_table(&["a", "b"], &[&set(&[1.0, 2.0]), &set(&[1.0])]).unwrap_err();
        assert!(matches!(err, HarnessError::Data(_)));
        assert!(err.to_string().contains("equal run counts"), "{err}");
        assert!(wilcoxon_matrix(&[&set(&[1.0, 2.0]), &set(&[1.0])]).is_ok());
    }

    #[test]
    fn dispersion_spans_unit_interval() {
        let d = dispersion(&[&set(&[1.0, 3.0]), &set(&[5.0])]);
        assert_eq!(d, vec![vec![0.0, 0.5], vec![1.0]]);
    }

    #[test]
    fn flat_mean_trace_has_no_correlation() {
        let flat = TraceSet {
            runs: vec![vec![1.0, 1.0]],
        };
        let falling = TraceSet {
            runs: vec![vec![2.0, 1.0]],
        };
        let m = correlation_matrix(&["a", "b"], &[&flat, &falling]).unwrap();
        assert_eq!(m[0][1], None);
        assert!((m[1][1].unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_file_round_trip_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("trace_shs_dejong.csv");
        fs::write(&good, "run,iteration,best_cost\n0,1,2e0\n0,2,1e0\n1,1,3e0\n1,2,5e-1\n").unwrap();
        assert_eq!(read_trace_file(&good).unwrap().final_costs(), vec![1.0, 0.5]);
        let bad = dir.path().join("trace_pso_dejong.csv");
        fs::write(&bad, "run,iteration,best_cost\n0,1,2e0\n0,2,oops\n").unwrap();
        match read_trace_file(&bad).unwrap_err() {
            HarnessError::Parse { line, column, .. } => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_have_square_shape() {
        let dir = tempfile::tempdir().unwrap();
        for (opt, costs) in [("shs", [1.0, 2.0]), ("pso", [3.0, 4.0]), ("fa", [5.0, 6.0])] {
            let mut body = String::from("run,iteration,best_cost\n");
            for (r, c) in costs.iter().enumerate() {
                body += &format!("{r},1,{}\n{r},2,{c}\n", c + 1.0);
            }
            fs::write(dir.path().join(format!("trace_{opt}_dejong.csv")), body).unwrap();
        }
        let files = compare(dir.path(), &CompareTest::ALL, dir.path()).unwrap();
        assert_eq!(files.len(), 4);
        let w = fs::read_to_string(dir.path().join("wilcoxon_dejong.csv")).unwrap();
        let rows: Vec<&str> = w.lines().collect();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.split(',').count() == 4));
    }
}
