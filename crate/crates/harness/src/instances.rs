//! Application instances: the built-in reference set and file loaders.
//!
//! Files are recognised by content:
//!
//! * CSV whose header is `id,x,y`: node coordinates of a spanning-tree graph,
//!   ids numbered `1..=N` in order;
//! * any other CSV: a processing-time matrix (one row per machine, one column
//!   per task, no header); setup times are drawn from the reference range and
//!   seed;
//! * TOML with a `kind` key of `mst`, `pms`, `ed`, `hlp` or `clustering`.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use shs_core::apps::pms::{REFERENCE_SETUP_RANGE, REFERENCE_SETUP_SEED};
use shs_core::apps::{
    clustering_objective, ed_objective, hlp_objective, mst_objective, pms_objective, ClusterObjective,
    ClusteringInstance, EdInstance, GraphInstance, HlpInstance, PmsInstance,
};
use shs_core::{ObjectiveSpec, RngStream};

use crate::error::{toml_error, HarnessError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Mst(GraphInstance),
    Pms(PmsInstance),
    Ed(EdInstance),
    Hlp(HlpInstance),
    Clustering(ClusteringInstance),
}

/// Names and descriptions of the instances available without a file.
pub const BUILTIN_INSTANCES: [(&str, &str); 5] = [
    ("paper-mst-22", "22-node spanning-tree network"),
    ("paper-pms-2x20", "2 machines x 20 tasks, setups in [3, 9] from seed 42"),
    ("paper-ed-3gen", "3-generator economic dispatch, demand 900 MW"),
    ("paper-hlp-40", "40 seeded clients, 4 hubs, balance weight 1"),
    ("iris-k3", "Iris sepal length and petal width, k = 3"),
];

pub fn builtin_instance(name: &str) -> Option<Instance> {
    let inst = match name.to_ascii_lowercase().as_str() {
        "paper-mst-22" => Instance::Mst(GraphInstance::reference_22()),
        "paper-pms-2x20" => Instance::Pms(PmsInstance::reference_2x20(REFERENCE_SETUP_SEED)),
        "paper-ed-3gen" => Instance::Ed(EdInstance::reference_3gen()),
        "paper-hlp-40" => Instance::Hlp(HlpInstance::default_40()),
        "iris-k3" => Instance::Clustering(ClusteringInstance::iris()),
        _ => return None,
    };
    Some(inst)
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Mst(_) => "mst",
            Instance::Pms(_) => "pms",
            Instance::Ed(_) => "ed",
            Instance::Hlp(_) => "hlp",
            Instance::Clustering(_) => "clustering",
        }
    }

    pub fn objective(&self) -> Result<ObjectiveSpec> {
        Ok(match self {
            Instance::Mst(g) => mst_objective(g)?,
            Instance::Pms(p) => pms_objective(p)?,
            Instance::Ed(e) => ed_objective(e)?,
            Instance::Hlp(h) => hlp_objective(h)?,
            Instance::Clustering(c) => clustering_objective(c)?,
        })
    }
}

/// Resolves a built-in name or reads an instance file.
pub fn load_instance(arg: &str) -> Result<Instance> {
    if let Some(inst) = builtin_instance(arg) {
        return Ok(inst);
    }
    let path = Path::new(arg);
    if !path.exists() {
        let names: Vec<&str> = BUILTIN_INSTANCES.iter().map(|(n, _)| *n).collect();
        return Err(HarnessError::Core(shs_core::Error::Unknown {
            kind: "instance",
            name: arg.to_string(),
            available: format!("{}, or a path to an instance file", names.join(", ")),
        }));
    }
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let is_toml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    if is_toml {
        parse_toml_instance(path, &text)
    } else {
        parse_csv_instance(path, &text)
    }
}

fn parse_error(path: &Path, line: usize, column: usize, message: impl Into<String>) -> HarnessError {
    HarnessError::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message: message.into(),
    }
}

/// Comma-separated fields of `line` with their 1-based starting columns.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 1;
    for raw in line.split(',') {
        let lead = raw.len() - raw.trim_start().len();
        out.push((col + lead, raw.trim()));
        col += raw.chars().count() + 1;
    }
    out
}

pub fn parse_csv_instance(path: &Path, text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((first_no, first)) = lines.next() else {
        return Err(parse_error(path, 1, 1, "empty instance file"));
    };
    let header: Vec<String> = first.split(',').map(|f| f.trim().to_ascii_lowercase()).collect();

    if header == ["id", "x", "y"] {
        let mut nodes = Vec::new();
        for (no, line) in lines {
            let f = fields(line);
            if f.len() != 3 {
                return Err(parse_error(
                    path,
                    no,
                    1,
                    format!("expected 3 fields (id,x,y), found {}", f.len()),
                ));
            }
            let (id_col, id) = f[0];
            let expected = nodes.len() + 1;
            match id.parse::<usize>() {
                Ok(v) if v == expected => {}
                _ => {
                    return Err(parse_error(
                        path,
                        no,
                        id_col,
                        format!("expected node id {expected}, found `{id}`"),
                    ))
                }
            }
            let mut coord = [0.0; 2];
            for (slot, &(col, s)) in coord.iter_mut().zip(&f[1..]) {
                *slot = s
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| parse_error(path, no, col, format!("invalid coordinate `{s}`")))?;
            }
            nodes.push((coord[0], coord[1]));
        }
        return Ok(Instance::Mst(GraphInstance::new(nodes)?));
    }

    let mut processing: Vec<Vec<u32>> = Vec::new();
    for (no, line) in std::iter::once((first_no, first)).chain(lines) {
        let row = fields(line)
            .into_iter()
            .map(|(col, s)| {
                s.parse::<u32>().map_err(|_| {
                    parse_error(
                        path,
                        no,
                        col,
                        format!("expected a non-negative integer processing time, found `{s}`"),
                    )
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        if let Some(prev) = processing.first() {
            if row.len() != prev.len() {
                return Err(parse_error(
                    path,
                    no,
                    1,
                    format!("expected {} processing times, found {}", prev.len(), row.len()),
                ));
            }
        }
        processing.push(row);
    }
    let inst = PmsInstance::with_random_setups(
        processing,
        REFERENCE_SETUP_RANGE,
        &mut RngStream::new(REFERENCE_SETUP_SEED),
    )?;
    Ok(Instance::Pms(inst))
}

#[derive(Deserialize)]
struct KindOnly {
    kind: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MstFile {
    #[serde(rename = "kind")]
    _kind: String,
    nodes: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PmsFile {
    #[serde(rename = "kind")]
    _kind: String,
    processing: Vec<Vec<u32>>,
    setup: Option<Vec<Vec<u32>>>,
    setup_seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdFile {
    #[serde(rename = "kind")]
    _kind: String,
    p_min: Vec<f64>,
    p_max: Vec<f64>,
    demand: f64,
    cost: Vec<[f64; 3]>,
    loss: Vec<Vec<f64>>,
    penalty_weight: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HlpFile {
    #[serde(rename = "kind")]
    _kind: String,
    hub_count: usize,
    balance_weight: f64,
    clients: Option<Vec<[f64; 2]>>,
    client_count: Option<usize>,
    client_seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClusteringFile {
    #[serde(rename = "kind")]
    _kind: String,
    k: usize,
    points: Vec<Vec<f64>>,
    #[serde(default)]
    objective: ObjectiveName,
}

#[derive(Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
enum ObjectiveName {
    #[default]
    Within,
    Between,
}

pub fn parse_toml_instance(path: &Path, text: &str) -> Result<Instance> {
    fn read<'a, T: Deserialize<'a>>(path: &Path, text: &'a str) -> Result<T> {
        toml::from_str(text).map_err(|e| toml_error(path, text, e))
    }
    let kind = read::<KindOnly>(path, text)?.kind;
    let inst = match kind.as_str() {
        "mst" => {
            let f: MstFile = read(path, text)?;
            Instance::Mst(GraphInstance::new(f.nodes.into_iter().map(|[x, y]| (x, y)).collect())?)
        }
        "pms" => {
            let f: PmsFile = read(path, text)?;
            Instance::Pms(match f.setup {
                Some(setup) => PmsInstance::new(f.processing, setup)?,
                None => PmsInstance::with_random_setups(
                    f.processing,
                    REFERENCE_SETUP_RANGE,
                    &mut RngStream::new(f.setup_seed.unwrap_or(REFERENCE_SETUP_SEED)),
                )?,
            })
        }
        "ed" => {
            let f: EdFile = read(path, text)?;
            let mut inst = EdInstance::new(f.p_min, f.p_max, f.demand, f.cost, f.loss)?;
            if let Some(w) = f.penalty_weight {
                inst.penalty_weight = w;
            }
            Instance::Ed(inst)
        }
        "hlp" => {
            let f: HlpFile = read(path, text)?;
            Instance::Hlp(match (f.clients, f.client_count) {
                (Some(clients), None) => HlpInstance::new(clients, f.hub_count, f.balance_weight)?,
                (None, Some(n)) => HlpInstance::seeded(
                    n,
                    f.hub_count,
                    f.balance_weight,
                    f.client_seed.unwrap_or(shs_core::apps::hlp::DEFAULT_CLIENT_SEED),
                )?,
                _ => {
                    return Err(parse_error(
                        path,
                        1,
                        1,
                        "hlp instance needs exactly one of `clients` or `client_count`",
                    ));
                }
            })
        }
        "clustering" => {
            let f: ClusteringFile = read(path, text)?;
            let mode = match f.objective {
                ObjectiveName::Within => ClusterObjective::WithinCluster,
                ObjectiveName::Between => ClusterObjective::BetweenGroup,
            };
            Instance::Clustering(ClusteringInstance::new(f.points, f.k)?.with_mode(mode))
        }
        other => {
            let (line, column) = text
                .find(other)
                .map_or((1, 1), |at| crate::error::line_column(text, at));
            return Err(parse_error(
                path,
                line,
                column,
                format!("unknown instance kind `{other}` (expected mst, pms, ed, hlp or clustering)"),
            ));
        }
    };
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("inst.csv")
    }

    #[test]
    fn builtins_resolve_case_insensitively() {
        for (name, _) in BUILTIN_INSTANCES {
            assert!(builtin_instance(name).is_some(), "{name}");
        }
        assert!(matches!(builtin_instance("PAPER-MST-22"), Some(Instance::Mst(_))));
    }

    #[test]
    fn graph_csv_round_trip() {
        let inst = parse_csv_instance(p(), "id,x,y\n1,0,0\n2, 3,4\n\n3,6,8\n").unwrap();
        match inst {
            Instance::Mst(g) => assert_eq!(g.nodes, vec![(0.0, 0.0), (3.0, 4.0), (6.0, 8.0)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graph_csv_reports_bad_field_position() {
        let err = parse_csv_instance(p(), "id,x,y\n1,0,0\n2,3,abc\n").unwrap_err();
        match err {
            HarnessError::Parse { line, column, .. } => assert_eq!((line, column), (3, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graph_csv_requires_sequential_ids() {
        let err = parse_csv_instance(p(), "id,x,y\n1,0,0\n3,1,1\n").unwrap_err();
        assert!(matches!(err, HarnessError::Parse { line: 3, column: 1, .. }), "{err}");
    }

    #[test]
    fn processing_matrix_csv() {
        match parse_csv_instance(p(), "5,6,7\n8,9,10\n").unwrap() {
            Instance::Pms(inst) => {
                assert_eq!(inst.machines(), 2);
                assert_eq!(inst.tasks(), 3);
            }
            other => panic!("{other:?}"),
        }
        let err = parse_csv_instance(p(), "5,6,7\n8,x,10\n").unwrap_err();
        assert!(matches!(err, HarnessError::Parse { line: 2, column: 3, .. }), "{err}");
        let err = parse_csv_instance(p(), "5,6,7\n8,9\n").unwrap_err();
        assert!(matches!(err, HarnessError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn toml_instances() {
        let ed = "kind = \"ed\"\np_min = [10, 10]\np_max = [100, 100]\ndemand = 120\n\
                  cost = [[0, 1, 0.01], [0, 1.2, 0.02]]\nloss = [[0, 0], [0, 0]]\n";
        assert!(matches!(parse_toml_instance(p(), ed).unwrap(), Instance::Ed(_)));
        let hlp = "kind = \"hlp\"\nhub_count = 2\nbalance_weight = 0.5\nclient_count = 10\n";
        assert!(matches!(parse_toml_instance(p(), hlp).unwrap(), Instance::Hlp(_)));
        let cl = "kind = \"clustering\"\nk = 2\npoints = [[0, 0], [1, 1], [5, 5]]\nobjective = \"between\"\n";
        match parse_toml_instance(p(), cl).unwrap() {
            Instance::Clustering(c) => assert_eq!(c.mode, ClusterObjective::BetweenGroup),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn toml_error_has_position() {
        let err = parse_toml_instance(p(), "kind = \"ed\"\np_min = [1, \"x\"]\n").unwrap_err();
        match err {
            HarnessError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_file_names_builtins() {
        let msg = load_instance("no-such-instance").unwrap_err().to_string();
        assert!(msg.contains("paper-mst-22"), "{msg}");
    }
}
