//! The ten classical test functions and a registry that builds
//! [`ObjectiveSpec`]s from them at any compatible dimension.
//!
//! Notes on the exact forms used:
//!
//! * Ackley uses `0.02` inside the exponent and omits the `+e` term, so its
//!   minimum at the origin is `-e`. [`BenchmarkOptions::canonical_ackley`]
//!   switches to the textbook form (`0.2`, `+e`, minimum `0`).
//! * Powell uses `+` in all four terms; its minimum is `0` at the origin.
//!   The listed point `(3, -1, 0, 1)` is the usual starting point, not the
//!   minimizer.
//! * Trid's listed minimum `-50` holds only at `dim = 6`; the registry stores
//!   the general `-dim (dim + 4) (dim - 1) / 6` at `x_i = i (dim + 1 - i)`.
//! * Levy is the standard form with `w_i = 1 + (x_i - 1) / 4`.
//! * Booth's first square is `(x1 + 2 x2 - 7)^2`; with `x1 + x2 - 7` the
//!   listed minimizer `(1, 3)` would cost 9.
//! * Beale uses `+ x1 x2^k` inside each square, the sign for which `(3, 0.5)`
//!   is the zero of all three terms.

use std::f64::consts::{E, PI};
use std::fmt;

use crate::{Error, ObjectiveSpec, Result};

/// Uniform `[-10, 10]` box used for the comparison experiments.
pub const EXPERIMENT_DOMAIN: (f64, f64) = (-10.0, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionRule {
    Scalable,
    Fixed2D,
    MultipleOf4,
}

impl DimensionRule {
    pub fn accepts(self, dim: usize) -> bool {
        match self {
            DimensionRule::Scalable => dim >= 1,
            DimensionRule::Fixed2D => dim == 2,
            DimensionRule::MultipleOf4 => dim >= 4 && dim.is_multiple_of(4),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            DimensionRule::Scalable => "a positive dimension",
            DimensionRule::Fixed2D => "dimension exactly 2",
            DimensionRule::MultipleOf4 => "a dimension that is a positive multiple of 4",
        }
    }
}

impl fmt::Display for DimensionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimensionRule::Scalable => "scalable",
            DimensionRule::Fixed2D => "fixed-2D",
            DimensionRule::MultipleOf4 => "multiple-of-4",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modality {
    Unimodal,
    Multimodal,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchmarkEntry {
    pub name: &'static str,
    pub modality: Modality,
    pub default_domain: (f64, f64),
    pub dimension_rule: DimensionRule,
    eval: fn(&[f64]) -> f64,
}

impl BenchmarkEntry {
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    /// Closed-form minimizer and value at `dim`, if one exists.
    pub fn known_minimum(&self, dim: usize) -> Option<(Vec<f64>, f64)> {
        known_minimum(self.name, dim, false)
    }
}

const REGISTRY: [BenchmarkEntry; 10] = [
    entry(
        "ackley",
        Modality::Multimodal,
        (-35.0, 35.0),
        DimensionRule::Scalable,
        ackley,
    ),
    entry(
        "rastrigin",
        Modality::Multimodal,
        (-5.12, 5.12),
        DimensionRule::Scalable,
        rastrigin,
    ),
    entry(
        "zakharov",
        Modality::Unimodal,
        (-5.0, 10.0),
        DimensionRule::Scalable,
        zakharov,
    ),
    entry(
        "booth",
        Modality::Unimodal,
        (-10.0, 10.0),
        DimensionRule::Fixed2D,
        booth,
    ),
    entry(
        "dejong",
        Modality::Unimodal,
        (-10.0, 10.0),
        DimensionRule::Scalable,
        dejong,
    ),
    entry("beale", Modality::Unimodal, (-4.5, 4.5), DimensionRule::Fixed2D, beale),
    entry(
        "powell",
        Modality::Unimodal,
        (-4.0, 5.0),
        DimensionRule::MultipleOf4,
        powell,
    ),
    entry(
        "michalewicz",
        Modality::Multimodal,
        (0.0, PI),
        DimensionRule::Scalable,
        michalewicz,
    ),
    entry("trid", Modality::Unimodal, (-36.0, 36.0), DimensionRule::Scalable, trid),
    entry(
        "levy",
        Modality::Multimodal,
        (-10.0, 10.0),
        DimensionRule::Scalable,
        levy,
    ),
];

const fn entry(
    name: &'static str,
    modality: Modality,
    default_domain: (f64, f64),
    dimension_rule: DimensionRule,
    eval: fn(&[f64]) -> f64,
) -> BenchmarkEntry {
    BenchmarkEntry {
        name,
        modality,
        default_domain,
        dimension_rule,
        eval,
    }
}

/// All ten entries in table order.
pub fn list_benchmarks() -> &'static [BenchmarkEntry] {
    &REGISTRY
}

pub fn find_benchmark(name: &str) -> Result<&'static BenchmarkEntry> {
    REGISTRY
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Unknown {
            kind: "benchmark function",
            name: name.to_string(),
            available: REGISTRY.map(|e| e.name).join(", "),
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BenchmarkOptions {
    /// Uniform `[lo, hi]` replacing the function's own search domain.
    pub domain_override: Option<(f64, f64)>,
    pub canonical_ackley: bool,
}

pub fn make_benchmark(name: &str, dim: usize, domain_override: Option<(f64, f64)>) -> Result<ObjectiveSpec> {
    make_benchmark_with(
        name,
        dim,
        &BenchmarkOptions {
            domain_override,
            ..Default::default()
        },
    )
}

pub fn make_benchmark_with(name: &str, dim: usize, options: &BenchmarkOptions) -> Result<ObjectiveSpec> {
    let entry = find_benchmark(name)?;
    if !entry.dimension_rule.accepts(dim) {
        return Err(Error::IncompatibleDimension {
            name: entry.name.to_string(),
            rule: entry.dimension_rule.describe(),
            dim,
        });
    }
    let (lo, hi) = options.domain_override.unwrap_or(entry.default_domain);
    let canonical = options.canonical_ackley && entry.name == "ackley";
    let eval: fn(&[f64]) -> f64 = if canonical { ackley_canonical } else { entry.eval };
    let spec = ObjectiveSpec::uniform(entry.name, dim, lo, hi, eval)?;
    Ok(match known_minimum(entry.name, dim, canonical) {
        Some((x, f)) => spec.with_known_optimum(x, f),
        None => spec,
    })
}

fn known_minimum(name: &str, dim: usize, canonical_ackley: bool) -> Option<(Vec<f64>, f64)> {
    let zeros = vec![0.0; dim];
    match name {
        "ackley" => Some((zeros, if canonical_ackley { 0.0 } else { -E })),
        "rastrigin" | "zakharov" | "dejong" | "powell" => Some((zeros, 0.0)),
        "booth" => Some((vec![1.0, 3.0], 0.0)),
        "beale" => Some((vec![3.0, 0.5], 0.0)),
        "levy" => Some((vec![1.0; dim], 0.0)),
        "trid" => {
            let d = dim as f64;
            let x = (1..=dim).map(|i| (i * (dim + 1 - i)) as f64).collect();
            Some((x, -d * (d + 4.0) * (d - 1.0) / 6.0))
        }
        "michalewicz" if dim == 2 => Some((vec![2.202_905_5, PI / 2.0], -1.801_303_410_098_553_8)),
        _ => None,
    }
}

fn mean(iter: impl Iterator<Item = f64>, n: usize) -> f64 {
    iter.sum::<f64>() / n as f64
}

/// Ackley as tabulated: `-20 exp(-0.02 sqrt(mean x^2)) - exp(mean cos 2 pi x) + 20`.
pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len();
    let sq = mean(x.iter().map(|v| v * v), n);
    let cs = mean(x.iter().map(|v| (2.0 * PI * v).cos()), n);
    -20.0 * (-0.02 * sq.sqrt()).exp() - cs.exp() + 20.0
}

/// Textbook Ackley with `0.2` and the `+e` term.
pub fn ackley_canonical(x: &[f64]) -> f64 {
    let n = x.len();
    let sq = mean(x.iter().map(|v| v * v), n);
    let cs = mean(x.iter().map(|v| (2.0 * PI * v).cos()), n);
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64 + x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos()).sum::<f64>()
}

pub fn zakharov(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let lin: f64 = 0.5 * x.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v).sum::<f64>();
    sq + lin.powi(2) + lin.powi(4)
}

pub fn booth(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2)
}

pub fn dejong(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn beale(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (1.5 - a + a * b).powi(2) + (2.25 - a + a * b * b).powi(2) + (2.625 - a + a * b.powi(3)).powi(2)
}

pub fn powell(x: &[f64]) -> f64 {
    x.chunks_exact(4)
        .map(|g| {
            (g[0] + 10.0 * g[1]).powi(2)
                + 5.0 * (g[2] + g[3]).powi(2)
                + (g[1] + g[2]).powi(4)
                + 10.0 * (g[0] + g[3]).powi(4)
        })
        .sum()
}

pub fn michalewicz(x: &[f64]) -> f64 {
    const M: i32 = 10;
    -x.iter()
        .enumerate()
        .map(|(i, v)| v.sin() * ((i + 1) as f64 * v * v / PI).sin().powi(2 * M))
        .sum::<f64>()
}

pub fn trid(x: &[f64]) -> f64 {
    let a: f64 = x.iter().map(|v| (v - 1.0).powi(2)).sum();
    let b: f64 = x.windows(2).map(|w| w[0] * w[1]).sum();
    a - b
}

pub fn levy(x: &[f64]) -> f64 {
    let w: Vec<f64> = x.iter().map(|v| 1.0 + (v - 1.0) / 4.0).collect();
    let last = w[w.len() - 1];
    let body: f64 = w[..w.len() - 1]
        .iter()
        .map(|wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2)))
        .sum();
    (PI * w[0]).sin().powi(2) + body + (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2))
}
