use proptest::prelude::*;
use shs_core::benchmarks::{
    find_benchmark, list_benchmarks, make_benchmark, make_benchmark_with, BenchmarkOptions, DimensionRule,
};
use shs_core::{RandomSource, RngStream};

fn dims(rule: DimensionRule) -> Vec<usize> {
    match rule {
        DimensionRule::Fixed2D => vec![2],
        DimensionRule::MultipleOf4 => vec![4, 8, 20],
        DimensionRule::Scalable => vec![2, 5, 20],
    }
}

#[test]
fn stated_minimizers_reach_stated_minima() {
    for entry in list_benchmarks() {
        for dim in dims(entry.dimension_rule) {
            let spec = make_benchmark(entry.name, dim, None).unwrap();
            let Some(opt) = spec.known_optimum() else {
                assert_eq!(entry.name, "michalewicz");
                continue;
            };
            let tol = if entry.name == "michalewicz" { 1e-3 } else { 1e-9 };
            let got = spec.eval(&opt.position);
            assert!(
                (got - opt.cost).abs() <= tol,
                "{} d={dim}: {got} vs {}",
                entry.name,
                opt.cost
            );
        }
    }
}

/// No uniform sample beats the stated minimum, and neither does a small
/// perturbation of the minimizer.
#[test]
fn stated_minima_are_not_beaten_nearby_or_at_random() {
    let mut rng = RngStream::new(77);
    for entry in list_benchmarks() {
        let dim = dims(entry.dimension_rule)[0];
        let spec = make_benchmark(entry.name, dim, None).unwrap();
        let Some(opt) = spec.known_optimum() else { continue };
        let slack = if entry.name == "michalewicz" { 1e-3 } else { 1e-12 };
        for _ in 0..2000 {
            let x: Vec<f64> = (0..dim)
                .map(|d| rng.uniform(spec.lower()[d], spec.upper()[d]))
                .collect();
            assert!(spec.eval(&x) >= opt.cost - slack, "{} at {x:?}", entry.name);
            let near: Vec<f64> = opt.position.iter().map(|v| v + 1e-3 * rng.symmetric()).collect();
            assert!(spec.eval(&near) >= opt.cost - slack, "{} near {near:?}", entry.name);
        }
    }
}

#[test]
fn trid_closed_form_over_dimensions() {
    for d in 2..=30usize {
        let x: Vec<f64> = (1..=d).map(|i| (i * (d + 1 - i)) as f64).collect();
        let df = d as f64;
        let expected = -df * (df + 4.0) * (df - 1.0) / 6.0;
        let got = find_benchmark("trid").unwrap().eval(&x);
        assert!(
            (got - expected).abs() <= 1e-9 * expected.abs(),
            "d={d}: {got} vs {expected}"
        );
    }
}

#[test]
fn ackley_variants_differ_by_e() {
    let shifted = make_benchmark("ackley", 20, None).unwrap();
    let canonical = make_benchmark_with(
        "ackley",
        20,
        &BenchmarkOptions {
            canonical_ackley: true,
            ..Default::default()
        },
    )
    .unwrap();
    let zero = vec![0.0; 20];
    assert!((shifted.eval(&zero) + std::f64::consts::E).abs() < 1e-9);
    assert!(canonical.eval(&zero).abs() < 1e-12);
    assert_eq!(canonical.known_optimum().unwrap().cost, 0.0);
}

#[test]
fn dimension_rules_enforced() {
    assert!(make_benchmark("booth", 3, None).is_err());
    assert!(make_benchmark("powell", 6, None).is_err());
    assert!(make_benchmark("powell", 12, None).is_ok());
    let err = make_benchmark("griewank", 4, None).unwrap_err().to_string();
    assert!(err.contains("griewank") && err.contains("levy"), "{err}");
}

/// Draws a point of the named function's own domain from unit coordinates.
fn domain_point(name: &str, dim: usize, unit: &[f64]) -> Vec<f64> {
    let (lo, hi) = find_benchmark(name).unwrap().default_domain;
    unit[..dim].iter().map(|u| lo + u * (hi - lo)).collect()
}

proptest! {
    #[test]
    fn sums_of_squares_never_go_negative(unit in prop::collection::vec(0.0f64..=1.0, 8)) {
        let canonical = BenchmarkOptions { canonical_ackley: true, ..Default::default() };
        for (name, dim) in [
            ("ackley", 8), ("rastrigin", 8), ("zakharov", 8), ("booth", 2),
            ("dejong", 8), ("beale", 2), ("powell", 8), ("levy", 8),
        ] {
            let spec = make_benchmark_with(name, dim, &canonical).unwrap();
            let x = domain_point(name, dim, &unit);
            // The shifted default Ackley bottoms out at -e; the textbook form is checked.
            prop_assert!(spec.eval(&x) >= 0.0, "{} = {} at {:?}", name, spec.eval(&x), x);
        }
    }

    #[test]
    fn even_functions_ignore_sign(unit in prop::collection::vec(0.0f64..=1.0, 8)) {
        for name in ["dejong", "rastrigin"] {
            let spec = make_benchmark(name, 8, None).unwrap();
            let x = domain_point(name, 8, &unit);
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            prop_assert_eq!(spec.eval(&x).to_bits(), spec.eval(&neg).to_bits());
        }
    }
}

#[test]
fn default_ackley_dips_below_zero() {
    let spec = make_benchmark("ackley", 8, None).unwrap();
    assert!(spec.eval(&[0.0; 8]) < 0.0);
}
