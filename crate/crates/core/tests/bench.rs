use std::time::Duration;

use inckpp::bench::{
    self, AlgorithmId, AlgorithmSpec, BenchSpec, Budget, BudgetRef, CompareOptions, Instance,
};
use inckpp::io::{generate, GeneratorSpec};
use inckpp::MetricKind;

fn instance() -> Instance {
    let ds = generate(&GeneratorSpec::parse("0,0:1:400;8,0:1:60;0,8:1:40", 21).unwrap());
    Instance::new("three", ds, MetricKind::Euclidean).unwrap()
}

fn spec(id: AlgorithmId) -> BenchSpec {
    BenchSpec::new("three", 3, AlgorithmSpec::new(id), 17)
}

#[test]
fn cheap_algorithms_get_more_runs_from_the_same_budget() {
    let inst = instance();
    let budget = Duration::from_millis(60);
    let full = bench::run_budgeted(&inst, &spec(AlgorithmId::Inckpp), budget).unwrap();
    let sampled = bench::run_budgeted(&inst, &spec(AlgorithmId::InckppSample), budget).unwrap();
    assert!(sampled.repeats > full.repeats, "{} vs {}", sampled.repeats, full.repeats);
}

#[test]
fn fixed_schedules_replay_exactly() {
    let inst = instance();
    let s = spec(AlgorithmId::KppSample);
    let a = bench::run_schedule(&inst, &s, 3, Budget::Repeats(6)).unwrap();
    let b = bench::run_schedule(&inst, &s, 3, Budget::Repeats(6)).unwrap();
    assert_eq!(a.min_se.to_bits(), b.min_se.to_bits());
    assert_eq!(a.aver_se.to_bits(), b.aver_se.to_bits());
    assert_eq!(a.repeats, 6.0);
}

#[test]
fn inckm_reference_reports_its_lambda() {
    let inst = instance();
    let specs = [spec(AlgorithmId::Inckm), spec(AlgorithmId::Fkm)];
    let opts = CompareOptions::new(BudgetRef::Inckm { lambda: None });
    let report = bench::compare(&inst, &specs, &opts).unwrap();
    assert_eq!(report.rows.len(), 2);
    let inckm = &report.rows[0].criteria;
    let lambda = inckm.lambda.expect("INCKM row carries its stretch factor");
    assert!((1.5..=2.5).contains(&lambda));
    assert_eq!(inckm.min_se, inckm.aver_se);
    for row in &report.rows {
        assert!(row.criteria.repeats >= 1.0);
        assert!(row.criteria.min_se <= row.criteria.aver_se);
    }
}

#[test]
fn replications_average_their_minima() {
    let inst = instance();
    let s = spec(AlgorithmId::Fkm).replications(3);
    let mut opts = CompareOptions::new(BudgetRef::InckppSample { runs: 2, percent: 10.0 });
    opts.fixed_repeats = Some(4);
    let report = bench::compare(&inst, std::slice::from_ref(&s), &opts).unwrap();
    let minima: Vec<f64> = (0..3)
        .map(|r| {
            let root = bench::replication_root(s.root_seed, r);
            bench::run_schedule(&inst, &s, root, Budget::Repeats(4)).unwrap().min_se
        })
        .collect();
    let mean = minima.iter().sum::<f64>() / 3.0;
    assert!((report.rows[0].criteria.min_se - mean).abs() <= 1e-12 * mean);
}
