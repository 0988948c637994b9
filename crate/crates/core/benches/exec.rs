use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use epsilon_core::ansatz::eliminate_all_critical;
use epsilon_core::kernel::{check_proof_with, is_tautology_with};
use epsilon_core::verify::{check_verifiable_with, consistency_pipeline_with};
use epsilon_core::{parse_formula, parse_proof, Exec, Formula};
use epsilon_fixtures::ansatz_corpus;

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

/// `(P1 -> ... -> Pn -> Q) -> ... -> Q` style formula that forces every split.
fn wide_tautology(atoms: usize) -> Formula {
    let names: Vec<String> = (0..atoms).map(|i| format!("P{i}(0)")).collect();
    let all = names.join(" & ");
    let any = names.join(" | ");
    parse_formula(&format!("({all}) -> ({any})")).unwrap()
}

fn bench(c: &mut Criterion) {
    let fixture = ansatz_corpus()
        .into_iter()
        .find(|f| f.name == "ansatz-m0-k3")
        .unwrap();
    let source = parse_proof(&fixture.text).unwrap();
    let eliminated = eliminate_all_critical(&source).unwrap();
    let taut = wide_tautology(16);
    let axiom = parse_formula("a = d(a+1) & 0 != b+1 & (a = b | a != b)").unwrap();

    let mut group = c.benchmark_group("exec");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new("check_proof", name), |b| {
            b.iter(|| check_proof_with(black_box(&eliminated), exec))
        });
        group.bench_function(BenchmarkId::new("tautology", name), |b| {
            b.iter(|| is_tautology_with(black_box(&taut), exec))
        });
        group.bench_function(BenchmarkId::new("verifiable", name), |b| {
            b.iter(|| check_verifiable_with(black_box(&axiom), 60, exec))
        });
        group.bench_function(BenchmarkId::new("pipeline", name), |b| {
            b.iter(|| consistency_pipeline_with(black_box(&source), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
