use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rexact::axioms::check_all;
use rexact::derived::derived_hom_table;
use rexact::fixtures::{a3, a3_restricted_class};
use rexact::probe::{ProbeSet, ProbeSpec};
use rexact::Exec;

fn derived_tables(c: &mut Criterion) {
    let f = a3();
    let class = a3_restricted_class(&f);
    let objs: Vec<_> = f.named.iter().map(|(_, x)| x.clone()).collect();
    let shifts: Vec<i32> = (-2..=2).collect();
    let mut group = c.benchmark_group("derived_hom_table");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| derived_hom_table(&class, black_box(&objs), &shifts, exec).unwrap())
        });
    }
    group.finish();
}

fn axiom_checks(c: &mut Criterion) {
    let f = a3();
    let class = a3_restricted_class(&f);
    let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
    let mut group = c.benchmark_group("check_all");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| check_all(&class, black_box(&probes), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, derived_tables, axiom_checks);
criterion_main!(benches);
