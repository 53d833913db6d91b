use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use omtrace::{
    ext_automaton, i_suffix_extension, is_limit_stable, trace_closure, ClosureOptions, Polarity,
};
use omtrace_bench::{curated, i_diamond_dfa, SIZES};

fn limit_stability(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_limit_stable");
    for n in SIZES {
        let d = i_diamond_dfa(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| is_limit_stable(black_box(d)))
        });
    }
    group.finish();
}

fn minimization(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    for n in SIZES {
        let d = i_diamond_dfa(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| black_box(d).minimize())
        });
    }
    group.finish();
}

fn closures(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for (name, k) in curated() {
        group.bench_with_input(BenchmarkId::new("trace_closure", name), &k, |b, k| {
            b.iter(|| trace_closure(black_box(k), ClosureOptions::default()))
        });
        group.bench_with_input(BenchmarkId::new("i_suffix_extension", name), &k, |b, k| {
            b.iter(|| i_suffix_extension(black_box(k), ClosureOptions::default()))
        });
        let ki = i_suffix_extension(&k, ClosureOptions::default()).unwrap();
        group.bench_with_input(BenchmarkId::new("ext_minimized", name), &ki, |b, ki| {
            b.iter(|| ext_automaton(black_box(ki), Polarity::Positive).minimize_weak())
        });
    }
    group.finish();
}

criterion_group!(benches, limit_stability, minimization, closures);
criterion_main!(benches);
