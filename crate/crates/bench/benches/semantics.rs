use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dlp_engine::{models, EvalOptions, SemanticsId};
use dlp_engine_bench::even_loops;

// Candidate count is 3^(2n) for the extended semantics and 2^(2n) for RD/WS.
fn enumeration_growth(c: &mut Criterion) {
    let mut group = c.benchmark_group("even_loops");
    group.sample_size(10);
    for n in 1..=4 {
        let dlp = even_loops(n);
        for semantics in [SemanticsId::Rd, SemanticsId::Ws, SemanticsId::Erd, SemanticsId::Ews] {
            group.bench_with_input(BenchmarkId::new(semantics.name(), n), &dlp, |b, dlp| {
                b.iter(|| models(dlp, semantics, &EvalOptions::default()).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, enumeration_growth);
criterion_main!(benches);
