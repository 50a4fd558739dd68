use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pcompact::splitting::{splitting_report, verify_framing_obstruction, PsiAlgebra};

fn idempotents(c: &mut Criterion) {
    let mut group = c.benchmark_group("idempotent e_0");
    for p in [13u64, 37, 101] {
        let alg = PsiAlgebra::new(p, 8, 3 * (p as usize - 1)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(p), &alg, |b, alg| {
            b.iter(|| alg.idempotent_e(black_box(0)).unwrap())
        });
    }
    group.finish();
}

fn framing(c: &mut Criterion) {
    let alg = PsiAlgebra::new(61, 8, 180).unwrap();
    c.bench_function("framing obstruction p=61 l=5", |b| {
        b.iter(|| verify_framing_obstruction(black_box(&alg), 5).unwrap())
    });
    c.bench_function("splitting report p=13 l=3", |b| b.iter(|| splitting_report(13, 3, 36, 8).unwrap()));
}

criterion_group!(benches, idempotents, framing);
criterion_main!(benches);
