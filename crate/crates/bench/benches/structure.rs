use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use charfib_bench::fixture;
use charfib_core::{constants_bruteforce, constants_cyclotomic, constants_direct, verify_algebra};

fn methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("constants");
    group.sample_size(10);
    for (p, m, n) in [
        (3u64, 2u32, 4usize),
        (2, 4, 3),
        (3, 5, 22),
        (2, 8, 17),
        (17, 2, 12),
    ] {
        let part = fixture(p, m, n).unwrap();
        let label = format!("p{p}m{m}n{n}");
        group.bench_with_input(BenchmarkId::new("direct", &label), &part, |b, part| {
            b.iter(|| constants_direct(black_box(part)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("cyclotomic", &label), &part, |b, part| {
            b.iter(|| constants_cyclotomic(black_box(part)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("bruteforce", &label), &part, |b, part| {
            b.iter(|| constants_bruteforce(black_box(part)).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let table = constants_bruteforce(&fixture(2, 8, 51).unwrap()).unwrap();
    c.bench_function("verify_algebra/p2m8n51", |b| {
        b.iter(|| verify_algebra(black_box(&table)))
    });
}

criterion_group!(benches, methods, verification);
criterion_main!(benches);
