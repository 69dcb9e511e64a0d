use criterion::{criterion_group, criterion_main, Criterion};
use generacci::{exact_mean, gap_count_formula, pnk_closed, pnk_recurrence};

fn pnk(c: &mut Criterion) {
    c.bench_function("pnk_closed_2000_667", |b| b.iter(|| pnk_closed(2000, 667)));
    c.bench_function("pnk_recurrence_400_133", |b| {
        b.iter(|| pnk_recurrence(400, 133))
    });
}

fn moments(c: &mut Criterion) {
    c.bench_function("exact_mean_2000", |b| b.iter(|| exact_mean(2000)));
}

fn gaps(c: &mut Criterion) {
    c.bench_function("gap_count_500_10", |b| {
        b.iter(|| gap_count_formula(500, 10))
    });
}

criterion_group!(benches, pnk, moments, gaps);
criterion_main!(benches);
