use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use pointspec_bench::{harmonic_delta, harmonic_gaps, harmonic_section};
use pointspec_core::spectral::{counting_function, deficiency_probe, eig_bisect};
use pointspec_core::weyl::{triplet_boundedness_scan, Family, TripletKind};
use std::hint::black_box;

fn sturm(c: &mut Criterion) {
    let mut g = c.benchmark_group("sturm_count");
    for n in [100usize, 1_000, 10_000] {
        let t = harmonic_section(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| b.iter(|| counting_function(t, black_box(0.0))));
    }
    g.finish();
}

fn bisection(c: &mut Criterion) {
    let mut g = c.benchmark_group("eig_bisect");
    for n in [50usize, 200] {
        let t = harmonic_section(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| eig_bisect(t, f64::NEG_INFINITY, f64::INFINITY, None).unwrap())
        });
    }
    g.finish();
}

fn recurrence(c: &mut Criterion) {
    let j = harmonic_delta();
    c.bench_function("deficiency_probe_1e4", |b| b.iter(|| deficiency_probe(&j, Complex64::i(), black_box(10_000)).unwrap()));
}

fn weyl_scan(c: &mut Criterion) {
    let x = harmonic_gaps();
    c.bench_function("weyl_scan_delta_regularized_1e4", |b| {
        b.iter(|| triplet_boundedness_scan(&x, TripletKind::DeltaRegularized, Family::Delta, black_box(10_000)).unwrap())
    });
}

criterion_group!(kernels, sturm, bisection, recurrence, weyl_scan);
criterion_main!(kernels);
