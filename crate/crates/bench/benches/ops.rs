use criterion::{criterion_group, criterion_main, Criterion};
use shearlab_core::field::{ProfileFunction, ShearFlow};
use shearlab_core::kh::spectrum_samples;
use shearlab_core::norms::{holder_exponent, trace_x2};
use shearlab_core::sheet::{average_velocity_on_sheet, SheetCurve2D, SheetDensity, SheetShape};
use shearlab_core::spectral::{hilbert_transform, pv_expansion_term, SpectralField};
use shearlab_core::weak_form::{generate_test_basis, weak_residual_basis, QuadratureSpec};
use std::hint::black_box;

fn bench_hilbert(c: &mut Criterion) {
    let f = SpectralField::from_fn(4096, |x| {
        (2.0 * std::f64::consts::PI * x).sin() + 0.3 * (10.0 * std::f64::consts::PI * x).cos()
    })
    .unwrap();
    c.bench_function("hilbert-transform-4096", |b| {
        b.iter(|| black_box(hilbert_transform(black_box(&f))))
    });
}

fn bench_pv_expansion(c: &mut Criterion) {
    let f = SpectralField::from_fn(256, |x| (2.0 * std::f64::consts::PI * x).sin()).unwrap();
    c.bench_function("pv-expansion-order1-256", |b| {
        b.iter(|| black_box(pv_expansion_term(black_box(&f), black_box(&f), 1).unwrap()))
    });
}

fn bench_weak_residual(c: &mut Criterion) {
    let flow = ShearFlow::new(
        ProfileFunction::Step {
            below: 1.0,
            above: 0.0,
            jump: 0.5,
        },
        ProfileFunction::Step {
            below: 1.0,
            above: 0.0,
            jump: 0.5,
        },
    );
    let phis = generate_test_basis(3, 5, 42);
    let quad = QuadratureSpec::new(128, 8, 1.0).unwrap();
    let mut group = c.benchmark_group("weak-form");
    group.sample_size(10);
    group.bench_function("residual-basis5-n128", |b| {
        b.iter(|| black_box(weak_residual_basis(black_box(&flow), &phis, &quad)))
    });
    group.finish();
}

fn bench_sheet_velocity(c: &mut Criterion) {
    let sheet = SheetCurve2D::new(256, SheetShape::Flat, SheetDensity::Uniform(1.0)).unwrap();
    c.bench_function("sheet-averaged-velocity-256", |b| {
        b.iter(|| black_box(average_velocity_on_sheet(black_box(&sheet), 0.25)))
    });
}

fn bench_holder(c: &mut Criterion) {
    let flow = ShearFlow::new(
        ProfileFunction::Cusp { alpha: 0.5 },
        ProfileFunction::Cusp { alpha: 0.5 },
    );
    let mut group = c.benchmark_group("holder");
    group.sample_size(10);
    group.bench_function("trace-exponent-2pow14", |b| {
        b.iter(|| {
            let trace = trace_x2(&flow, 1.0, 0.0, 0.125, 1 << 14);
            black_box(holder_exponent(&trace, 4.0 * trace.spacing(), 2f64.powi(-6)).unwrap())
        })
    });
    group.finish();
}

fn bench_kh3d(c: &mut Criterion) {
    c.bench_function("kh3d-spectra-100", |b| {
        b.iter(|| black_box(spectrum_samples(100, 42)))
    });
}

criterion_group!(
    benches,
    bench_hilbert,
    bench_pv_expansion,
    bench_weak_residual,
    bench_sheet_velocity,
    bench_holder,
    bench_kh3d
);
criterion_main!(benches);
