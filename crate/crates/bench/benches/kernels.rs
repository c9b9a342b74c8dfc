//! Hot-path benchmarks: quaternionic matrix products, pencil membership,
//! jet-frame construction, curvature grids, and radius estimation.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use qcd_bench::{dense_matrix, twin_operator, twin_section, N};
use qcd_core::bundles::{frame_from_right_inverse, FrameOptions};
use qcd_core::canonical::curvature_grid;
use qcd_core::shifts::{rsp, WeightRule};
use qcd_core::spectra::s_point_membership;
use qcd_core::Quaternion;

fn quaternion_matmul(c: &mut Criterion) {
    let a = dense_matrix(N);
    let b = dense_matrix(N);
    c.bench_function("quaternion_matmul_64", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
}

fn pencil_membership(c: &mut Criterion) {
    let t = twin_operator();
    let s = Quaternion::new(0.1, 0.9, 0.0, 0.0);
    c.bench_function("pencil_membership_64", |bench| {
        bench.iter(|| s_point_membership(black_box(&t), s, 1e-8).unwrap())
    });
}

fn frame_construction(c: &mut Criterion) {
    let t = twin_operator();
    let opts = FrameOptions::default();
    c.bench_function("jet_frame_order8_64", |bench| {
        bench.iter(|| frame_from_right_inverse(black_box(&t), Quaternion::I, 8, &opts).unwrap())
    });
}

fn curvature_sweep(c: &mut Criterion) {
    let section = twin_section();
    let center = Complex64::new(0.0, 1.0);
    c.bench_function("curvature_grid_21x21", |bench| {
        bench.iter(|| curvature_grid(black_box(&section), center, 0.5, 21, 0.5, 2e-4))
    });
}

fn radius_estimate(c: &mut Criterion) {
    let rule = WeightRule::Ratio;
    c.bench_function("radius_estimate_1e4", |bench| {
        bench.iter(|| rsp(black_box(&rule), 10_000).unwrap())
    });
}

criterion_group!(
    kernels,
    quaternion_matmul,
    pencil_membership,
    frame_construction,
    curvature_sweep,
    radius_estimate
);
criterion_main!(kernels);
