use std::hint::black_box;

use cmc_core::solver::{solve_disk, solve_radial, DiskGrid};
use cmc_core::{make_circle_domain, DiskPoint, RadialProblem};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn grid_build(c: &mut Criterion) {
    let domain = make_circle_domain(DiskPoint::ORIGIN, 1.0, DiskPoint::ORIGIN, 2.0).unwrap();
    let mut group = c.benchmark_group("grid_build");
    for spacing in [0.02, 0.01] {
        group.bench_with_input(BenchmarkId::from_parameter(spacing), &spacing, |b, &h| {
            b.iter(|| DiskGrid::build(black_box(&domain), h).unwrap())
        });
    }
    group.finish();
}

fn disk_solve(c: &mut Criterion) {
    let domain = make_circle_domain(DiskPoint::ORIGIN, 1.0, DiskPoint::ORIGIN, 2.0).unwrap();
    let mut group = c.benchmark_group("solve_disk");
    group.sample_size(10);
    for spacing in [0.04, 0.02] {
        group.bench_with_input(BenchmarkId::from_parameter(spacing), &spacing, |b, &h| {
            b.iter(|| solve_disk(black_box(&domain), 0.3, 0.2, h).unwrap())
        });
    }
    group.finish();
}

fn radial_solve(c: &mut Criterion) {
    let problem = RadialProblem {
        mean_curvature: 0.6,
        rho_in: 1.0,
        rho_out: 2.0,
        h: 0.1,
    };
    c.bench_function("solve_radial", |b| b.iter(|| solve_radial(black_box(&problem)).unwrap()));
}

criterion_group!(benches, grid_build, disk_solve, radial_solve);
criterion_main!(benches);
