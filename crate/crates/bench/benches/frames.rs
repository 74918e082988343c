use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use s5frames::catalog;
use s5frames::structure::{sweep, PointSample};
use s5frames::{FramePoint, Grid};

const H: f64 = 1e-3;

fn frame_point(c: &mut Criterion) {
    let mut group = c.benchmark_group("frame_point");
    for chart in [catalog::legendrian_clifford(), catalog::tilted_sphere()] {
        let jet = chart.evaluate_jet(0.3, 0.2, H).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&chart.name), &jet, |b, jet| {
            b.iter(|| FramePoint::build(black_box(jet)).unwrap())
        });
    }
    group.finish();
}

fn point_sample(c: &mut Criterion) {
    let chart = catalog::tilted_sphere();
    c.bench_function("point_sample/tilted-s2", |b| {
        b.iter(|| PointSample::compute(&chart, black_box(0.3), black_box(0.2), H).unwrap())
    });
}

fn grid_sweep(c: &mut Criterion) {
    let chart = catalog::legendrian_clifford();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for n in [16, 32] {
        let grid = Grid::new(chart.domain, n, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &grid, |b, grid| {
            b.iter(|| sweep(grid, |u, v| PointSample::compute(&chart, u, v, H).is_ok()))
        });
    }
    group.finish();
}

criterion_group!(benches, frame_point, point_sample, grid_sweep);
criterion_main!(benches);
