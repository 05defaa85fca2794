use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use singular_eig_bench::{laplacian3, pucci125};
use singular_eig_core::{
    fd_principal_eigenvalue_with, pucci_dirichlet_solve_with, shoot_eigenvalue, variational_eigenvalue,
    AnnulusGrid, DirichletProblem, FdConfig, OperatorKind, PotentialSpec, RadialOperator, ShootConfig,
};

fn shoot(c: &mut Criterion) {
    let mut g = c.benchmark_group("shoot");
    let cfg = ShootConfig::default();
    for gamma in [0.5, 1.5, 1.99] {
        g.bench_with_input(BenchmarkId::new("pucci+", gamma), &gamma, |b, &gamma| {
            b.iter(|| shoot_eigenvalue(&pucci125(), black_box(gamma), OperatorKind::PucciPlus, &cfg).unwrap())
        });
    }
    g.bench_function("laplacian/1.0", |b| {
        b.iter(|| shoot_eigenvalue(&laplacian3(), black_box(1.0), OperatorKind::Laplacian, &cfg).unwrap())
    });
    g.finish();
}

fn variational(c: &mut Criterion) {
    let mut g = c.benchmark_group("variational");
    g.sample_size(20);
    for nodes in [512, 4096] {
        g.bench_with_input(BenchmarkId::new("gamma1.5", nodes), &nodes, |b, &n| {
            b.iter(|| variational_eigenvalue(&pucci125(), 1.5, black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn finite_difference(c: &mut Criterion) {
    let mut g = c.benchmark_group("fd");
    g.sample_size(10);
    let op = RadialOperator::pucci_plus(pucci125());
    let pot = PotentialSpec::new(1.5, 1e-6).unwrap();
    for nodes in [1024, 8192] {
        let grid = AnnulusGrid::ball(nodes, pot).unwrap();
        g.bench_with_input(BenchmarkId::new("eigen", nodes), &grid, |b, grid| {
            b.iter(|| fd_principal_eigenvalue_with(&op, grid, &FdConfig::default()).unwrap())
        });
    }
    let grid = AnnulusGrid::ball(4096, pot).unwrap();
    let problem = DirichletProblem::constant_rhs(-1.0, 1.0, 0.0, 0.0, op, pot).unwrap();
    g.bench_function("dirichlet/4096", |b| {
        b.iter(|| pucci_dirichlet_solve_with(&problem, &grid, &FdConfig::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, shoot, variational, finite_difference);
criterion_main!(benches);
