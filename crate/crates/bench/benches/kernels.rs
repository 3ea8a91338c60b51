use criterion::{black_box, criterion_group, criterion_main, Criterion};
use quasicoulomb::heavy::{numerov_integrate, InnerBc, NumerovConfig};
use quasicoulomb::linalg::determinant;
use quasicoulomb::potential::{AsymptV, Clamped};
use quasicoulomb::truncated::{build_determinant_scaled, Sector};
use quasicoulomb::{bessel_k, solve_branch, Branch, BranchSign, ModelParams};

fn bench_bessel_k(c: &mut Criterion) {
    c.bench_function("bessel_k orders 0..4 across regimes", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for &x in &[1e-4, 0.5, 2.0, 10.0, 100.0] {
                for m in 0..4u32 {
                    acc += bessel_k(m, black_box(x)).unwrap();
                }
            }
            acc
        })
    });
}

fn bench_solve_branch(c: &mut Criterion) {
    let p = ModelParams::from_beta(10.0, 0.0, 1.0, 2.0, 0.0).unwrap();
    c.bench_function("solve_branch I+ at rho = 100", |b| {
        b.iter(|| solve_branch(Branch::I, BranchSign::Plus, black_box(100.0), &p, None).unwrap())
    });
}

fn bench_determinant(c: &mut Criterion) {
    let p = ModelParams::from_beta(10.0, 0.0, 1.0, 2.0, 0.0).unwrap();
    c.bench_function("sector determinant m_max = 3", |b| {
        b.iter(|| build_determinant_scaled(black_box(0.05), 100.0, &p, 3, Sector::Antisymmetric))
    });
    c.bench_function("dense 13x13 determinant", |b| {
        let m: Vec<f64> = (0..169)
            .map(|i| ((i * 37 % 101) as f64) / 101.0 + if i % 14 == 0 { 5.0 } else { 0.0 })
            .collect();
        b.iter(|| determinant(black_box(m.clone()), 13))
    });
}

fn bench_numerov(c: &mut Criterion) {
    let pot = Clamped {
        inner: AsymptV,
        cap: 1e3,
    };
    let cfg = NumerovConfig::new(0.5, 1e3, 20_000, InnerBc::HardWall).unwrap();
    c.bench_function("numerov 20k-point integration", |b| {
        b.iter(|| numerov_integrate(&pot, 10.0, black_box(-1e-4), &cfg).unwrap())
    });
}

criterion_group!(
    benches,
    bench_bessel_k,
    bench_solve_branch,
    bench_determinant,
    bench_numerov
);
criterion_main!(benches);
