use criterion::{black_box, criterion_group, criterion_main, Criterion};

use svir_core::algebra::jacobi_sweep;
use svir_core::repmod::{rep_residual, ModuleSpec};
use svir_core::scalar::gcd;
use svir_core::{AlgebraConfig, AlgebraElement, Family, HalfInt, ModuleBasisVector, ModuleVector, Scalar};

fn config() -> AlgebraConfig {
    AlgebraConfig::standard(2, vec![HalfInt::from_twice(1), HalfInt::ZERO]).unwrap()
}

fn bench_jacobi(c: &mut Criterion) {
    let cfg = config();
    c.bench_function("jacobi_sweep_radius_1", |b| {
        b.iter(|| jacobi_sweep(black_box(&cfg), HalfInt::from_int(1)))
    });
}

fn bench_gcd(c: &mut Criterion) {
    let cfg = config();
    let (d1, d2, a) = (cfg.d(0), cfg.d(1), cfg.symbols().scalar("a").unwrap());
    let common = &(&d1 + &d2) * &(&a - &Scalar::from_int(3));
    let p = (&common * &(&(&d1 * &d1) - &d2)).numerator().clone();
    let q = (&common * &(&(&a * &d2) + &Scalar::from_ratio(1, 2))).numerator().clone();
    c.bench_function("poly_gcd_shared_factor", |b| b.iter(|| gcd(black_box(&p), black_box(&q))));

    let x = (&d1 + &a).checked_div(&(&d2 - &Scalar::one())).unwrap();
    let y = (&d2 * &a).checked_div(&(&d1 + &d2)).unwrap();
    c.bench_function("scalar_add_fractions", |b| b.iter(|| black_box(&x) + black_box(&y)));
}

fn bench_rep(c: &mut Criterion) {
    let cfg = config();
    let spec = ModuleSpec::symbolic(&cfg, Family::SA).unwrap();
    let u = AlgebraElement::g(cfg.odd_twice(&[1, 2]).unwrap());
    let w = AlgebraElement::g(cfg.odd_twice(&[-3, 0]).unwrap());
    let v = ModuleVector::basis(ModuleBasisVector::x(cfg.even(&[1, -1]).unwrap()));
    c.bench_function("rep_residual_gg_on_x", |b| {
        b.iter(|| rep_residual(&cfg, &spec, black_box(&u), black_box(&w), black_box(&v)).unwrap())
    });
}

criterion_group!(benches, bench_jacobi, bench_gcd, bench_rep);
criterion_main!(benches);
