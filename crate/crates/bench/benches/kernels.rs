use casimir_core::asymptotics::{large_r_expansion, small_r_expansion, Order, RSquareFamily, SplitPart, StressFamily};
use casimir_core::energy::bulk_energy_quadrature;
use casimir_core::specfun::{g_log_gamma, lower_gamma};
use casimir_core::stress::stress_component;
use casimir_core::{ComponentTag, HarmonicConfig};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn specfun(c: &mut Criterion) {
    c.bench_function("lower_gamma(3.5, 7)", |b| b.iter(|| lower_gamma(black_box(3.5), black_box(7.0))));
    c.bench_function("g_log_gamma(2.5, 4)", |b| b.iter(|| g_log_gamma(black_box(2.5), black_box(4.0))));
}

fn energy(c: &mut Criterion) {
    c.bench_function("bulk energy d=3", |b| b.iter(|| bulk_energy_quadrature(black_box(3), 4, 1e-12)));
}

fn stress(c: &mut Criterion) {
    let cfg = HarmonicConfig::conformal(3).unwrap();
    for r in [0.5, 5.0] {
        c.bench_function(&format!("stress d=3 tt r={r}"), |b| {
            b.iter(|| stress_component(&cfg, ComponentTag::Tt, black_box(r), 1e-12))
        });
    }
}

fn expansions(c: &mut Criterion) {
    let fam = StressFamily::new(3, ComponentTag::Rr, SplitPart::Square, Order::T0).unwrap();
    c.bench_function("small-r d=3 rr square", |b| b.iter(|| small_r_expansion(&fam, fam.len() - 1, 1e-11)));
    c.bench_function("large-r d=3 rr square", |b| b.iter(|| large_r_expansion(&fam, 4, 0.5, 1e-10)));
}

criterion_group!(benches, specfun, energy, stress, expansions);
criterion_main!(benches);
