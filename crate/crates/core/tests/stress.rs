use casimir_core::continuation::{minimal_parts, Pipeline};
use casimir_core::kernels::{heat_trace, mehler_kernel_1d};
use casimir_core::quadrature::integrate_interval_vec;
use casimir_core::stress::*;
use casimir_core::{critical_coupling, ComponentTag, Error, HarmonicConfig};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn component(d: u32) -> impl Strategy<Value = ComponentTag> {
    prop::sample::select(ComponentTag::for_dimension(d).to_vec())
}

#[test]
fn unsupported_dimensions_are_rejected() {
    assert!(HarmonicConfig::unit(4, 0.0).is_err() || {
        let cfg = HarmonicConfig::unit(4, 0.0).unwrap();
        matches!(stress_component(&cfg, ComponentTag::Tt, 1.0, TOL), Err(Error::UnsupportedDimension(4)))
    });
    let cfg = HarmonicConfig::unit(1, 0.0).unwrap();
    assert!(stress_component(&cfg, ComponentTag::Tt, -0.5, TOL).is_err());
    assert!(stress_component(&cfg, ComponentTag::Tt, f64::NAN, TOL).is_err());
}

#[test]
fn conformal_coupling_values() {
    assert_eq!(critical_coupling(1), 0.0);
    assert_eq!(critical_coupling(2), 0.125);
    assert_eq!(critical_coupling(3), 1.0 / 6.0);
}

#[test]
fn mehler_kernel_laws() {
    for tau in [0.2, 1.1, 3.0] {
        let tr = integrate_interval_vec(
            |x: f64, o: &mut [f64]| o[0] = mehler_kernel_1d(tau, x, x, 1.0).unwrap(),
            1,
            -40.0,
            40.0,
            1e-14,
        )
        .unwrap()
        .values[0];
        assert!((tr - heat_trace(tau, 1).unwrap()).abs() < 1e-10);
        for d in 2..=3 {
            let kd = heat_trace(tau, d).unwrap();
            assert!((kd / tr.powi(d as i32) - 1.0).abs() < 1e-12);
        }
    }
    assert!(mehler_kernel_1d(0.0, 0.0, 0.0, 1.0).is_err());
}

#[test]
fn split_parts_combine_to_the_component() {
    for d in 1..=3 {
        let cfg = HarmonicConfig::unit(d, 0.0).unwrap();
        for &comp in ComponentTag::for_dimension(d) {
            let s = conformal_split(&cfg, comp, 1.4, TOL).unwrap();
            let direct = stress_component(&cfg.with_xi(0.31), comp, 1.4, TOL).unwrap();
            let rec = s.reconstruct(0.31);
            assert!((rec.t0 - direct.t0).abs() < 1e-9, "d={d} {}", comp.name());
            assert!((rec.t1 - direct.t1).abs() < 1e-9, "d={d} {}", comp.name());
        }
    }
}

#[test]
fn grids_preserve_order() {
    let cfg = HarmonicConfig::conformal(3).unwrap();
    let r = [2.0, 0.1, 1.0];
    let g = split_grid(&cfg, ComponentTag::Rr, &r, TOL).unwrap();
    for (s, &ri) in g.iter().zip(&r) {
        assert_eq!(s.diamond.r, ri);
        assert_eq!(*s, conformal_split(&cfg, ComponentTag::Rr, ri, TOL).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn xi_affinity(d in 1u32..=3, c in 0usize..3, r in 0.0f64..4.0, a in -0.5f64..0.5, b in -0.5f64..0.5) {
        let comps = ComponentTag::for_dimension(d);
        let comp = comps[c % comps.len()];
        let base = HarmonicConfig::unit(d, 0.0).unwrap();
        let xs = [a, 0.5 * (a + b), b];
        let v: Vec<_> = xs.iter().map(|&x| stress_component(&base.with_xi(x), comp, r, TOL).unwrap()).collect();
        let mid = 0.5 * (v[0].vev + v[2].vev);
        prop_assert!((v[1].vev - mid).abs() < 1e-9 * v[1].vev.abs().max(1.0));
    }

    #[test]
    fn kappa_law(d in 1u32..=3, r in 0.0f64..3.0, k1 in 0.2f64..5.0, k2 in 0.2f64..5.0) {
        let comp = ComponentTag::Tt;
        let v1 = stress_component(&HarmonicConfig::new(d, 1.3, k1, 0.1).unwrap(), comp, r, TOL).unwrap();
        let v2 = stress_component(&HarmonicConfig::new(d, 1.3, k2, 0.1).unwrap(), comp, r, TOL).unwrap();
        let want = 2.0 * 1.3f64.powi(d as i32 + 1) * v1.t1 * (k2 / k1).ln();
        prop_assert!((v2.vev - v1.vev - want).abs() < 1e-10 * v1.vev.abs().max(1.0));
        if d == 2 {
            prop_assert_eq!(v1.t1, 0.0);
            prop_assert_eq!(v1.vev, v2.vev);
        }
    }

    #[test]
    fn k_scaling(d in 1u32..=3, r in 0.0f64..3.0, k in 0.3f64..4.0, ratio in 0.3f64..3.0) {
        let comp = ComponentTag::Rr;
        let a = stress_component(&HarmonicConfig::new(d, 1.0, ratio, 0.2).unwrap(), comp, r, TOL).unwrap();
        let b = stress_component(&HarmonicConfig::new(d, k, k * ratio, 0.2).unwrap(), comp, r, TOL).unwrap();
        prop_assert_eq!(a.t0, b.t0);
        prop_assert_eq!(a.t1, b.t1);
        let s = k.powi(d as i32 + 1);
        prop_assert!((b.vev - s * a.vev).abs() <= 1e-14 * (s * a.vev).abs());
    }

    #[test]
    fn extra_integration_by_parts_changes_nothing(d in 1u32..=3, comp_i in 0usize..3, r in 0.0f64..3.0, xi in -0.3f64..0.5) {
        let comps = ComponentTag::for_dimension(d);
        let comp = comps[comp_i % comps.len()];
        let cfg = HarmonicConfig::unit(d, xi).unwrap();
        let n = minimal_parts(d);
        let a = stress_with(&cfg, comp, r, TOL, n, Pipeline::ClosedForm).unwrap();
        let b = stress_with(&cfg, comp, r, TOL, n + 1, Pipeline::Generic).unwrap();
        prop_assert!((a.vev - b.vev).abs() < 1e-8, "{} vs {}", a.vev, b.vev);
    }

    #[test]
    fn pipelines_agree(d in 1u32..=3, comp in component(1), r in 0.0f64..3.0, xi in -0.3f64..0.5) {
        let comp = if d == 1 { comp } else { ComponentTag::Theta1Theta1Reduced };
        let cfg = HarmonicConfig::unit(d, xi).unwrap();
        let n = minimal_parts(d);
        let a = stress_with(&cfg, comp, r, TOL, n, Pipeline::ClosedForm).unwrap();
        let b = stress_with(&cfg, comp, r, TOL, n, Pipeline::Generic).unwrap();
        prop_assert!((a.t0 - b.t0).abs() < 1e-10);
        prop_assert!((a.t1 - b.t1).abs() < 1e-10);
    }
}
