use approx::assert_relative_eq;
use casimir_core::specfun::*;
use casimir_core::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Dirichlet eta by Borwein's acceleration, then ζ = η / (1 − 2^{1−s}).
/// Independent of the Euler–Maclaurin route used by the library.
fn zeta_borwein(s: f64) -> f64 {
    let n = 40usize;
    let nf = n as f64;
    // d_k = Σ_{i≤k} n (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let (mut t, mut acc) = (1.0, 0.0);
    for i in 0..=n {
        acc += t;
        d.push(acc);
        let i_f = i as f64;
        t *= (nf + i_f) * (nf - i_f) * 4.0 / ((2.0 * i_f + 1.0) * (2.0 * i_f + 2.0));
    }
    let dn = d[n];
    let eta: f64 = (0..n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * (d[k] - dn) / ((k + 1) as f64).powf(s)
        })
        .sum();
    -eta / dn / (1.0 - 2f64.powf(1.0 - s))
}

/// ζ on s < 0 from the Borwein value at 1 − s and the functional equation.
fn zeta_negative_oracle(s: f64) -> f64 {
    let t = 1.0 - s;
    2f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma(t).unwrap() * zeta_borwein(t)
}

#[test]
fn borwein_oracle_is_sane() {
    assert_relative_eq!(zeta_borwein(2.0), PI * PI / 6.0, max_relative = 1e-14);
    assert_relative_eq!(zeta_borwein(4.0), PI.powi(4) / 90.0, max_relative = 1e-14);
}

#[test]
fn zeta_at_negative_half_integers_matches_oracle() {
    for s in [-0.5, -1.5, -2.5] {
        let z = riemann_zeta(s).unwrap();
        assert!((z - zeta_negative_oracle(s)).abs() < 1e-13, "s={s}");
    }
    assert!((riemann_zeta(-0.5).unwrap() + 0.2078862250).abs() < 1e-10);
}

#[test]
fn classical_values() {
    assert_relative_eq!(riemann_zeta(2.0).unwrap(), PI * PI / 6.0, max_relative = 1e-14);
    assert!((riemann_zeta(0.0).unwrap() + 0.5).abs() < 1e-15);
    assert_relative_eq!(gamma(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
    assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
    assert_relative_eq!(hurwitz_zeta(2.0, 1.0).unwrap(), PI * PI / 6.0, max_relative = 1e-13);
}

#[test]
fn error_cases() {
    assert!(matches!(riemann_zeta(1.0), Err(Error::Pole { .. })));
    assert!(matches!(hurwitz_zeta(1.0, 0.5), Err(Error::Pole { .. })));
    assert!(hurwitz_zeta(-0.5, 0.0).is_err());
    assert!(gamma(-2.0).is_err());
    assert!(lower_gamma(-1.0, 1.0).is_err());
}

#[test]
fn hurwitz_identities() {
    let s = -2.5;
    let lhs = hurwitz_zeta(s, 0.5).unwrap();
    assert_relative_eq!(lhs, (2f64.powf(s) - 1.0) * riemann_zeta(s).unwrap(), max_relative = 1e-10);
    let (s, a) = (-0.5, 1.5);
    let shifted = hurwitz_zeta(s, a + 1.0).unwrap();
    assert!((shifted - (hurwitz_zeta(s, a).unwrap() - a.powf(-s))).abs() < 1e-11);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(s in 0.05f64..15.0) {
        let r = gamma(s + 1.0).unwrap() / gamma(s).unwrap();
        prop_assert!((r / s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn digamma_recurrence(s in 0.05f64..30.0) {
        let d = digamma(s + 1.0).unwrap() - digamma(s).unwrap();
        prop_assert!((d - 1.0 / s).abs() < 1e-12 * (1.0 / s).max(1.0));
    }

    #[test]
    fn incomplete_gammas_sum_to_gamma(s in 0.05f64..20.0, z in 0.001f64..50.0) {
        let lo = lower_gamma(s, z).unwrap();
        let up = upper_gamma(s, z).unwrap();
        let g = gamma(s).unwrap();
        prop_assert!(((lo + up) / g - 1.0).abs() < 1e-12);
        prop_assert!(lo >= 0.0 && lo <= g * (1.0 + 1e-14));
        prop_assert!(up >= 0.0 && up <= g * (1.0 + 1e-14));
    }

    #[test]
    fn log_gamma_bound(s in 0.05f64..10.0, z in 0.001f64..40.0) {
        prop_assert!(g_log_gamma(s, z).unwrap() >= -1.0 / (s * s));
    }

    #[test]
    fn log_gamma_recurrence(s in 0.2f64..8.0, z in 0.05f64..20.0) {
        let lhs = g_log_gamma(s + 1.0, z).unwrap();
        let rhs = s * g_log_gamma(s, z).unwrap() + lower_gamma(s, z).unwrap()
            - (-z).exp() * z.powf(s) * z.ln();
        prop_assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn zeta_functional_equation(s in -6.0f64..-0.05) {
        let z = riemann_zeta(s).unwrap();
        let o = zeta_negative_oracle(s);
        prop_assert!((z - o).abs() < 1e-11 * o.abs().max(1e-3), "{} vs {}", z, o);
    }

    #[test]
    fn zeta_positive_matches_borwein(s in 1.1f64..12.0) {
        let z = riemann_zeta(s).unwrap();
        prop_assert!((z / zeta_borwein(s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sin_pi_is_exact_at_integers(n in -50i32..50) {
        prop_assert_eq!(sin_pi(n as f64), 0.0);
    }
}
