use casimir_core::asymptotics::*;
use casimir_core::jets::Jet;
use casimir_core::quadrature::integrate_interval_vec;
use casimir_core::specfun::{upper_gamma, EULER_GAMMA};
use casimir_core::stress::conformal_split;
use casimir_core::{ComponentTag, HarmonicConfig, Result};
use std::f64::consts::PI;

use ComponentTag::{Rr, Theta1Theta1Reduced as Th, Tt};
use SplitPart::{Diamond as Dia, Square as Sq};

/// ∫ e^{−τ} e^{−r² tanh τ} dτ: one r² power, α = 0.
struct Toy;

impl RSquareFamily for Toy {
    fn alpha(&self) -> f64 {
        0.0
    }
    fn len(&self) -> usize {
        1
    }
    fn values(&self, tau: f64, plain: &mut [f64], log: &mut [f64]) -> Result<()> {
        plain[0] = (-tau).exp();
        log[0] = 0.0;
        Ok(())
    }
    fn tau_jets(&self, tau: f64, m: usize) -> Result<(Vec<Jet>, Vec<Jet>)> {
        let t = Jet::variable(tau, m)?;
        Ok((vec![(-t).exp()], vec![Jet::constant(0.0, tau, m)?]))
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn toy_numeric(r: f64) -> f64 {
    simpson(|t| (-t - r * r * t.tanh()).exp(), 0.0, 60.0, 200_000)
}

#[test]
fn toy_small_r_coefficients() {
    let s = small_r_expansion(&Toy, 4, 1e-13).unwrap();
    let mut fact = 1.0;
    for i in 0..=4 {
        if i > 0 {
            fact *= i as f64;
        }
        let direct = simpson(|t| (-t).exp() * t.tanh().powi(i as i32), 0.0, 60.0, 200_000);
        let expected = if i % 2 == 0 { direct } else { -direct } / fact;
        assert!((s.rows[i].coefficient - expected).abs() < 1e-11, "a{i}");
        assert_eq!(s.rows[i].r_power, 2.0 * i as f64);
    }
    for r in [0.1, 0.4, 1.0] {
        let err = (toy_numeric(r) - s.evaluate(r)).abs();
        assert!(err <= s.remainder.bound(r) + 1e-12, "r={r}: {err} > {}", s.remainder.bound(r));
    }
}

#[test]
fn toy_large_r_rows() {
    // e^{−τ} dτ = (1 − v)^{−1/2} (1 + v)^{−3/2} dv = (1 − v + 3/2 v² − ...) dv
    let e = large_r_expansion(&Toy, 3, 0.5, 1e-12).unwrap();
    let expected = [(-2.0, 1.0), (-4.0, -1.0), (-6.0, 3.0)];
    for (p, c) in expected {
        assert!((e.limit.coefficient(p, false) - c).abs() < 1e-12, "r^{p}");
        assert!(e.limit.coefficient(p, true).abs() < 1e-14);
    }
    assert_eq!(e.limit.remainder.order, -8.0);
    for r in [2.0, 4.0, 8.0] {
        let err = (toy_numeric(r) - e.limit.evaluate(r)).abs();
        assert!(err <= e.limit.remainder.bound(r), "r={r}: {err} > {}", e.limit.remainder.bound(r));
    }
}

#[test]
fn artanhc_jet_at_zero() {
    let j = Jet::variable(0.0, 4).unwrap().artanhc().unwrap();
    let expected = [1.0, 0.0, 1.0 / 3.0, 0.0, 1.0 / 5.0];
    for (a, b) in j.coeffs().iter().zip(expected) {
        assert!((a - b).abs() < 1e-15);
    }
}

fn limit_series(d: u32, comp: ComponentTag, part: SplitPart, order: Order) -> SeriesExpansion {
    let f = StressFamily::new(d, comp, part, order).unwrap();
    large_r_expansion(&f, default_k(d), 0.5, 1e-10).unwrap().limit
}

/// Printed large-r coefficients above the stated remainder order.
fn check_rows(d: u32, comp: ComponentTag, part: SplitPart, order: Order, rows: &[(f64, bool, f64)]) {
    let s = limit_series(d, comp, part, order);
    for &(p, log, c) in rows {
        let got = s.coefficient(p, log);
        let scale = c.abs().max(1e-3);
        assert!(
            (got - c).abs() <= 1e-8 * scale,
            "d={d} {} {} r^{p} log={log}: {got} vs {c}",
            comp.name(),
            part.name()
        );
    }
}

#[test]
fn printed_large_r_rows_d1() {
    let p = PI;
    let g = EULER_GAMMA;
    check_rows(1, Tt, Dia, Order::T1, &[(2.0, false, 1.0 / (8.0 * p))]);
    check_rows(1, Tt, Sq, Order::T0, &[(-2.0, false, -1.0 / (2.0 * p)), (-6.0, false, -5.0 / (3.0 * p))]);
    check_rows(
        1,
        Rr,
        Dia,
        Order::T0,
        &[
            (2.0, true, 1.0 / (8.0 * p)),
            (2.0, false, (g - 1.0) / (8.0 * p)),
            (-2.0, false, 1.0 / (24.0 * p)),
            (-6.0, false, 7.0 / (120.0 * p)),
        ],
    );
    check_rows(1, Rr, Dia, Order::T1, &[(2.0, false, -1.0 / (8.0 * p))]);
    for row in &limit_series(1, Rr, Sq, Order::T0).rows {
        assert!(row.coefficient.abs() < 1e-8, "{row:?}");
    }
}

#[test]
fn printed_large_r_rows_d2() {
    let p = PI;
    check_rows(2, Tt, Sq, Order::T0, &[(-1.0, false, 1.0 / (4.0 * p)), (-5.0, false, 3.0 / (32.0 * p))]);
    check_rows(
        2,
        Rr,
        Dia,
        Order::T0,
        &[(3.0, false, 1.0 / (12.0 * p)), (-1.0, false, 1.0 / (48.0 * p)), (-5.0, false, -17.0 / (2560.0 * p))],
    );
    check_rows(2, Rr, Sq, Order::T0, &[(-1.0, false, -1.0 / (4.0 * p)), (-5.0, false, 1.0 / (32.0 * p))]);
    check_rows(
        2,
        Th,
        Dia,
        Order::T0,
        &[(3.0, false, 1.0 / (12.0 * p)), (-1.0, false, -1.0 / (96.0 * p)), (-5.0, false, 33.0 / (2560.0 * p))],
    );
    check_rows(2, Th, Sq, Order::T0, &[(-1.0, false, 0.0), (-5.0, false, -1.0 / (8.0 * p))]);
}

#[test]
fn printed_large_r_rows_d3() {
    let p2 = PI * PI;
    let g = EULER_GAMMA;
    check_rows(
        3,
        Tt,
        Dia,
        Order::T0,
        &[
            (4.0, true, 1.0 / (64.0 * p2)),
            (4.0, false, (g + 0.5) / (64.0 * p2)),
            (0.0, false, -5.0 / (96.0 * p2)),
            (-4.0, false, -23.0 / (2880.0 * p2)),
        ],
    );
    check_rows(3, Tt, Dia, Order::T1, &[(4.0, false, -1.0 / (64.0 * p2))]);
    check_rows(
        3,
        Tt,
        Sq,
        Order::T0,
        &[(0.0, true, -3.0 / (8.0 * p2)), (0.0, false, -3.0 * (g + 2.0 / 3.0) / (8.0 * p2)), (-4.0, false, 1.0 / (12.0 * p2))],
    );
    check_rows(3, Tt, Sq, Order::T1, &[(0.0, false, 3.0 / (8.0 * p2))]);
    check_rows(
        3,
        Rr,
        Dia,
        Order::T0,
        &[
            (4.0, true, -1.0 / (64.0 * p2)),
            (4.0, false, -(g - 1.5) / (64.0 * p2)),
            (0.0, false, 1.0 / (96.0 * p2)),
            (-4.0, false, -49.0 / (2880.0 * p2)),
        ],
    );
    check_rows(3, Rr, Dia, Order::T1, &[(4.0, false, 1.0 / (64.0 * p2))]);
    check_rows(3, Rr, Sq, Order::T1, &[(0.0, false, -1.0 / (4.0 * p2))]);
    check_rows(
        3,
        Th,
        Dia,
        Order::T0,
        &[
            (4.0, true, -1.0 / (64.0 * p2)),
            (4.0, false, -(g - 1.5) / (64.0 * p2)),
            (0.0, false, -1.0 / (96.0 * p2)),
            (-4.0, false, 31.0 / (2880.0 * p2)),
        ],
    );
    check_rows(3, Th, Dia, Order::T1, &[(4.0, false, 1.0 / (64.0 * p2))]);
    check_rows(
        3,
        Th,
        Sq,
        Order::T0,
        &[(0.0, true, 1.0 / (4.0 * p2)), (0.0, false, (g + 1.0) / (4.0 * p2)), (-4.0, false, -1.0 / (6.0 * p2))],
    );
    check_rows(3, Th, Sq, Order::T1, &[(0.0, false, -1.0 / (4.0 * p2))]);
}

#[test]
fn limit_form_is_independent_of_v0() {
    for (d, comp, part) in [(1, Tt, Dia), (2, Rr, Sq), (3, Th, Dia)] {
        let f = StressFamily::new(d, comp, part, Order::T0).unwrap();
        let a = large_r_expansion(&f, default_k(d), 0.3, 1e-10).unwrap().limit;
        let b = large_r_expansion(&f, default_k(d), 0.7, 1e-10).unwrap().limit;
        assert_eq!(a.rows.len(), b.rows.len());
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert_eq!((x.r_power, x.has_log), (y.r_power, y.has_log));
            assert!((x.coefficient - y.coefficient).abs() <= 1e-12 * x.coefficient.abs().max(1.0), "{x:?} {y:?}");
        }
    }
}

#[test]
fn even_dimension_has_no_log_rows() {
    for &comp in ComponentTag::for_dimension(2) {
        for part in [Dia, Sq] {
            for row in &limit_series(2, comp, part, Order::T0).rows {
                assert!(!row.has_log || row.coefficient == 0.0, "{row:?}");
            }
        }
    }
}

fn tails(e: &LargeRExpansion, r: f64) -> f64 {
    // limit − finite: q⁰ Γ(s,z) + q¹ ∫_z^∞ t^{s−1} e^{−t} ln t dt − q¹ Γ(s,z) ln r², per row
    let z = e.finite.v0 * r * r;
    let lambda = e.finite.lambda;
    e.finite
        .rows
        .iter()
        .map(|row| {
            let s = row.m as f64 + lambda + 1.0;
            let up = upper_gamma(s, z).unwrap();
            let up_log = if row.q1 == 0.0 {
                0.0
            } else {
                integrate_interval_vec(
                    |t: f64, o: &mut [f64]| o[0] = t.powf(s - 1.0) * (-t).exp() * t.ln(),
                    1,
                    z,
                    z + 200.0,
                    1e-15,
                )
                .unwrap()
                .values[0]
            };
            let p = 2.0 * (row.i as f64 - row.m as f64 - lambda - 1.0);
            r.powf(p) * (row.q0 * up + row.q1 * up_log - row.q1 * up * (r * r).ln())
        })
        .sum()
}

#[test]
fn finite_and_limit_forms_differ_by_gamma_tails() {
    for (d, comp, part) in [(1, Tt, Dia), (2, Tt, Dia), (3, Rr, Sq)] {
        let f = StressFamily::new(d, comp, part, Order::T0).unwrap();
        let e = large_r_expansion(&f, default_k(d), 0.5, 1e-10).unwrap();
        for r in [6.0, 8.0] {
            let lim = e.limit.evaluate(r);
            let diff = lim - e.finite.evaluate(r).unwrap();
            assert!((diff - tails(&e, r)).abs() <= 1e-10 * lim.abs(), "d={d} r={r}");
        }
    }
}

#[test]
fn finite_and_limit_forms_agree_at_r6() {
    // Γ(s, 18) is about 1e-8 Γ(s) for the orders involved, see the decisions ledger
    for (d, comp, part) in [(1, Tt, Dia), (2, Tt, Dia), (3, Rr, Sq)] {
        let f = StressFamily::new(d, comp, part, Order::T0).unwrap();
        let e = large_r_expansion(&f, default_k(d), 0.5, 1e-10).unwrap();
        let lim = e.limit.evaluate(6.0);
        let fin = e.finite.evaluate(6.0).unwrap();
        assert!((lim - fin).abs() < 1e-10 * lim.abs(), "d={d}: relative {:.3e}", (lim - fin).abs() / lim.abs());
    }
}

#[test]
fn large_r_bound_holds_for_d1_conformal() {
    let cfg = HarmonicConfig::conformal(1).unwrap();
    let s = limit_series(1, Tt, Dia, Order::T0);
    for r in [3.0, 5.0, 8.0] {
        let t = conformal_split(&cfg, Tt, r, 1e-13).unwrap().diamond.t0;
        let err = (t - s.evaluate(r)).abs();
        assert!(err <= s.remainder.bound(r), "r={r}: {err} > {}", s.remainder.bound(r));
    }
}

#[test]
fn small_r_remainder_holds_on_all_families() {
    for d in 1..=3u32 {
        for &comp in ComponentTag::for_dimension(d) {
            let f = StressFamily::new(d, comp, Dia, Order::T0).unwrap();
            let s = small_r_expansion(&f, f.len() - 1, 1e-12).unwrap();
            let cfg = HarmonicConfig::conformal(d).unwrap();
            for r in [0.3, 0.8] {
                let t = conformal_split(&cfg, comp, r, 1e-13).unwrap().diamond.t0;
                let err = (t - s.evaluate(r)).abs();
                assert!(err <= s.remainder.bound(r) + 1e-10, "d={d} {} r={r}", comp.name());
            }
        }
    }
}

#[test]
fn match_report_shape() {
    let cfg = HarmonicConfig::conformal(3).unwrap();
    let rep = asymptotic_match_report(&cfg, Tt, Dia, &[5.0, 7.0, 10.0], MatchOptions::for_dimension(3)).unwrap();
    assert_eq!(rep.rows.len(), 3);
    assert_eq!(rep.slopes.len(), 2);
    assert_eq!(rep.expected_exponent, limit_series(3, Tt, Dia, Order::T0).remainder.order);
    assert!(rep.rows.iter().all(|r| r.diff <= r.bound));
}
