//! Special functions at real arguments: Γ, ψ, the incomplete gamma pair,
//! the log-weighted incomplete gamma 𝔤(s, z) and the Riemann/Hurwitz zeta
//! functions continued to negative arguments.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bernoulli numbers B_2, B_4, ..., B_30.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(s: f64) -> bool {
    s <= 0.0 && s == s.round()
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn gamma_lanczos(s: f64) -> f64 {
    // s >= 0.5
    let x = s - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let e = x + 0.5;
    let sqrt_two_pi = (2.0 * PI).sqrt();
    if e < 100.0 {
        sqrt_two_pi * t.powf(e) * (-t).exp() * a
    } else {
        let half = t.powf(0.5 * e);
        sqrt_two_pi * half * (-t).exp() * half * a
    }
}

/// Euler gamma function.
pub fn gamma(s: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::domain("gamma", format!("non-finite argument {s}")));
    }
    if is_nonpositive_integer(s) {
        return Err(Error::Pole { func: "gamma", at: s });
    }
    if s == s.round() && s <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < s {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if s < 0.5 {
        Ok(PI / (sin_pi(s) * gamma_lanczos(1.0 - s)))
    } else {
        Ok(gamma_lanczos(s))
    }
}

/// ln Γ(s) for s > 0.
pub fn ln_gamma(s: f64) -> Result<f64> {
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::domain("ln_gamma", format!("requires s > 0, got {s}")));
    }
    if s < 15.0 {
        return Ok(gamma(s)?.ln());
    }
    let inv = 1.0 / s;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += b / (n * (n - 1.0)) * p;
        p *= inv2;
    }
    Ok((s - 0.5) * s.ln() - s + 0.5 * (2.0 * PI).ln() + series)
}

/// Digamma function ψ(s) = Γ'(s)/Γ(s).
pub fn digamma(s: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::domain("digamma", format!("non-finite argument {s}")));
    }
    if is_nonpositive_integer(s) {
        return Err(Error::Pole {
            func: "digamma",
            at: s,
        });
    }
    if s < 0.0 {
        // ψ(s) = ψ(1 - s) - π cot(π s)
        return Ok(digamma(1.0 - s)? - PI * cos_pi(s) / sin_pi(s));
    }
    let mut x = s;
    let mut acc = 0.0;
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut p = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        series += b / (2.0 * (k as f64 + 1.0)) * p;
        p *= inv2;
    }
    Ok(acc + x.ln() - 0.5 / x - series)
}

/// Value and first derivative with respect to a parameter.
#[derive(Clone, Copy, Debug)]
struct Dual {
    v: f64,
    d: f64,
}

impl Dual {
    fn c(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: self.d + o.d,
        }
    }
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
    fn recip(self) -> Dual {
        let r = 1.0 / self.v;
        Dual {
            v: r,
            d: -self.d * r * r,
        }
    }
    fn div(self, o: Dual) -> Dual {
        self.mul(o.recip())
    }
}

/// e^{-z} z^s with its s-derivative.
fn prefactor(s: f64, z: f64) -> Dual {
    let lz = z.ln();
    let v = (s * lz - z).exp();
    Dual { v, d: v * lz }
}

const MAX_ITER: usize = 100_000;

/// Lower incomplete gamma by its power series, with the s-derivative.
fn lower_series(s: f64, z: f64) -> Result<Dual> {
    let sd = Dual { v: s, d: 1.0 };
    let mut term = sd.recip();
    let mut sum = term;
    let zd = Dual::c(z);
    for k in 1..MAX_ITER {
        term = term.mul(zd).div(sd.add(Dual::c(k as f64)));
        sum = sum.add(term);
        if term.v.abs() <= 1e-17 * sum.v.abs() && term.d.abs() <= 1e-17 * sum.d.abs().max(1e-300)
        {
            return Ok(prefactor(s, z).mul(sum));
        }
    }
    Err(Error::NonConvergence {
        what: "incomplete gamma series",
        estimate: term.v.abs(),
        tol: 1e-17 * sum.v.abs(),
    })
}

/// Upper incomplete gamma by the Legendre continued fraction (modified Lentz), with the s-derivative.
fn upper_fraction(s: f64, z: f64) -> Result<Dual> {
    const TINY: f64 = 1e-300;
    let sd = Dual { v: s, d: 1.0 };
    let fix = |x: Dual| if x.v.abs() < TINY { Dual { v: TINY, d: x.d } } else { x };
    let mut b = Dual {
        v: z + 1.0 - s,
        d: -1.0,
    };
    let mut c = Dual::c(1.0 / TINY);
    let mut d = fix(b).recip();
    let mut h = d;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        // an = -i (i - s)
        let an = Dual {
            v: -fi * (fi - sd.v),
            d: fi,
        };
        b = b.add(Dual::c(2.0));
        d = fix(an.mul(d).add(b)).recip();
        c = fix(b.add(an.div(c)));
        let del = d.mul(c);
        h = h.mul(del);
        if (del.v - 1.0).abs() < 1e-16 && del.d.abs() <= 1e-16 * h.d.abs().max(1.0) {
            return Ok(prefactor(s, z).mul(h));
        }
    }
    Err(Error::NonConvergence {
        what: "incomplete gamma continued fraction",
        estimate: f64::NAN,
        tol: 1e-16,
    })
}

fn check_positive(func: &'static str, s: f64, z: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(func, format!("requires s > 0, got {s}")));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::domain(func, format!("requires z > 0, got {z}")));
    }
    Ok(())
}

/// Lower incomplete gamma γ(s, z) = ∫₀^z e^{-w} w^{s-1} dw.
pub fn lower_gamma(s: f64, z: f64) -> Result<f64> {
    check_positive("lower_gamma", s, z)?;
    if z < s + 1.0 {
        Ok(lower_series(s, z)?.v)
    } else {
        Ok(gamma(s)? - upper_fraction(s, z)?.v)
    }
}

/// Exponential integral E₁(z) for 0 < z < 1 by its convergent series.
fn e1_series(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        let fk = k as f64;
        term *= -z / fk;
        let t = term / fk;
        sum += t;
        if t.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

/// Upper incomplete gamma Γ(s, z) = ∫_z^∞ e^{-w} w^{s-1} dw, any real s.
pub fn upper_gamma(s: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::domain("upper_gamma", format!("requires z > 0, got {z}")));
    }
    if !s.is_finite() {
        return Err(Error::domain("upper_gamma", format!("non-finite s {s}")));
    }
    if z >= s + 1.0 || (s <= 0.0 && z >= 1.0) {
        return Ok(upper_fraction(s, z)?.v);
    }
    if s > 0.0 {
        return Ok(gamma(s)? - lower_series(s, z)?.v);
    }
    // s <= 0 and z < 1: start from a nonnegative parameter and recurse downwards,
    // Γ(a - 1, z) = (Γ(a, z) - z^{a-1} e^{-z}) / (a - 1).
    let steps = (-s).ceil();
    let mut a = s + steps;
    let mut val = if a == 0.0 {
        e1_series(z)
    } else {
        gamma(a)? - lower_series(a, z)?.v
    };
    for _ in 0..steps as usize {
        a -= 1.0;
        val = (val - z.powf(a) * (-z).exp()) / a;
    }
    Ok(val)
}

/// Log-weighted lower incomplete gamma 𝔤(s, z) = ∫₀^z e^{-w} w^{s-1} ln w dw = ∂_s γ(s, z).
pub fn g_log_gamma(s: f64, z: f64) -> Result<f64> {
    check_positive("g_log_gamma", s, z)?;
    if z < s + 1.0 {
        Ok(lower_series(s, z)?.d)
    } else {
        Ok(gamma(s)? * digamma(s)? - upper_fraction(s, z)?.d)
    }
}

/// Euler–Maclaurin evaluation of Σ_{n≥0} (n + a)^{-s}, valid for every s ≠ 1.
fn euler_maclaurin_zeta(s: f64, a: f64) -> f64 {
    let min_x = if s < 0.0 { 10.0 } else { 12.0 };
    let n = ((min_x - a).ceil()).max(0.0) as usize;
    let mut head = 0.0;
    for j in (0..n).rev() {
        head += (j as f64 + a).powf(-s);
    }
    let x = n as f64 + a;
    let xs = x.powf(-s);
    let mut tail = x * xs / (s - 1.0) + 0.5 * xs;
    // Σ B_{2k}/(2k)! (s)_{2k-1} x^{-s-2k+1}
    let mut rising = s; // (s)_{2k-1}
    let mut fact = 2.0; // (2k)!
    let mut pw = xs / x; // x^{-s-2k+1}
    let inv2 = 1.0 / (x * x);
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / fact * rising * pw;
        tail += term;
        if term.abs() < 1e-18 * (head + tail).abs() {
            break;
        }
        let kk = 2.0 * (k as f64 + 1.0);
        rising *= (s + kk - 1.0) * (s + kk);
        fact *= (kk + 1.0) * (kk + 2.0);
        pw *= inv2;
    }
    head + tail
}

/// Riemann zeta function on ℝ \ {1}.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::domain("riemann_zeta", format!("non-finite argument {s}")));
    }
    if s == 1.0 {
        return Err(Error::Pole {
            func: "riemann_zeta",
            at: s,
        });
    }
    if s >= 0.0 {
        return Ok(euler_maclaurin_zeta(s, 1.0));
    }
    // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
    let sn = sin_pi(0.5 * s);
    if sn == 0.0 {
        return Ok(0.0);
    }
    let t = 1.0 - s;
    Ok(2f64.powf(s) * PI.powf(s - 1.0) * sn * gamma(t)? * euler_maclaurin_zeta(t, 1.0))
}

/// Hurwitz zeta function ζ(s, a) for a > 0, continued to all real s ≠ 1.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::domain("hurwitz_zeta", format!("non-finite argument {s}")));
    }
    if s == 1.0 {
        return Err(Error::Pole {
            func: "hurwitz_zeta",
            at: s,
        });
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain("hurwitz_zeta", format!("requires a > 0, got {a}")));
    }
    Ok(euler_maclaurin_zeta(s, a))
}
