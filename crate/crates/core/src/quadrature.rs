//! Numerical integration on (0, ∞) and (0, 1).
//!
//! The semi-axis is split at τ* into a tanh-sinh panel, which absorbs
//! τ^α (ln τ)^p endpoint behavior at 0, and a sequence of doubling
//! Gauss–Kronrod panels for the exponentially decaying tail, truncated once
//! the panel contributions fall below tol/100.
//!
//! Tolerances are absolute for results of magnitude ≤ 1 and relative above.
//! Error estimates are the difference between successive tanh-sinh levels
//! and |K15 − G7| per Kronrod panel, floored by a rounding bound.

use crate::error::{Error, Result};

/// Integrand τ^alpha (ln τ)^log_power · smooth(τ).
pub struct WeightedIntegrand<F> {
    pub alpha: f64,
    pub log_power: u8,
    pub smooth_part: F,
}

impl<F: Fn(f64) -> f64> WeightedIntegrand<F> {
    pub fn new(alpha: f64, log_power: u8, smooth_part: F) -> Self {
        WeightedIntegrand {
            alpha,
            log_power,
            smooth_part,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > -1.0) {
            return Err(Error::domain(
                "quadrature",
                format!("weight exponent {} must exceed -1", self.alpha),
            ));
        }
        if self.log_power > 1 {
            return Err(Error::domain("quadrature", "log_power must be 0 or 1"));
        }
        Ok(())
    }

    fn eval(&self, x: f64) -> f64 {
        let mut w = if self.alpha == 0.0 { 1.0 } else { x.powf(self.alpha) };
        if self.log_power == 1 {
            w *= x.ln();
        }
        w * (self.smooth_part)(x)
    }
}

/// Integral value with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
}

/// Component-wise integral of a vector-valued integrand.
#[derive(Clone, Debug, PartialEq)]
pub struct VecQuadResult {
    pub values: Vec<f64>,
    pub err_estimates: Vec<f64>,
}

/// Options for [`integrate_semiaxis_vec`].
#[derive(Clone, Copy, Debug)]
pub struct SemiAxisOptions {
    /// End of the tanh-sinh panel; values below 1 resolve integrands peaked near 0.
    pub split: f64,
    /// Deepest tanh-sinh level (step 2^-level).
    pub max_level: u32,
}

impl Default for SemiAxisOptions {
    fn default() -> Self {
        SemiAxisOptions {
            split: 1.0,
            max_level: 11,
        }
    }
}

const T_MAX: f64 = 6.0;
const MIN_LEVEL: u32 = 3;
const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

fn scaled(tol: f64, v: f64) -> f64 {
    tol * v.abs().max(1.0)
}

/// Tanh-sinh quadrature of a vector integrand on [a, b].
fn tanh_sinh_vec<F>(f: &F, dim: usize, a: f64, b: f64, tol: f64, max_level: u32) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(f64, &mut [f64]),
{
    let width = b - a;
    let mut buf = vec![0.0; dim];
    let mut sum = vec![0.0; dim];
    let mut abs_sum = vec![0.0; dim];
    let add_node = |t: f64, sum: &mut [f64], abs_sum: &mut [f64], buf: &mut [f64]| {
        let u = FRAC_PI_2 * t.sinh();
        let x = a + width / (1.0 + (-2.0 * u).exp());
        if !(x > a && x < b) {
            return;
        }
        let ch = u.cosh();
        let w = 0.5 * width * FRAC_PI_2 * t.cosh() / (ch * ch);
        if w == 0.0 {
            return;
        }
        f(x, buf);
        for c in 0..dim {
            let v = w * buf[c];
            sum[c] += v;
            abs_sum[c] += v.abs();
        }
    };
    // level 0: integer nodes
    let n0 = T_MAX as i64;
    for k in -n0..=n0 {
        add_node(k as f64, &mut sum, &mut abs_sum, &mut buf);
    }
    let mut h = 1.0;
    let mut prev: Vec<f64> = sum.clone();
    let mut last_diff = vec![f64::INFINITY; dim];
    for level in 1..=max_level {
        h *= 0.5;
        let count = (T_MAX / h) as i64;
        let mut k = 1;
        while k <= count {
            let t = k as f64 * h;
            add_node(t, &mut sum, &mut abs_sum, &mut buf);
            add_node(-t, &mut sum, &mut abs_sum, &mut buf);
            k += 2;
        }
        let cur: Vec<f64> = sum.iter().map(|s| s * h).collect();
        let mut done = level >= MIN_LEVEL;
        for c in 0..dim {
            let floor = 16.0 * f64::EPSILON * abs_sum[c] * h;
            last_diff[c] = (cur[c] - prev[c]).abs().max(floor);
            if last_diff[c] > scaled(tol, cur[c]) && (cur[c] - prev[c]).abs() > floor {
                done = false;
            }
        }
        prev = cur;
        if done {
            return Ok((prev, last_diff));
        }
    }
    let worst = last_diff.iter().cloned().fold(0.0, f64::max);
    Err(Error::NonConvergence {
        what: "tanh-sinh quadrature",
        estimate: worst,
        tol,
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss–Kronrod 7/15 panel: (Kronrod value, |K − G|) per component.
fn gk15<F>(f: &F, dim: usize, a: f64, b: f64, buf: &mut [f64], kr: &mut [f64], err: &mut [f64])
where
    F: Fn(f64, &mut [f64]),
{
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let mut g = vec![0.0; dim];
    for v in kr.iter_mut() {
        *v = 0.0;
    }
    f(c, buf);
    for i in 0..dim {
        kr[i] += WGK[7] * buf[i];
        g[i] += WG[3] * buf[i];
    }
    for j in 0..7 {
        let dx = hw * XGK[j];
        for x in [c - dx, c + dx] {
            f(x, buf);
            for i in 0..dim {
                kr[i] += WGK[j] * buf[i];
                if j % 2 == 1 {
                    g[i] += WG[j / 2] * buf[i];
                }
            }
        }
    }
    for i in 0..dim {
        kr[i] *= hw;
        g[i] *= hw;
        err[i] = (kr[i] - g[i]).abs();
    }
}

/// Adaptive bisection with GK15 on [a, b], absolute tolerance `tol` per component.
fn adaptive_gk<F>(f: &F, dim: usize, a: f64, b: f64, tol: f64) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(f64, &mut [f64]),
{
    let mut buf = vec![0.0; dim];
    let mut total = vec![0.0; dim];
    let mut total_err = vec![0.0; dim];
    let mut stack = vec![(a, b, 0u32)];
    let mut kr = vec![0.0; dim];
    let mut er = vec![0.0; dim];
    while let Some((lo, hi, depth)) = stack.pop() {
        gk15(f, dim, lo, hi, &mut buf, &mut kr, &mut er);
        let local_tol = tol * (hi - lo) / (b - a);
        let ok = (0..dim).all(|i| er[i] <= scaled(local_tol, kr[i]).max(1e-15 * kr[i].abs()));
        if ok || depth >= 30 {
            for i in 0..dim {
                total[i] += kr[i];
                total_err[i] += er[i];
            }
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    // panels at the depth limit are kept; only a budget overrun is an error
    let worst = (0..dim)
        .map(|i| total_err[i] / scaled(tol, total[i]).max(1e-14 * total[i].abs()))
        .fold(0.0, f64::max);
    if worst > 10.0 {
        return Err(Error::NonConvergence {
            what: "Gauss-Kronrod panel",
            estimate: total_err.iter().cloned().fold(0.0, f64::max),
            tol,
        });
    }
    Ok((total, total_err))
}

/// Integral over (0, ∞) of a vector integrand whose components include their endpoint weights.
pub fn integrate_semiaxis_vec<F>(f: F, dim: usize, tol: f64, opts: SemiAxisOptions) -> Result<VecQuadResult>
where
    F: Fn(f64, &mut [f64]),
{
    if !(tol > 0.0) {
        return Err(Error::domain("quadrature", "tolerance must be positive"));
    }
    let split = opts.split.clamp(1e-6, 1.0);
    let (mut values, mut errs) = tanh_sinh_vec(&f, dim, 0.0, split, tol / 4.0, opts.max_level)?;
    if split < 1.0 {
        let (v, e) = adaptive_gk(&f, dim, split, 1.0, tol / 8.0)?;
        for i in 0..dim {
            values[i] += v[i];
            errs[i] += e[i];
        }
    }
    // doubling tail panels [2^j, 2^{j+1})
    let mut lo = 1.0;
    let mut quiet = 0;
    while quiet < 2 {
        let hi = 2.0 * lo;
        let (v, e) = adaptive_gk(&f, dim, lo, hi, tol / 16.0)?;
        let small = (0..dim).all(|i| v[i].abs() + e[i] < scaled(tol, values[i]) / 100.0);
        for i in 0..dim {
            values[i] += v[i];
            errs[i] += e[i];
        }
        quiet = if small { quiet + 1 } else { 0 };
        lo = hi;
        if lo > 4096.0 {
            return Err(Error::NonConvergence {
                what: "semi-axis tail",
                estimate: v.iter().map(|x| x.abs()).fold(0.0, f64::max),
                tol,
            });
        }
    }
    Ok(VecQuadResult {
        values,
        err_estimates: errs,
    })
}

/// ∫₀^∞ τ^α (ln τ)^p smooth(τ) dτ.
pub fn integrate_semiaxis<F: Fn(f64) -> f64>(f: &WeightedIntegrand<F>, tol: f64) -> Result<QuadResult> {
    integrate_semiaxis_with(f, tol, SemiAxisOptions::default())
}

/// [`integrate_semiaxis`] with explicit panel options.
pub fn integrate_semiaxis_with<F: Fn(f64) -> f64>(
    f: &WeightedIntegrand<F>,
    tol: f64,
    opts: SemiAxisOptions,
) -> Result<QuadResult> {
    f.validate()?;
    let r = integrate_semiaxis_vec(|x, out: &mut [f64]| out[0] = f.eval(x), 1, tol, opts)?;
    Ok(QuadResult {
        value: r.values[0],
        err_estimate: r.err_estimates[0],
    })
}

/// ∫₀¹ v^λ (ln v)^p smooth(v) dv.
pub fn integrate_unit_interval<F: Fn(f64) -> f64>(f: &WeightedIntegrand<F>, tol: f64) -> Result<QuadResult> {
    f.validate()?;
    if !(tol > 0.0) {
        return Err(Error::domain("quadrature", "tolerance must be positive"));
    }
    let (v, e) = tanh_sinh_vec(&|x, out: &mut [f64]| out[0] = f.eval(x), 1, 0.0, 1.0, tol / 2.0, 12)?;
    Ok(QuadResult {
        value: v[0],
        err_estimate: e[0],
    })
}

/// ∫_a^b of a smooth vector integrand by adaptive Gauss–Kronrod (finite interval).
pub fn integrate_interval_vec<F>(f: F, dim: usize, a: f64, b: f64, tol: f64) -> Result<VecQuadResult>
where
    F: Fn(f64, &mut [f64]),
{
    let (values, err_estimates) = adaptive_gk(&f, dim, a, b, tol)?;
    Ok(VecQuadResult {
        values,
        err_estimates,
    })
}

/// ∫_a^b of a vector integrand with integrable endpoint singularities, by tanh-sinh.
pub fn integrate_interval_tanh_sinh_vec<F>(f: F, dim: usize, a: f64, b: f64, tol: f64) -> Result<VecQuadResult>
where
    F: Fn(f64, &mut [f64]),
{
    let (values, err_estimates) = tanh_sinh_vec(&f, dim, a, b, tol, 12)?;
    Ok(VecQuadResult {
        values,
        err_estimates,
    })
}
