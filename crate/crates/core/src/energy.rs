//! Renormalized bulk energy E^ren/k, the integrals 𝕀_n(s) = ∫₀^∞ τ^{s−1} sinh^{−n}τ dτ,
//! a spectral-sum oracle for Tr 𝒜^{−s}, and the boundary-energy ℓ-scan.

use crate::error::{Error, Result};
use crate::jets::{Jet, MAX_ORDER};
use crate::quadrature::{integrate_semiaxis, integrate_semiaxis_with, SemiAxisOptions, WeightedIntegrand};
use crate::specfun::{gamma, hurwitz_zeta, riemann_zeta};
use std::f64::consts::{PI, SQRT_2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyMethod {
    Quadrature,
    Zeta,
    SpectralOracle,
}

impl EnergyMethod {
    pub fn name(&self) -> &'static str {
        match self {
            EnergyMethod::Quadrature => "quadrature",
            EnergyMethod::Zeta => "zeta",
            EnergyMethod::SpectralOracle => "spectral-oracle",
        }
    }
}

/// E^ren / k with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyResult {
    pub value_per_k: f64,
    pub method: EnergyMethod,
    pub err_estimate: f64,
}

/// E^ren/k from n integrations by parts,
/// `−(2^{d+2−n}√π)^{−1} Π_{i<n} (2(d−i)+1)^{−1} ∫ τ^{n−d−3/2} ∂ⁿ (τ/sinh τ)^d dτ`.
pub fn bulk_energy_quadrature(d: u32, n: usize, tol: f64) -> Result<EnergyResult> {
    if d < 1 {
        return Err(Error::UnsupportedDimension(d));
    }
    if (n as f64) <= d as f64 + 0.5 {
        return Err(Error::domain("bulk_energy_quadrature", format!("n = {n} must exceed d + 1/2")));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderExceeded {
            requested: n,
            available: MAX_ORDER,
        });
    }
    let mut prod = 1.0;
    for i in 0..n {
        prod /= 2.0 * (d as f64 - i as f64) + 1.0;
    }
    let pre = -prod / (2f64.powi(d as i32 + 2 - n as i32) * PI.sqrt());
    let deriv = |t: f64| -> f64 {
        Jet::variable(t, n)
            .map(|x| x.sinhc().powi(d))
            .and_then(|h| h.derivative(n))
            .unwrap_or(f64::NAN)
    };
    let w = WeightedIntegrand::new(n as f64 - d as f64 - 1.5, 0, deriv);
    let r = integrate_semiaxis(&w, tol / pre.abs().max(1e-300))?;
    Ok(EnergyResult {
        value_per_k: pre * r.value,
        method: EnergyMethod::Quadrature,
        err_estimate: pre.abs() * r.err_estimate,
    })
}

/// 𝕀_n(s) by direct quadrature, s > n.
pub fn in_quadrature(n: u32, s: f64) -> Result<f64> {
    in_quadrature_tol(n, s, 1e-14)
}

/// [`in_quadrature`] with explicit tolerance.
pub fn in_quadrature_tol(n: u32, s: f64, tol: f64) -> Result<f64> {
    if n < 1 || !(s > n as f64) {
        return Err(Error::domain("in_quadrature", format!("requires n >= 1 and s > n, got n = {n}, s = {s}")));
    }
    // τ^{s−1} sinh^{−n} τ = τ^{s−1−n} (τ/sinh τ)^n
    let smooth = |t: f64| -> f64 {
        if t == 0.0 {
            1.0
        } else if t < 1.0 {
            (t / t.sinh()).powi(n as i32)
        } else {
            // exp form avoids overflow of sinh at large τ
            (2.0 * t * (-t).exp() / (1.0 - (-2.0 * t).exp())).powi(n as i32)
        }
    };
    let opts = SemiAxisOptions {
        split: 1.0,
        max_level: 12,
    };
    let w = WeightedIntegrand::new(s - 1.0 - n as f64, 0, smooth);
    let r = integrate_semiaxis_with(&w, tol, opts)?;
    Ok(r.value)
}

/// 𝕀_n(s) from the zeta closed forms of 𝕀₁, 𝕀₂ and the two-step recursion, any admissible s.
pub fn in_zeta(n: u32, s: f64) -> Result<f64> {
    match n {
        0 => Err(Error::domain("in_zeta", "n must be at least 1")),
        1 => {
            let pre = 2.0 * (1.0 - 2f64.powf(-s));
            if s == 0.0 {
                // 2(1 − 2^{−s})Γ(s) → 2 ln 2 as s → 0
                return Ok(2.0 * std::f64::consts::LN_2 * riemann_zeta(0.0)?);
            }
            Ok(pre * gamma(s)? * riemann_zeta(s)?)
        }
        2 => Ok(2f64.powf(2.0 - s) * gamma(s)? * riemann_zeta(s - 1.0)?),
        _ => {
            let m = (n - 2) as f64;
            let a = in_zeta(n - 2, s)?;
            let b = in_zeta(n - 2, s - 2.0)?;
            Ok(-(m / (m + 1.0)) * a + (s - 1.0) * (s - 2.0) / (m * (m + 1.0)) * b)
        }
    }
}

/// E^ren/k = 𝕀_d(−1/2) / (2^{d+1} Γ(−1/2)), via [`in_zeta`].
pub fn bulk_energy_zeta_recursive(d: u32) -> Result<EnergyResult> {
    if d < 1 {
        return Err(Error::UnsupportedDimension(d));
    }
    let v = in_zeta(d, -0.5)? / (2f64.powi(d as i32 + 1) * gamma(-0.5)?);
    Ok(EnergyResult {
        value_per_k: v,
        method: EnergyMethod::Zeta,
        err_estimate: 1e-15 * v.abs(),
    })
}

/// Closed zeta forms of E^ren/k for d ∈ {1, 2, 3}.
pub fn bulk_energy_zeta(d: u32) -> Result<EnergyResult> {
    let v = match d {
        1 => -(SQRT_2 - 1.0) / 2.0 * riemann_zeta(-0.5)?,
        2 => riemann_zeta(-1.5)? / SQRT_2,
        3 => (SQRT_2 - 1.0) / 16.0 * riemann_zeta(-0.5)? - (4.0 * SQRT_2 - 1.0) / 16.0 * riemann_zeta(-2.5)?,
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    Ok(EnergyResult {
        value_per_k: v,
        method: EnergyMethod::Zeta,
        err_estimate: 1e-15 * v.abs(),
    })
}

/// d = 3 energy in Hurwitz form, (1/(2√2)) ζ(−5/2, 3/2) − (1/(8√2)) ζ(−1/2, 3/2).
pub fn bulk_energy_hurwitz_d3() -> Result<f64> {
    Ok(hurwitz_zeta(-2.5, 1.5)? / (2.0 * SQRT_2) - hurwitz_zeta(-0.5, 1.5)? / (8.0 * SQRT_2))
}

/// Truncated spectral sum with its tail estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralSum {
    pub value: f64,
    /// Size of the first omitted Euler–Maclaurin term.
    pub tail_error: f64,
    pub terms: usize,
}

/// Coefficients c_k of binom(m+d−1, d−1) = Σ c_k y^k with y = 2m + d.
fn degeneracy_in_y(d: u32) -> Vec<f64> {
    let mut c = vec![1.0];
    for j in 1..d {
        // factor (y − d + 2j) / (2j)
        let shift = 2.0 * j as f64 - d as f64;
        let mut next = vec![0.0; c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck / (2.0 * j as f64);
            next[k] += ck * shift / (2.0 * j as f64);
        }
        c = next;
    }
    c
}

const BERNOULLI_EM: [f64; 7] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];

/// Σ_m binom(m+d−1, d−1) (2m+d)^{−s} = k^{2s} Tr 𝒜^{−s}, summed directly over `terms`
/// eigenvalues, with an Euler–Maclaurin tail. Requires s > d.
pub fn spectral_trace_oracle(d: u32, s: f64, terms: usize, tol: f64) -> Result<SpectralSum> {
    if d < 1 {
        return Err(Error::UnsupportedDimension(d));
    }
    if !(s > d as f64) {
        return Err(Error::domain("spectral_trace_oracle", format!("requires s > d, got s = {s}")));
    }
    if terms < 1 {
        return Err(Error::domain("spectral_trace_oracle", "terms must be at least 1"));
    }
    let c = degeneracy_in_y(d);
    let mut head = 0.0;
    // smallest terms first
    for m in (0..terms).rev() {
        let mf = m as f64;
        let mut b = 1.0;
        for j in 1..d {
            b *= (mf + j as f64) / j as f64;
        }
        head += b * (2.0 * mf + d as f64).powf(-s);
    }
    // tail Σ_{m ≥ M} f(m) with f(x) = Σ_k c_k (2x + d)^{k−s}
    let y = 2.0 * terms as f64 + d as f64;
    let deriv = |q: usize| -> f64 {
        c.iter()
            .enumerate()
            .map(|(k, &ck)| {
                let a = k as f64 - s;
                let mut fall = 1.0;
                for i in 0..q {
                    fall *= a - i as f64;
                }
                ck * 2f64.powi(q as i32) * fall * y.powf(a - q as f64)
            })
            .sum()
    };
    let integral: f64 = c
        .iter()
        .enumerate()
        .map(|(k, &ck)| ck * y.powf(k as f64 - s + 1.0) / (2.0 * (s - k as f64 - 1.0)))
        .sum();
    let mut tail = integral + 0.5 * deriv(0);
    let mut fact = 1.0;
    let mut last = 0.0;
    for (j, &b) in BERNOULLI_EM.iter().enumerate() {
        let p = 2 * (j + 1);
        fact *= ((p - 1) * p) as f64;
        let term = b / fact * deriv(p - 1);
        if j + 1 == BERNOULLI_EM.len() {
            last = term.abs();
        } else {
            tail -= term;
        }
    }
    if last > tol / 10.0 {
        return Err(Error::NonConvergence {
            what: "spectral sum",
            estimate: last,
            tol,
        });
    }
    Ok(SpectralSum {
        value: head + tail,
        tail_error: last,
        terms,
    })
}

/// k^{2s} Tr 𝒜^{−s} via the Mellin transform of the heat trace, 𝕀_d(s) / (2^d Γ(s)).
pub fn heat_trace_mellin(d: u32, s: f64) -> Result<f64> {
    Ok(in_quadrature(d, s)? / (2f64.powi(d as i32) * gamma(s)?))
}

/// 𝔅-integrals `∫ τ^{(u−d+1)/2} e^{−ℓ² tanh τ} ℓ^d τ^{d/2−1} tanh τ / sinh(2τ)^{d/2} dτ` for each ℓ.
pub fn boundary_energy_scan(d: u32, u: f64, ell_values: &[f64], tol: f64) -> Result<Vec<f64>> {
    if d < 1 {
        return Err(Error::UnsupportedDimension(d));
    }
    if !(u > d as f64 - 3.0) {
        return Err(Error::domain("boundary_energy_scan", format!("requires u > d - 3, got u = {u}")));
    }
    let df = d as f64;
    ell_values
        .iter()
        .map(|&ell| {
            if !(ell >= 0.0) {
                return Err(Error::domain("boundary_energy_scan", format!("requires ell >= 0, got {ell}")));
            }
            if ell == 0.0 {
                return Ok(0.0);
            }
            let l2 = ell * ell;
            let lp = ell.powf(df);
            // τ^{d/2−1} tanh τ / sinh(2τ)^{d/2} = 2^{−d/2} (tanh τ/τ) (2τ/sinh 2τ)^{d/2}
            let smooth = |t: f64| -> f64 {
                let th = t.tanh();
                let ratio = if t < 1e-8 { 1.0 } else { th / t };
                let sc = if t == 0.0 { 1.0 } else { 2.0 * t / (2.0 * t).sinh() };
                lp * (-l2 * th).exp() * 2f64.powf(-0.5 * df) * ratio * sc.powf(0.5 * df)
            };
            let w = WeightedIntegrand::new(0.5 * (u - df + 1.0), 0, smooth);
            let opts = SemiAxisOptions {
                split: (2.0 / l2).min(1.0),
                ..SemiAxisOptions::default()
            };
            Ok(integrate_semiaxis_with(&w, tol, opts)?.value)
        })
        .collect()
}
