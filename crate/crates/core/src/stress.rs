//! Renormalized stress-energy VEV components.
//!
//! `⟨T_μν⟩_ren = k^{d+1} (T⁽⁰⁾(r) + M T⁽¹⁾(r))` with
//! `T⁽⁰⁾ = ∫ τ^λ e^{−r² tanh τ} (𝓟⁰ + ln τ 𝓟¹) dτ` and
//! `T⁽¹⁾ = ∫ τ^λ e^{−r² tanh τ} 𝓟¹ dτ`.

use crate::continuation::{minimal_parts, PPolynomials, Pipeline};
use crate::error::{Error, Result};
use crate::kernels::{critical_coupling, ComponentTag, HarmonicConfig};
use crate::quadrature::{integrate_semiaxis_vec, SemiAxisOptions};
use rayon::prelude::*;

/// One stress component at one radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StressValue {
    pub t0: f64,
    pub t1: f64,
    /// k^{d+1} (t0 + M t1).
    pub vev: f64,
    pub comp: ComponentTag,
    pub r: f64,
    /// Quadrature error estimates of (t0, t1).
    pub err: [f64; 2],
}

/// Offset of the reference coupling used for the non-conformal part.
pub const SQUARE_REFERENCE_OFFSET: f64 = 0.25;

/// Conformal part (at ξ_d) and non-conformal part (ξ-slope) of a component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConformalSplit {
    pub xi_c: f64,
    pub diamond: StressValue,
    pub square: StressValue,
}

impl ConformalSplit {
    /// T(ξ) = diamond + (ξ − ξ_d) square, in the (t0, t1, vev) fields.
    pub fn reconstruct(&self, xi: f64) -> StressValue {
        let c = xi - self.xi_c;
        StressValue {
            t0: self.diamond.t0 + c * self.square.t0,
            t1: self.diamond.t1 + c * self.square.t1,
            vev: self.diamond.vev + c * self.square.vev,
            comp: self.diamond.comp,
            r: self.diamond.r,
            err: [
                self.diamond.err[0] + c.abs() * self.square.err[0],
                self.diamond.err[1] + c.abs() * self.square.err[1],
            ],
        }
    }
}

/// Integrals (T⁽⁰⁾, T⁽¹⁾) for given 𝓟 families at radius r.
pub fn stress_integrals(p: &PPolynomials, r: f64, tol: f64) -> Result<([f64; 2], [f64; 2])> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain("stress_component", format!("requires r >= 0, got {r}")));
    }
    let lambda = p.lambda();
    let r2 = r * r;
    let even = p.d % 2 == 0;
    let f = |tau: f64, out: &mut [f64]| {
        match p.values(tau) {
            Ok(v) => {
                let w = tau.powf(lambda) * (-r2 * tau.tanh()).exp();
                let p0 = v.p0_at(r);
                let p1 = v.p1_at(r);
                out[0] = w * (p0 + tau.ln() * p1);
                out[1] = w * p1;
            }
            Err(_) => {
                out[0] = f64::NAN;
                out[1] = f64::NAN;
            }
        }
        if even {
            out[1] = 0.0;
        }
    };
    let opts = SemiAxisOptions {
        split: if r2 > 2.0 { 2.0 / r2 } else { 1.0 },
        ..SemiAxisOptions::default()
    };
    let res = integrate_semiaxis_vec(f, 2, tol, opts)?;
    let (mut vals, mut errs) = ([res.values[0], res.values[1]], [res.err_estimates[0], res.err_estimates[1]]);
    if even {
        vals[1] = 0.0;
        errs[1] = 0.0;
    }
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonConvergence {
            what: "stress integrand",
            estimate: f64::NAN,
            tol,
        });
    }
    Ok((vals, errs))
}

/// Stress component with the minimal number of integrations by parts.
pub fn stress_component(cfg: &HarmonicConfig, comp: ComponentTag, r: f64, tol: f64) -> Result<StressValue> {
    stress_with(cfg, comp, r, tol, minimal_parts(cfg.d), Pipeline::ClosedForm)
}

/// Stress component with explicit n and prefactor pipeline.
pub fn stress_with(
    cfg: &HarmonicConfig,
    comp: ComponentTag,
    r: f64,
    tol: f64,
    n: usize,
    pipeline: Pipeline,
) -> Result<StressValue> {
    cfg.require_stress_dimension()?;
    let p = PPolynomials::new(cfg.d, comp, cfg.xi, n, pipeline)?;
    let (t, err) = stress_integrals(&p, r, tol)?;
    let scale = cfg.k.powi(cfg.d as i32 + 1);
    Ok(StressValue {
        t0: t[0],
        t1: t[1],
        vev: scale * (t[0] + cfg.m_constant() * t[1]),
        comp,
        r,
        err,
    })
}

/// Conformal and non-conformal parts at radius r.
pub fn conformal_split(cfg: &HarmonicConfig, comp: ComponentTag, r: f64, tol: f64) -> Result<ConformalSplit> {
    let xi_c = critical_coupling(cfg.d);
    let diamond = stress_component(&cfg.with_xi(xi_c), comp, r, tol)?;
    let reference = stress_component(&cfg.with_xi(xi_c + SQUARE_REFERENCE_OFFSET), comp, r, tol)?;
    let inv = 1.0 / SQUARE_REFERENCE_OFFSET;
    let square = StressValue {
        t0: (reference.t0 - diamond.t0) * inv,
        t1: (reference.t1 - diamond.t1) * inv,
        vev: (reference.vev - diamond.vev) * inv,
        comp,
        r,
        err: [
            (reference.err[0] + diamond.err[0]) * inv,
            (reference.err[1] + diamond.err[1]) * inv,
        ],
    };
    Ok(ConformalSplit { xi_c, diamond, square })
}

/// Element-wise [`stress_component`] over a list of radii, in order.
pub fn stress_grid(cfg: &HarmonicConfig, comp: ComponentTag, r_values: &[f64], tol: f64) -> Result<Vec<StressValue>> {
    r_values
        .par_iter()
        .enumerate()
        .map(|(i, &r)| {
            stress_component(cfg, comp, r, tol).map_err(|e| Error::GridElement {
                index: i,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Element-wise [`conformal_split`] over a list of radii, in order.
pub fn split_grid(cfg: &HarmonicConfig, comp: ComponentTag, r_values: &[f64], tol: f64) -> Result<Vec<ConformalSplit>> {
    r_values
        .par_iter()
        .enumerate()
        .map(|(i, &r)| {
            conformal_split(cfg, comp, r, tol).map_err(|e| Error::GridElement {
                index: i,
                source: Box::new(e),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_radius_values() {
        let cfg = HarmonicConfig::conformal(1).unwrap();
        let v = stress_component(&cfg, ComponentTag::Tt, 0.0, 1e-10).unwrap();
        assert!((v.t0 + 0.0153).abs() < 1.5e-4, "{}", v.t0);
        let cfg = HarmonicConfig::conformal(2).unwrap();
        let v = stress_component(&cfg, ComponentTag::Tt, 0.0, 1e-10).unwrap();
        assert_eq!(v.t1, 0.0);
        let cfg = HarmonicConfig::conformal(3).unwrap();
        let v = stress_component(&cfg, ComponentTag::Tt, 0.0, 1e-10).unwrap();
        assert!(v.t1.abs() < 1e-4);
    }

    #[test]
    fn components_are_routed() {
        for d in 1..=3 {
            let cfg = HarmonicConfig::unit(d, 0.2).unwrap();
            let a = stress_component(&cfg, ComponentTag::Tt, 1.0, 1e-10).unwrap();
            let b = stress_component(&cfg, ComponentTag::Rr, 1.0, 1e-10).unwrap();
            assert!(a.t0.is_finite() && b.t0.is_finite());
            assert!((a.t0 - b.t0).abs() > 1e-6);
        }
    }

    #[test]
    fn split_reconstructs() {
        let cfg = HarmonicConfig::unit(1, 0.0).unwrap();
        let s = conformal_split(&cfg, ComponentTag::Rr, 0.7, 1e-12).unwrap();
        for xi in [0.1, 0.25] {
            let direct = stress_component(&cfg.with_xi(xi), ComponentTag::Rr, 0.7, 1e-12).unwrap();
            assert!((s.reconstruct(xi).t0 - direct.t0).abs() < 1e-9);
        }
        // in one dimension the ξ-term of T_xx is −ξ ∂_t²⟨φ²⟩, zero for a static state
        for r in [0.0, 0.7, 2.0] {
            let s = conformal_split(&cfg, ComponentTag::Rr, r, 1e-12).unwrap();
            assert!(s.square.t0.abs() < 1e-9 && s.square.t1.abs() < 1e-9, "{:?}", s.square);
        }
    }

    #[test]
    fn grid_is_pure() {
        let cfg = HarmonicConfig::conformal(2).unwrap();
        let g = stress_grid(&cfg, ComponentTag::Tt, &[0.5, 1.0], 1e-10).unwrap();
        assert_eq!(g[0], stress_component(&cfg, ComponentTag::Tt, 0.5, 1e-10).unwrap());
        assert_eq!(g[1], stress_component(&cfg, ComponentTag::Tt, 1.0, 1e-10).unwrap());
        assert!(stress_grid(&cfg, ComponentTag::Tt, &[], 1e-10).unwrap().is_empty());
        match stress_grid(&cfg, ComponentTag::Tt, &[0.5, -1.0], 1e-10) {
            Err(Error::GridElement { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
    }
}
