//! Mehler heat kernel, heat trace, and the coincidence-limit coefficient
//! functions H^(u)_μν(τ; r) of the stress tensor for d ∈ {1, 2, 3}.
//!
//! All coefficient functions share the form
//! `A_d(τ, r) · (M_c(τ) + r² M_r(τ))` with
//! `A_d = (1/8) (4π)^{-d/2} e^{-r² tanh τ} (2τ / sinh 2τ)^{d/2}`, and depend on
//! u only affinely. τ = k² t is the rescaled heat time and r = k|x|.

use crate::error::{Error, Result};
use crate::jets::Jet;
use std::f64::consts::PI;

/// Problem parameters: dimension d, oscillator scale k, zeta mass scale κ and coupling ξ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicConfig {
    pub d: u32,
    pub k: f64,
    pub kappa: f64,
    pub xi: f64,
}

impl HarmonicConfig {
    /// Validated configuration.
    pub fn new(d: u32, k: f64, kappa: f64, xi: f64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidConfig(format!("dimension must be at least 1, got {d}")));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidConfig(format!("k must be positive, got {k}")));
        }
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidConfig(format!("kappa must be positive, got {kappa}")));
        }
        if !xi.is_finite() {
            return Err(Error::InvalidConfig(format!("xi must be finite, got {xi}")));
        }
        Ok(HarmonicConfig { d, k, kappa, xi })
    }

    /// Configuration with k = κ = 1.
    pub fn unit(d: u32, xi: f64) -> Result<Self> {
        Self::new(d, 1.0, 1.0, xi)
    }

    /// Conformal coupling for this dimension.
    pub fn conformal(d: u32) -> Result<Self> {
        Self::unit(d, critical_coupling(d))
    }

    /// Same configuration with another coupling.
    pub fn with_xi(&self, xi: f64) -> Self {
        HarmonicConfig { xi, ..*self }
    }

    pub fn kappa_over_k(&self) -> f64 {
        self.kappa / self.k
    }

    /// M = γ_EM + 2 ln(2κ/k).
    pub fn m_constant(&self) -> f64 {
        crate::specfun::EULER_GAMMA + 2.0 * (2.0 * self.kappa / self.k).ln()
    }

    pub(crate) fn require_stress_dimension(&self) -> Result<()> {
        require_stress_dimension(self.d)
    }
}

pub(crate) fn require_stress_dimension(d: u32) -> Result<()> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(d))
    }
}

/// Critical (conformal) coupling ξ_d = (d − 1)/(4d).
pub fn critical_coupling(d: u32) -> f64 {
    (d as f64 - 1.0) / (4.0 * d as f64)
}

/// Diagonal stress components; the angular one is stored as (k/r)² T_θ₁θ₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentTag {
    Tt,
    Rr,
    Theta1Theta1Reduced,
}

impl ComponentTag {
    pub const ALL: [ComponentTag; 3] = [ComponentTag::Tt, ComponentTag::Rr, ComponentTag::Theta1Theta1Reduced];

    /// Components that exist in dimension d (no angle for d = 1).
    pub fn for_dimension(d: u32) -> &'static [ComponentTag] {
        if d == 1 {
            &Self::ALL[..2]
        } else {
            &Self::ALL
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ComponentTag::Tt => "tt",
            ComponentTag::Rr => "rr",
            ComponentTag::Theta1Theta1Reduced => "theta1theta1_reduced",
        }
    }

    pub fn parse(s: &str) -> Option<ComponentTag> {
        match s {
            "tt" | "00" => Some(ComponentTag::Tt),
            "rr" => Some(ComponentTag::Rr),
            "theta" | "theta1theta1" | "theta1theta1_reduced" => Some(ComponentTag::Theta1Theta1Reduced),
            _ => None,
        }
    }
}

/// H^(u) = h0 + u h1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineInU {
    pub h0: f64,
    pub h1: f64,
}

impl AffineInU {
    pub fn at(&self, u: f64) -> f64 {
        self.h0 + u * self.h1
    }
}

/// τ-jets of h0 and h1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineJet {
    pub h0: Jet,
    pub h1: Jet,
}

impl AffineJet {
    pub fn value(&self) -> AffineInU {
        AffineInU {
            h0: self.h0.value(),
            h1: self.h1.value(),
        }
    }
}

/// K₁(t; x, y) for the 1-D oscillator with t = τ/k².
pub fn mehler_kernel_1d(tau: f64, x: f64, y: f64, k: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::domain("mehler_kernel_1d", format!("requires tau > 0, got {tau}")));
    }
    let s2 = (2.0 * tau).sinh();
    let t2 = (2.0 * tau).tanh();
    let k2 = k * k;
    let expo = -k2 * ((x * x + y * y) / (2.0 * t2) - x * y / s2);
    Ok(k / (2.0 * PI * s2).sqrt() * expo.exp())
}

/// Heat trace of the d-dimensional oscillator, (1/(2 sinh τ))^d.
pub fn heat_trace(tau: f64, d: u32) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::domain("heat_trace", format!("requires tau > 0, got {tau}")));
    }
    Ok((0.5 / tau.sinh()).powi(d as i32))
}

/// τ-jets of the r²-polynomial factors of H^(u), without e^{-r² tanh τ}:
/// H0 = e^{-r² tanh τ}(m0c + r² m0r), H1 = e^{-r² tanh τ}(m1c + r² m1r).
#[derive(Clone, Copy, Debug)]
pub struct HStructure {
    pub m0c: Jet,
    pub m0r: Jet,
    pub m1c: Jet,
    pub m1r: Jet,
}

/// Polynomial factors of H^(u) for component `comp`, as jets in τ.
pub fn h_structure(d: u32, comp: ComponentTag, tau: &Jet, xi: f64) -> Result<HStructure> {
    require_stress_dimension(d)?;
    if d == 1 && comp == ComponentTag::Theta1Theta1Reduced {
        return Err(Error::domain("h_structure", "no angular component for d = 1"));
    }
    let df = d as f64;
    let two_tau = *tau * 2.0;
    let s = two_tau.sinhc(); // 2τ / sinh 2τ
    let amp = 0.125 * (4.0 * PI).powf(-0.5 * df);
    let a = match d {
        1 => s.sqrt()?,
        2 => s,
        _ => s * s.sqrt()?,
    } * amp;
    let zero = *tau * 0.0;
    let plus = 1.0 + 4.0 * xi;
    let minus = 1.0 - 4.0 * xi;
    let st = match comp {
        ComponentTag::Tt => {
            let th = tau.tanh();
            let c2 = two_tau.cosh();
            HStructure {
                m0c: a * (s * (minus * df) - plus),
                m0r: a * s * th * c2 * (2.0 * minus),
                m1c: a * plus,
                m1r: zero,
            }
        }
        ComponentTag::Rr | ComponentTag::Theta1Theta1Reduced => {
            let th = tau.tanh();
            let sech2 = 1.0 - th * th;
            let c = tau.xcoth();
            let base = a * (c * (8.0 * xi) - (s * (df - 2.0) + 1.0) * minus);
            let radial = *tau * sech2 * (-2.0 * minus);
            let m0r = if comp == ComponentTag::Rr {
                a * radial
            } else {
                a * radial * two_tau.cosh()
            };
            HStructure {
                m0c: base,
                m0r,
                m1c: a * minus,
                m1r: zero,
            }
        }
    };
    Ok(st)
}

/// τ-jets of H0 and H1 (with the Gaussian factor e^{-r² tanh τ}) at radius r.
pub fn h_component(d: u32, comp: ComponentTag, tau_jet: &Jet, r: f64, xi: f64) -> Result<AffineJet> {
    if !(tau_jet.base() > 0.0) {
        return Err(Error::domain("h_component", "tau base point must be positive"));
    }
    if !(r >= 0.0) {
        return Err(Error::domain("h_component", format!("requires r >= 0, got {r}")));
    }
    let st = h_structure(d, comp, tau_jet, xi)?;
    let r2 = r * r;
    let gauss = (tau_jet.tanh() * -r2).exp();
    Ok(AffineJet {
        h0: gauss * (st.m0c + st.m0r * r2),
        h1: gauss * (st.m1c + st.m1r * r2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_d(d: u32, tau: f64, r: f64) -> f64 {
        let s = 2.0 * tau / (2.0 * tau).sinh();
        0.125 * (4.0 * PI).powf(-0.5 * d as f64) * (-r * r * tau.tanh()).exp() * s.powf(0.5 * d as f64)
    }

    #[test]
    fn u_slope_of_tt_in_one_dimension() {
        let t = Jet::variable(1.0, 0).unwrap();
        let h = h_component(1, ComponentTag::Tt, &t, 1.0, 0.25).unwrap().value();
        assert!((h.h1 - 2.0 * a_d(1, 1.0, 1.0)).abs() < 1e-15);
    }

    #[test]
    fn radial_two_dimensional_at_quarter_coupling() {
        for tau in [0.2, 1.0, 3.0] {
            let t = Jet::variable(tau, 0).unwrap();
            let h = h_component(2, ComponentTag::Rr, &t, 0.0, 0.25).unwrap().value();
            let expect = a_d(2, tau, 0.0) * 2.0 * tau / tau.tanh();
            assert!((h.h0 - expect).abs() < 1e-15 * expect.abs().max(1.0));
            assert_eq!(h.h1, 0.0);
        }
    }

    #[test]
    fn gaussian_stripped_form_is_linear_in_r_squared() {
        for d in 1..=3 {
            for &comp in ComponentTag::for_dimension(d) {
                let tau = 0.6;
                let t = Jet::variable(tau, 0).unwrap();
                let vals: Vec<f64> = [0.0, 1.0, 2.0]
                    .iter()
                    .map(|&r: &f64| {
                        let h = h_component(d, comp, &t, r, 0.3).unwrap().value();
                        h.h0 * (r * r * tau.tanh()).exp()
                    })
                    .collect();
                // values at y = r² ∈ {0, 1, 4}: second divided difference must vanish
                let dd1 = vals[1] - vals[0];
                let dd2 = (vals[2] - vals[1]) / 3.0;
                assert!((dd2 - dd1).abs() < 1e-12, "d={d} {comp:?}");
            }
        }
    }

    #[test]
    fn mehler_trace_and_symmetry() {
        let k = 1.0;
        assert!((mehler_kernel_1d(0.4, 0.3, -1.1, k).unwrap() - mehler_kernel_1d(0.4, -1.1, 0.3, k).unwrap()).abs() < 1e-16);
        assert!((heat_trace((1.0 + 2f64.sqrt()).ln(), 1).unwrap() - 0.5).abs() < 1e-15);
        let tau = 1.5;
        let series: f64 = (0..200).map(|n| (-tau * (2 * n + 1) as f64).exp()).sum();
        assert!((heat_trace(tau, 1).unwrap() - series).abs() < 1e-12);
        assert!(heat_trace(0.0, 1).is_err());
    }

    #[test]
    fn unsupported_dimension() {
        let t = Jet::variable(1.0, 2).unwrap();
        assert_eq!(
            h_component(4, ComponentTag::Tt, &t, 1.0, 0.0).unwrap_err(),
            Error::UnsupportedDimension(4)
        );
    }
}
