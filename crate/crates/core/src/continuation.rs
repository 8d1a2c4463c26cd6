//! Mellin continuation by integration by parts and extraction of the
//! regular part at u = 0.
//!
//! After n integrations by parts the u-dependent stress integrand reads
//! `k^{d+1} (κ/k)^u g(u)/Γ((u+1)/2) ∫ τ^{λ+u/2} ∂_τⁿ H^(u) dτ`, with
//! `λ = n − (d+3)/2` and `g(u) = (−1)ⁿ / Π_{j=1..n} ((u−d−3)/2 + j)`.
//! For odd d, g has a simple pole at u = 0. The regular part is written as
//! `∫ τ^λ e^{−r² tanh τ} [𝓟⁰ + (M + ln τ) 𝓟¹]` with `M = γ_EM + 2 ln(2κ/k)`,
//! where `𝓟^(a)(τ; r) = Σ_i p^(a)_i(τ) r^{2i}` has degree n + 1 in r².

use crate::error::{Error, Result};
use crate::jets::{Jet, MAX_ORDER};
use crate::kernels::{h_structure, require_stress_dimension, ComponentTag};
use crate::quadrature::{integrate_semiaxis, WeightedIntegrand};
use crate::specfun::digamma;
use std::f64::consts::PI;

/// Largest number of integrations by parts supported by the polynomial builder.
pub const MAX_PARTS: usize = 5;
/// Coefficient capacity of a 𝓟 polynomial (degree n + 1).
pub const MAX_TERMS: usize = MAX_PARTS + 2;

/// Minimal number of integrations by parts, the smallest n > (d + 1)/2.
pub fn minimal_parts(d: u32) -> usize {
    (d as usize + 1) / 2 + 1
}

/// Exponent λ = n − (d+3)/2 of the τ weight.
pub fn weight_exponent(d: u32, n: usize) -> f64 {
    n as f64 - 0.5 * (d as f64 + 3.0)
}

/// Which prefactor combination builds the 𝓟 polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    /// Hand-derived per-dimension coefficients (minimal n only).
    ClosedForm,
    /// Laurent expansion of g(u)/Γ((u+1)/2) carried out numerically, any n.
    Generic,
}

/// Laurent data of a simple-pole function at u = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaurentPair {
    pub pole_coeff: f64,
    pub regular_value: f64,
}

/// Prefactor g(u)/Γ((u+1)/2) ≈ pole/u + regular, from first-order u-jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrefactorLaurent {
    pub pole: f64,
    pub regular: f64,
}

/// Laurent coefficients of g(u)/Γ((u+1)/2) at u = 0 for dimension d and n parts.
pub fn prefactor_laurent(d: u32, n: usize) -> Result<PrefactorLaurent> {
    // regular factors kept as exact first-order Taylor pairs (c0, c1)
    let psi_half = digamma(0.5)?;
    let inv_sqrt_pi = 1.0 / PI.sqrt();
    let mut t0 = inv_sqrt_pi;
    let mut t1 = -0.5 * psi_half * inv_sqrt_pi;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    t0 *= sign;
    t1 *= sign;
    let mut has_pole = false;
    for j in 1..=n {
        let a = d as f64 + 3.0 - 2.0 * j as f64;
        if a == 0.0 {
            has_pole = true;
            continue;
        }
        // 2/(u − a) = −2/a − 2u/a² + O(u²)
        let (f0, f1) = (-2.0 / a, -2.0 / (a * a));
        let n0 = t0 * f0;
        let n1 = t0 * f1 + t1 * f0;
        t0 = n0;
        t1 = n1;
    }
    Ok(if has_pole {
        PrefactorLaurent {
            pole: 2.0 * t0,
            regular: 2.0 * t1,
        }
    } else {
        PrefactorLaurent { pole: 0.0, regular: t0 }
    })
}

/// Prefactor parameters for [`regular_part_at_zero`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrefactorSpec {
    pub d: u32,
    pub kappa_over_k: f64,
    pub n: usize,
}

impl PrefactorSpec {
    /// Parameters with the minimal number of integrations by parts.
    pub fn minimal(d: u32, kappa_over_k: f64) -> Self {
        PrefactorSpec {
            d,
            kappa_over_k,
            n: minimal_parts(d),
        }
    }
}

/// Pole and regular part at u = 0 of `(κ/k)^u g(u)/Γ((u+1)/2) (J0 + u J1)`, in units of k^{d+1}.
pub fn regular_part_at_zero(spec: PrefactorSpec, j0: f64, j1: f64) -> Result<LaurentPair> {
    let g = prefactor_laurent(spec.d, spec.n)?;
    let l = spec.kappa_over_k.ln();
    Ok(LaurentPair {
        pole_coeff: g.pole * j0,
        regular_value: g.regular * j0 + g.pole * (j1 + l * j0),
    })
}

/// Mellin transform of t^{-ρ} H(t) at σ, continued by n integrations by parts.
pub fn ibp_mellin<H>(h: H, rho: f64, n: usize, sigma: f64, tol: f64) -> Result<f64>
where
    H: Fn(&Jet) -> Result<Jet>,
{
    if n == 0 || n > MAX_ORDER {
        return Err(Error::domain("ibp_mellin", format!("number of parts {n} out of range")));
    }
    let mut denom = 1.0;
    for j in 0..n {
        let f = sigma - rho + j as f64;
        if f == 0.0 {
            return Err(Error::Pole {
                func: "ibp_mellin",
                at: sigma,
            });
        }
        denom *= f;
    }
    let alpha = sigma - rho + n as f64 - 1.0;
    let deriv = |t: f64| -> f64 {
        Jet::variable(t, n)
            .and_then(|x| h(&x))
            .and_then(|j| j.derivative(n))
            .unwrap_or(f64::NAN)
    };
    let w = WeightedIntegrand::new(alpha, 0, deriv);
    let r = integrate_semiaxis(&w, tol)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign / denom * r.value)
}

/// Coefficients (jets in τ) of 𝓟⁰ and 𝓟¹ at one base point.
#[derive(Clone, Copy, Debug)]
pub struct PolyJets {
    pub len: usize,
    pub p0: [Jet; MAX_TERMS],
    pub p1: [Jet; MAX_TERMS],
}

/// Coefficient values of 𝓟⁰ and 𝓟¹ at one τ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyValues {
    pub len: usize,
    pub p0: [f64; MAX_TERMS],
    pub p1: [f64; MAX_TERMS],
}

fn horner(c: &[f64], y: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * y + ci)
}

impl PolyValues {
    /// 𝓟⁰(τ; r).
    pub fn p0_at(&self, r: f64) -> f64 {
        horner(&self.p0[..self.len], r * r)
    }

    /// 𝓟¹(τ; r).
    pub fn p1_at(&self, r: f64) -> f64 {
        horner(&self.p1[..self.len], r * r)
    }
}

/// An r²-polynomial with real coefficients (one τ, one part).
#[derive(Clone, Debug, PartialEq)]
pub struct RSquarePoly {
    pub coeffs: Vec<f64>,
}

impl RSquarePoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, r: f64) -> f64 {
        horner(&self.coeffs, r * r)
    }
}

/// The τ-dependent families 𝓟⁰(τ; r), 𝓟¹(τ; r) for one (d, component, ξ, n).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PPolynomials {
    pub d: u32,
    pub comp: ComponentTag,
    pub xi: f64,
    pub n: usize,
    pub pipeline: Pipeline,
    /// 𝓟⁰ = a0 D[H0] + a1 D[H1], 𝓟¹ = b D[H0] with D = e^{r² tanh} ∂ⁿ.
    a0: f64,
    a1: f64,
    b: f64,
}

/// Build the 𝓟 polynomial families (closed-form pipeline, minimal n).
pub fn build_p_polynomials(d: u32, comp: ComponentTag, xi: f64, n: usize) -> Result<PPolynomials> {
    PPolynomials::new(d, comp, xi, n, Pipeline::ClosedForm)
}

impl PPolynomials {
    pub fn new(d: u32, comp: ComponentTag, xi: f64, n: usize, pipeline: Pipeline) -> Result<Self> {
        require_stress_dimension(d)?;
        if d == 1 && comp == ComponentTag::Theta1Theta1Reduced {
            return Err(Error::domain("build_p_polynomials", "no angular component for d = 1"));
        }
        if n <= (d as usize + 1) / 2 || n > MAX_PARTS {
            return Err(Error::domain(
                "build_p_polynomials",
                format!("n = {n} outside the admissible range for d = {d}"),
            ));
        }
        let sp = PI.sqrt();
        let (a0, a1, b) = match pipeline {
            Pipeline::ClosedForm => {
                if n != minimal_parts(d) {
                    return Err(Error::domain(
                        "build_p_polynomials",
                        "closed-form coefficients exist only for the minimal n",
                    ));
                }
                match d {
                    1 => (-1.0 / sp, -2.0 / sp, -1.0 / sp),
                    2 => (4.0 / (3.0 * sp), 0.0, 0.0),
                    _ => (-3.0 / (4.0 * sp), -1.0 / sp, -1.0 / (2.0 * sp)),
                }
            }
            Pipeline::Generic => {
                let g = prefactor_laurent(d, n)?;
                let b = 0.5 * g.pole;
                // M = −ψ(1/2) + 2 ln(κ/k): shift the constant part of the log term into 𝓟⁰
                let psi_half = digamma(0.5)?;
                (g.regular + psi_half * b, g.pole, b)
            }
        };
        Ok(PPolynomials {
            d,
            comp,
            xi,
            n,
            pipeline,
            a0,
            a1,
            b,
        })
    }

    /// Number of coefficients, n + 2.
    pub fn len(&self) -> usize {
        self.n + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// τ-weight exponent λ.
    pub fn lambda(&self) -> f64 {
        weight_exponent(self.d, self.n)
    }

    /// Coefficient jets of order `m` of 𝓟⁰ and 𝓟¹, given τ as a jet of order ≥ n + m.
    pub fn jets(&self, tau: &Jet, m: usize) -> Result<PolyJets> {
        let n = self.n;
        if tau.order() < n + m {
            return Err(Error::OrderExceeded {
                requested: n + m,
                available: tau.order(),
            });
        }
        let t = tau.truncate(n + m);
        let st = h_structure(self.d, self.comp, &t, self.xi)?;
        let th = t.tanh();
        let sech2 = 1.0 - th * th;
        let zero = Jet::constant(0.0, t.base(), m)?;
        // Y_k = e^{R tanh} ∂^k e^{−R tanh}, polynomials of degree k in R
        let mut y: Vec<Vec<Jet>> = Vec::with_capacity(n + 1);
        y.push(vec![Jet::constant(1.0, t.base(), n + m)?]);
        for k in 0..n {
            let prev = &y[k];
            let mut next = Vec::with_capacity(k + 2);
            for i in 0..=k + 1 {
                let mut term = if i <= k {
                    prev[i].differentiate()?
                } else {
                    Jet::constant(0.0, t.base(), n + m - k - 1)?
                };
                if i >= 1 {
                    term = term - sech2 * prev[i - 1];
                }
                next.push(term);
            }
            y.push(next);
        }
        let binom = |n: usize, k: usize| -> f64 {
            let mut c = 1.0;
            for j in 0..k {
                c = c * (n - j) as f64 / (j + 1) as f64;
            }
            c
        };
        let leibniz = |a: &Jet, b: &Jet| -> Result<[Jet; MAX_TERMS]> {
            let mut out = [zero; MAX_TERMS];
            for k in 0..=n {
                let c = binom(n, k);
                let da = a.differentiate_n(n - k)?;
                let db = b.differentiate_n(n - k)?;
                for i in 0..=k {
                    out[i] = out[i] + (y[k][i] * da * c).truncate(m);
                    out[i + 1] = out[i + 1] + (y[k][i] * db * c).truncate(m);
                }
            }
            Ok(out)
        };
        let d0 = leibniz(&st.m0c, &st.m0r)?;
        let d1 = leibniz(&st.m1c, &st.m1r)?;
        let mut out = PolyJets {
            len: n + 2,
            p0: [zero; MAX_TERMS],
            p1: [zero; MAX_TERMS],
        };
        for i in 0..n + 2 {
            out.p0[i] = d0[i] * self.a0 + d1[i] * self.a1;
            out.p1[i] = d0[i] * self.b;
        }
        Ok(out)
    }

    /// Coefficient values of 𝓟⁰ and 𝓟¹ at τ.
    pub fn values(&self, tau: f64) -> Result<PolyValues> {
        let t = Jet::variable(tau, self.n)?;
        let j = self.jets(&t, 0)?;
        let mut v = PolyValues {
            len: j.len,
            p0: [0.0; MAX_TERMS],
            p1: [0.0; MAX_TERMS],
        };
        for i in 0..j.len {
            v.p0[i] = j.p0[i].value();
            v.p1[i] = j.p1[i].value();
        }
        Ok(v)
    }

    /// 𝓟⁰ and 𝓟¹ at τ as r²-polynomials.
    pub fn polys_at(&self, tau: f64) -> Result<(RSquarePoly, RSquarePoly)> {
        let v = self.values(tau)?;
        Ok((
            RSquarePoly {
                coeffs: v.p0[..v.len].to_vec(),
            },
            RSquarePoly {
                coeffs: v.p1[..v.len].to_vec(),
            },
        ))
    }

    /// Regular part of the continued integrand at (τ, r), without e^{−r² tanh τ}:
    /// the closed-form combination 𝓟⁰ + (M + ln τ) 𝓟¹.
    pub fn regular_integrand(&self, tau: f64, r: f64, kappa_over_k: f64) -> Result<f64> {
        let v = self.values(tau)?;
        let m = crate::specfun::EULER_GAMMA + 2.0 * (2.0 * kappa_over_k).ln();
        Ok(v.p0_at(r) + (m + tau.ln()) * v.p1_at(r))
    }
}

/// Regular part at u = 0 of the u-dependent integrand at (τ, r), computed directly from
/// the Laurent data of the prefactor and the u-jet of τ^{u/2} (κ/k)^u H^(u); no 𝓟 split.
pub fn direct_regular_integrand(
    d: u32,
    comp: ComponentTag,
    xi: f64,
    n: usize,
    tau: f64,
    r: f64,
    kappa_over_k: f64,
) -> Result<f64> {
    let g = prefactor_laurent(d, n)?;
    let t = Jet::variable(tau, n)?;
    let st = h_structure(d, comp, &t, xi)?;
    let r2 = r * r;
    let gauss = (t.tanh() * -r2).exp();
    let h0 = gauss * (st.m0c + st.m0r * r2);
    let h1 = gauss * (st.m1c + st.m1r * r2);
    let d0 = h0.derivative(n)? * (r2 * tau.tanh()).exp();
    let d1 = h1.derivative(n)? * (r2 * tau.tanh()).exp();
    let l = kappa_over_k.ln() + 0.5 * tau.ln();
    Ok(g.regular * d0 + g.pole * (l * d0 + d1))
}
