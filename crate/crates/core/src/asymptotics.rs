//! Small-r and large-r expansions of integrals of the form
//! `F(r) = ∫₀^∞ τ^α e^{−r² tanh τ} Σ_j r^{2j} (p_j(τ) + ln τ ℓ_j(τ)) dτ`.
//!
//! Small r: Taylor expansion of the exponential, with a remainder constant
//! that bounds the error for every r > 0.
//! Large r: the substitution v = tanh τ gives a Laplace integral
//! `∫₀¹ e^{−r² v} v^λ (q⁰_i(v) + ln v q¹_i(v)) dv` per power r^{2i}, expanded by
//! Watson's lemma. The finite form keeps the incomplete-gamma coefficients
//! on (0, v₀); the limit form replaces them by their r → ∞ values.

use crate::continuation::{minimal_parts, PPolynomials, Pipeline};
use crate::error::{Error, Result};
use crate::jets::{Jet, MAX_ORDER};
use crate::kernels::{critical_coupling, ComponentTag, HarmonicConfig};
use crate::quadrature::{
    integrate_interval_tanh_sinh_vec, integrate_interval_vec, integrate_semiaxis_vec, SemiAxisOptions,
};
use crate::specfun::{digamma, g_log_gamma, gamma, lower_gamma};
use crate::stress::{conformal_split, SQUARE_REFERENCE_OFFSET};

/// A family of r²-polynomial integrands `τ^α Σ_j r^{2j} (p_j + ln τ ℓ_j)` with h(τ) = tanh τ.
pub trait RSquareFamily: Sync {
    /// Exponent α of the τ weight.
    fn alpha(&self) -> f64;
    /// Number of r² coefficients.
    fn len(&self) -> usize;
    /// Values of p_j and ℓ_j at τ > 0.
    fn values(&self, tau: f64, plain: &mut [f64], log: &mut [f64]) -> Result<()>;
    /// Taylor jets of order m in τ of p_j and ℓ_j at τ ≥ 0.
    fn tau_jets(&self, tau: f64, m: usize) -> Result<(Vec<Jet>, Vec<Jet>)>;
}

/// Conformal or non-conformal part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitPart {
    Diamond,
    Square,
}

impl SplitPart {
    pub fn name(&self) -> &'static str {
        match self {
            SplitPart::Diamond => "diamond",
            SplitPart::Square => "square",
        }
    }
}

/// T⁽⁰⁾ or T⁽¹⁾.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    T0,
    T1,
}

/// The integrand of T⁽⁰⁾ or T⁽¹⁾ of one split part of one component.
#[derive(Clone, Debug)]
pub struct StressFamily {
    terms: Vec<(f64, PPolynomials)>,
    order: Order,
}

impl StressFamily {
    pub fn new(d: u32, comp: ComponentTag, part: SplitPart, order: Order) -> Result<Self> {
        let n = minimal_parts(d);
        let xi_c = critical_coupling(d);
        let pc = PPolynomials::new(d, comp, xi_c, n, Pipeline::ClosedForm)?;
        let terms = match part {
            SplitPart::Diamond => vec![(1.0, pc)],
            SplitPart::Square => {
                let pr = PPolynomials::new(d, comp, xi_c + SQUARE_REFERENCE_OFFSET, n, Pipeline::ClosedForm)?;
                let inv = 1.0 / SQUARE_REFERENCE_OFFSET;
                vec![(inv, pr), (-inv, pc)]
            }
        };
        Ok(StressFamily { terms, order })
    }

    /// Family at a fixed coupling ξ.
    pub fn at_coupling(d: u32, comp: ComponentTag, xi: f64, order: Order) -> Result<Self> {
        let p = PPolynomials::new(d, comp, xi, minimal_parts(d), Pipeline::ClosedForm)?;
        Ok(StressFamily {
            terms: vec![(1.0, p)],
            order,
        })
    }
}

impl RSquareFamily for StressFamily {
    fn alpha(&self) -> f64 {
        self.terms[0].1.lambda()
    }

    fn len(&self) -> usize {
        self.terms[0].1.len()
    }

    fn values(&self, tau: f64, plain: &mut [f64], log: &mut [f64]) -> Result<()> {
        plain.iter_mut().for_each(|x| *x = 0.0);
        log.iter_mut().for_each(|x| *x = 0.0);
        for (c, p) in &self.terms {
            let v = p.values(tau)?;
            for j in 0..v.len {
                match self.order {
                    Order::T0 => {
                        plain[j] += c * v.p0[j];
                        log[j] += c * v.p1[j];
                    }
                    Order::T1 => plain[j] += c * v.p1[j],
                }
            }
        }
        Ok(())
    }

    fn tau_jets(&self, tau: f64, m: usize) -> Result<(Vec<Jet>, Vec<Jet>)> {
        let len = self.len();
        let zero = Jet::constant(0.0, tau, m)?;
        let mut plain = vec![zero; len];
        let mut log = vec![zero; len];
        for (c, p) in &self.terms {
            let t = Jet::variable(tau, p.n + m)?;
            let j = p.jets(&t, m)?;
            for i in 0..len {
                match self.order {
                    Order::T0 => {
                        plain[i] = plain[i] + j.p0[i] * *c;
                        log[i] = log[i] + j.p1[i] * *c;
                    }
                    Order::T1 => plain[i] = plain[i] + j.p1[i] * *c,
                }
            }
        }
        Ok((plain, log))
    }
}

/// One term `coefficient · r^{r_power} (ln r²)^{has_log}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesRow {
    pub r_power: f64,
    pub has_log: bool,
    pub coefficient: f64,
}

impl SeriesRow {
    pub fn eval(&self, r: f64) -> f64 {
        let v = self.coefficient * r.powf(self.r_power);
        if self.has_log {
            v * (r * r).ln()
        } else {
            v
        }
    }
}

/// Remainder constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RemainderConstant {
    /// |R| ≤ C r^{order} for every r > 0.
    Global { c: f64 },
    /// |R| ≤ (F + G ln r²) r^{order} for r ≥ 1.
    LogBound { f: f64, g: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemainderSpec {
    /// Power of r in the bound.
    pub order: f64,
    pub constant: RemainderConstant,
    pub validity: &'static str,
}

impl RemainderSpec {
    /// Upper bound on the truncation error at r.
    pub fn bound(&self, r: f64) -> f64 {
        let p = r.powf(self.order);
        match self.constant {
            RemainderConstant::Global { c } => c * p,
            RemainderConstant::LogBound { f, g } => (f + g * (r * r).ln()) * p,
        }
    }
}

/// Truncated expansion with its remainder bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesExpansion {
    pub rows: Vec<SeriesRow>,
    pub remainder: RemainderSpec,
}

impl SeriesExpansion {
    /// Partial sum at r.
    pub fn evaluate(&self, r: f64) -> f64 {
        self.rows.iter().map(|row| row.eval(r)).sum()
    }

    /// Partial sum over rows with r_power strictly above `min_power`.
    pub fn evaluate_above(&self, r: f64, min_power: f64) -> f64 {
        self.rows.iter().filter(|row| row.r_power > min_power + 1e-9).map(|row| row.eval(r)).sum()
    }

    /// Coefficient of r^{power} (ln r²)^{has_log}, zero when absent.
    pub fn coefficient(&self, power: f64, has_log: bool) -> f64 {
        self.rows
            .iter()
            .filter(|row| (row.r_power - power).abs() < 1e-9 && row.has_log == has_log)
            .map(|row| row.coefficient)
            .sum()
    }
}

const TAIL_WINDOW: f64 = 80.0;
const ABS_SPLIT: f64 = 1.0 / 1024.0;

/// Small-r expansion `Σ_{i≤N} a_i r^{2i}` with a global remainder constant C_{N+1}.
pub fn small_r_expansion<F: RSquareFamily + ?Sized>(family: &F, n_max: usize, tol: f64) -> Result<SeriesExpansion> {
    let len = family.len();
    if n_max + 1 < len {
        return Err(Error::domain(
            "small_r_expansion",
            format!("order N = {n_max} below the polynomial degree {}", len - 1),
        ));
    }
    let alpha = family.alpha();
    if !(alpha > -1.0) {
        return Err(Error::domain("small_r_expansion", format!("weight exponent {alpha} must exceed -1")));
    }
    // per j: signed moments ∫ τ^α p_j tanh^k for k ≤ N − j
    let offsets: Vec<usize> = (0..len)
        .scan(0, |acc, j| {
            let o = *acc;
            *acc += n_max - j + 1;
            Some(o)
        })
        .collect();
    let dim = offsets[len - 1] + n_max - (len - 1) + 1;
    let weighted = |tau: f64| -> Option<Vec<f64>> {
        let mut plain = vec![0.0; len];
        let mut log = vec![0.0; len];
        family.values(tau, &mut plain, &mut log).ok()?;
        let w = tau.powf(alpha);
        let lt = tau.ln();
        Some((0..len).map(|j| w * (plain[j] + lt * log[j])).collect())
    };
    let f = |tau: f64, out: &mut [f64]| match weighted(tau) {
        Some(p) => {
            let h = tau.tanh();
            for j in 0..len {
                let mut hk = 1.0;
                for k in 0..=n_max - j {
                    out[offsets[j] + k] = p[j] * hk;
                    hk *= h;
                }
            }
        }
        None => out.iter_mut().for_each(|x| *x = f64::NAN),
    };
    let res = integrate_semiaxis_vec(f, dim, tol, SemiAxisOptions::default())?;
    let m = &res.values;
    // ∫ |τ^α p_j| tanh^{N−j+1}; |·| has kinks, so Gauss–Kronrod away from the endpoint
    let g = |tau: f64, out: &mut [f64]| match weighted(tau) {
        Some(p) => {
            let h = tau.tanh();
            for j in 0..len {
                out[j] = p[j].abs() * h.powi((n_max - j + 1) as i32);
            }
        }
        None => out.iter_mut().for_each(|x| *x = f64::NAN),
    };
    let abs_tol = tol.max(1e-10);
    let near = integrate_interval_tanh_sinh_vec(g, len, 0.0, ABS_SPLIT, abs_tol)?;
    let far = integrate_interval_vec(g, len, ABS_SPLIT, TAIL_WINDOW, abs_tol)?;
    let mut fact = vec![1.0; n_max + 3];
    for k in 1..fact.len() {
        fact[k] = fact[k - 1] * k as f64;
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for i in 0..=n_max {
        let mut a = 0.0;
        for j in 0..=i.min(len - 1) {
            let k = i - j;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            a += sign / fact[k] * m[offsets[j] + k];
        }
        rows.push(SeriesRow {
            r_power: 2.0 * i as f64,
            has_log: false,
            coefficient: a,
        });
    }
    let c: f64 = (0..len)
        .map(|j| {
            let abs = near.values[j] + near.err_estimates[j] + far.values[j] + far.err_estimates[j];
            abs / fact[n_max - j + 1]
        })
        .sum();
    Ok(SeriesExpansion {
        rows,
        remainder: RemainderSpec {
            order: 2.0 * (n_max + 1) as f64,
            constant: RemainderConstant::Global { c },
            validity: "all r > 0",
        },
    })
}

/// v-domain data at one v: jets of q⁰_i and q¹_i for each r² power i.
#[derive(Clone, Debug)]
pub struct VDomainJets {
    pub lambda: f64,
    pub q0: Vec<Jet>,
    pub q1: Vec<Jet>,
}

/// Jets of q⁰_i, q¹_i of order m at v ∈ [0, 1), where τ = artanh v and
/// `v^λ (q⁰_i + ln v q¹_i) dv = τ^λ (p_i + ln τ ℓ_i) dτ`.
pub fn v_domain_jets<F: RSquareFamily + ?Sized>(family: &F, v: f64, m: usize) -> Result<VDomainJets> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::domain("v_domain_jets", format!("requires 0 <= v < 1, got {v}")));
    }
    if m > MAX_ORDER {
        return Err(Error::OrderExceeded {
            requested: m,
            available: MAX_ORDER,
        });
    }
    let lambda = family.alpha();
    let vj = Jet::variable(v, m)?;
    let tj = vj.artanh()?;
    let tau0 = tj.value();
    let ratio = vj.artanhc()?; // τ/v
    let ln_ratio = ratio.ln()?;
    let jac = (1.0 - vj * vj).recip()?;
    let pre = if lambda == 0.0 { jac } else { ratio.powf(lambda)? * jac };
    let (plain, log) = family.tau_jets(tau0, m)?;
    let mut q0 = Vec::with_capacity(plain.len());
    let mut q1 = Vec::with_capacity(plain.len());
    for (p, l) in plain.iter().zip(&log) {
        let pc = tj.compose_series(tau0, p.coeffs());
        let lc = tj.compose_series(tau0, l.coeffs());
        q0.push(pre * (pc + ln_ratio * lc));
        q1.push(pre * lc);
    }
    Ok(VDomainJets { lambda, q0, q1 })
}

/// One Watson-lemma term for power r^{2i} and Taylor index m.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiniteRow {
    pub i: usize,
    pub m: usize,
    pub q0: f64,
    pub q1: f64,
}

/// Incomplete-gamma form `Σ (A_{i,m}(v₀,r) + B_{i,m}(v₀,r) ln r²) r^{2(i−m−λ−1)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteForm {
    pub lambda: f64,
    pub v0: f64,
    pub rows: Vec<FiniteRow>,
}

impl FiniteForm {
    fn power(&self, row: &FiniteRow) -> f64 {
        2.0 * (row.i as f64 - row.m as f64 - self.lambda - 1.0)
    }

    /// Rows with A and B evaluated at r.
    pub fn coefficients_at(&self, r: f64) -> Result<Vec<SeriesRow>> {
        let z = self.v0 * r * r;
        let mut out = Vec::with_capacity(2 * self.rows.len());
        for row in &self.rows {
            let s = row.m as f64 + self.lambda + 1.0;
            let g = lower_gamma(s, z)?;
            let gl = if row.q1 != 0.0 { g_log_gamma(s, z)? } else { 0.0 };
            let p = self.power(row);
            out.push(SeriesRow {
                r_power: p,
                has_log: false,
                coefficient: row.q0 * g + row.q1 * gl,
            });
            out.push(SeriesRow {
                r_power: p,
                has_log: true,
                coefficient: -row.q1 * g,
            });
        }
        Ok(out)
    }

    /// Finite-form value at r.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        Ok(self.coefficients_at(r)?.iter().map(|row| row.eval(r)).sum())
    }
}

/// Both large-r forms.
#[derive(Clone, Debug, PartialEq)]
pub struct LargeRExpansion {
    pub finite: FiniteForm,
    pub limit: SeriesExpansion,
}

fn merge_rows(raw: Vec<SeriesRow>) -> Vec<SeriesRow> {
    let mut rows: Vec<SeriesRow> = Vec::new();
    for row in raw {
        match rows
            .iter_mut()
            .find(|r| (r.r_power - row.r_power).abs() < 1e-9 && r.has_log == row.has_log)
        {
            Some(r) => r.coefficient += row.coefficient,
            None => rows.push(row),
        }
    }
    rows.sort_by(|a, b| b.r_power.total_cmp(&a.r_power).then(b.has_log.cmp(&a.has_log)));
    rows
}

/// Large-r expansion keeping Taylor orders m ≤ K + i − 1 for the r^{2i} part.
pub fn large_r_expansion<F: RSquareFamily + ?Sized>(family: &F, k: usize, v0: f64, tol: f64) -> Result<LargeRExpansion> {
    if !(v0 > 0.0 && v0 < 1.0) {
        return Err(Error::domain("large_r_expansion", format!("v0 = {v0} outside (0, 1)")));
    }
    if k == 0 {
        return Err(Error::domain("large_r_expansion", "K must be at least 1"));
    }
    let lambda = family.alpha();
    if !(lambda > -1.0) {
        return Err(Error::domain("large_r_expansion", format!("λ = {lambda} must exceed -1")));
    }
    let len = family.len();
    let top = k + len - 1; // highest derivative order needed, M + 1 for i = N
    if top > MAX_ORDER {
        return Err(Error::OrderExceeded {
            requested: top,
            available: MAX_ORDER,
        });
    }
    let at0 = v_domain_jets(family, 0.0, top)?;
    let mut frows = Vec::new();
    let mut lrows = Vec::new();
    for i in 0..len {
        for m in 0..k + i {
            let q0 = at0.q0[i].coeff(m);
            let q1 = at0.q1[i].coeff(m);
            frows.push(FiniteRow { i, m, q0, q1 });
            let s = m as f64 + lambda + 1.0;
            let g = gamma(s)?;
            let p = 2.0 * (i as f64 - m as f64 - lambda - 1.0);
            lrows.push(SeriesRow {
                r_power: p,
                has_log: false,
                coefficient: g * (q0 + digamma(s)? * q1),
            });
            lrows.push(SeriesRow {
                r_power: p,
                has_log: true,
                coefficient: -g * q1,
            });
        }
    }
    let (f, g) = large_r_constants(family, k, v0, tol)?;
    let remainder = RemainderSpec {
        order: -2.0 * (k as f64 + lambda + 1.0),
        constant: RemainderConstant::LogBound { f, g },
        validity: "r >= 1",
    };
    Ok(LargeRExpansion {
        finite: FiniteForm {
            lambda,
            v0,
            rows: frows,
        },
        limit: SeriesExpansion {
            rows: merge_rows(lrows),
            remainder,
        },
    })
}

/// Number of sample points for the derivative suprema on (0, v₀).
pub const SUPREMUM_SAMPLES: usize = 513;
/// Safety factor applied to sampled suprema.
pub const SUPREMUM_SAFETY: f64 = 1.1;


/// Constants (F, G) of the large-r bound `(F + G ln r²) r^{−2(K+λ+1)}`, r ≥ 1.
fn large_r_constants<F: RSquareFamily + ?Sized>(family: &F, k: usize, v0: f64, tol: f64) -> Result<(f64, f64)> {
    let len = family.len();
    let lambda = family.alpha();
    let top = k + len - 1;
    // suprema of |q^{(M+1)}| with M = K + i − 1
    let mut s0 = vec![0.0f64; len];
    let mut s1 = vec![0.0f64; len];
    for j in 0..SUPREMUM_SAMPLES {
        let v = v0 * j as f64 / (SUPREMUM_SAMPLES - 1) as f64;
        let q = v_domain_jets(family, v, top)?;
        for i in 0..len {
            let mp1 = k + i;
            s0[i] = s0[i].max(q.q0[i].derivative(mp1)?.abs());
            s1[i] = s1[i].max(q.q1[i].derivative(mp1)?.abs());
        }
    }
    // τ-domain tails beyond τ₀ = artanh v₀
    let tau0 = v0.atanh();
    // |·| has kinks, so adaptive Gauss–Kronrod on a window long enough for e^{−τ} decay
    let tails = integrate_interval_vec(
        |tau: f64, out: &mut [f64]| {
            let mut plain = vec![0.0; len];
            let mut log = vec![0.0; len];
            if family.values(tau, &mut plain, &mut log).is_err() {
                out.iter_mut().for_each(|x| *x = f64::NAN);
                return;
            }
            let w = tau.powf(lambda);
            let lr = (tau / tau.tanh()).ln();
            let lt = tau.tanh().ln();
            for i in 0..len {
                out[2 * i] = (w * (plain[i] + lr * log[i])).abs();
                out[2 * i + 1] = (w * log[i] * lt).abs();
            }
        },
        2 * len,
        tau0,
        tau0 + TAIL_WINDOW,
        tol,
    )?;
    let mut f = 0.0;
    let mut g = 0.0;
    let mut fact = 1.0;
    for m in 1..=k {
        fact *= m as f64;
    }
    for i in 0..len {
        if i > 0 {
            fact *= (k + i) as f64;
        }
        // fact = (M + 1)! with M = K + i − 1
        let s = (k + i) as f64 + lambda + 1.0;
        let gs = gamma(s)?;
        let c0 = SUPREMUM_SAFETY * s0[i] / fact;
        let c1 = SUPREMUM_SAFETY * s1[i] / fact;
        g += c1 * gs;
        f += c0 * gs + c1 / (s * s);
        let p = i as f64 + k as f64 + lambda + 1.0;
        let peak = (p / (std::f64::consts::E * v0)).powf(p);
        let tail = tails.values[2 * i] + tails.values[2 * i + 1] + tails.err_estimates[2 * i] + tails.err_estimates[2 * i + 1];
        f += peak * tail;
    }
    Ok((f, g))
}

/// Default K per dimension.
pub fn default_k(d: u32) -> usize {
    match d {
        1 => 3,
        2 => 5,
        _ => 4,
    }
}

/// One probe of [`asymptotic_match_report`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatchRow {
    pub r: f64,
    pub numeric: f64,
    pub series: f64,
    pub diff: f64,
    pub bound: f64,
}

/// Numeric T⁽⁰⁾ of one split part against its truncated large-r series.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchReport {
    pub rows: Vec<MatchRow>,
    /// Exponent e of the expected decay r^{e} (possibly times ln r²).
    pub expected_exponent: f64,
    /// log-log slopes of |diff| between consecutive probes.
    pub slopes: Vec<f64>,
    /// Every slope within ±1 of the expected exponent.
    pub consistent: bool,
}

/// Options for [`asymptotic_match_report`].
#[derive(Clone, Copy, Debug)]
pub struct MatchOptions {
    pub k: usize,
    pub v0: f64,
    /// Keep series rows with power strictly above this; defaults to −2(K + λ + 1).
    pub cutoff: Option<f64>,
    pub tol: f64,
}

impl MatchOptions {
    pub fn for_dimension(d: u32) -> Self {
        MatchOptions {
            k: default_k(d),
            v0: 0.5,
            cutoff: None,
            tol: 1e-13,
        }
    }
}

pub fn asymptotic_match_report(
    cfg: &HarmonicConfig,
    comp: ComponentTag,
    part: SplitPart,
    r_probe: &[f64],
    opts: MatchOptions,
) -> Result<MatchReport> {
    cfg.require_stress_dimension()?;
    let family = StressFamily::new(cfg.d, comp, part, Order::T0)?;
    let exp = large_r_expansion(&family, opts.k, opts.v0, 1e-10)?;
    let cutoff = opts.cutoff.unwrap_or(exp.limit.remainder.order);
    let mut rows = Vec::with_capacity(r_probe.len());
    for &r in r_probe {
        let s = conformal_split(cfg, comp, r, opts.tol)?;
        let numeric = match part {
            SplitPart::Diamond => s.diamond.t0,
            SplitPart::Square => s.square.t0,
        };
        let series = exp.limit.evaluate_above(r, cutoff);
        let bound = if r >= 1.0 { exp.limit.remainder.bound(r) } else { f64::INFINITY };
        rows.push(MatchRow {
            r,
            numeric,
            series,
            diff: (numeric - series).abs(),
            bound,
        });
    }
    let slopes: Vec<f64> = rows
        .windows(2)
        .map(|w| (w[1].diff / w[0].diff).ln() / (w[1].r / w[0].r).ln())
        .collect();
    let consistent = slopes.iter().all(|s| (s - cutoff).abs() <= 1.0);
    Ok(MatchReport {
        rows,
        expected_exponent: cutoff,
        slopes,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(p: f64, log: bool, c: f64) -> SeriesRow {
        SeriesRow {
            r_power: p,
            has_log: log,
            coefficient: c,
        }
    }

    #[test]
    fn rows_merge_and_sort() {
        let m = merge_rows(vec![row(-2.0, false, 1.0), row(2.0, false, 3.0), row(-2.0, false, 0.5), row(2.0, true, 1.0)]);
        assert_eq!(m, vec![row(2.0, true, 1.0), row(2.0, false, 3.0), row(-2.0, false, 1.5)]);
    }

    #[test]
    fn series_evaluation() {
        let s = SeriesExpansion {
            rows: vec![row(2.0, true, 1.0), row(-2.0, false, 4.0)],
            remainder: RemainderSpec {
                order: -4.0,
                constant: RemainderConstant::LogBound { f: 1.0, g: 2.0 },
                validity: "r >= 1",
            },
        };
        let r: f64 = 2.0;
        assert!((s.evaluate(r) - (4.0 * 4f64.ln() + 1.0)).abs() < 1e-15);
        assert!((s.evaluate_above(r, -2.0) - 4.0 * 4f64.ln()).abs() < 1e-15);
        assert_eq!(s.coefficient(-2.0, false), 4.0);
        assert_eq!(s.coefficient(-2.0, true), 0.0);
        assert!((s.remainder.bound(r) - (1.0 + 2.0 * 4f64.ln()) / 16.0).abs() < 1e-15);
    }

    #[test]
    fn argument_checks() {
        let f = StressFamily::new(1, ComponentTag::Tt, SplitPart::Diamond, Order::T0).unwrap();
        assert!(small_r_expansion(&f, 0, 1e-10).is_err());
        assert!(large_r_expansion(&f, 3, 1.0, 1e-10).is_err());
        assert!(large_r_expansion(&f, 0, 0.5, 1e-10).is_err());
        assert!(matches!(large_r_expansion(&f, 20, 0.5, 1e-10), Err(Error::OrderExceeded { .. })));
        assert!(v_domain_jets(&f, 1.0, 2).is_err());
        assert!(StressFamily::new(4, ComponentTag::Tt, SplitPart::Diamond, Order::T0).is_err());
    }

    #[test]
    fn v_jets_at_origin_start_with_tau_jets() {
        // at v = 0 the map τ = artanh v has unit slope, so the leading terms agree
        let f = StressFamily::new(3, ComponentTag::Rr, SplitPart::Diamond, Order::T0).unwrap();
        let vj = v_domain_jets(&f, 0.0, 3).unwrap();
        let (p, _) = f.tau_jets(0.0, 3).unwrap();
        for (q, p) in vj.q0.iter().zip(&p) {
            assert!((q.coeff(0) - p.coeff(0)).abs() < 1e-14);
            assert!((q.coeff(1) - p.coeff(1)).abs() < 1e-13);
        }
    }
}
