//! Truncated Taylor series ("jets") in one variable.
//!
//! A [`Jet`] stores the Taylor coefficients `c_m` of a function at a base
//! point, `f(x) ≈ Σ c_m (x - base)^m`, up to a runtime order bounded by
//! [`MAX_ORDER`]. Storage is a fixed array, so jet arithmetic never allocates.

use crate::error::{Error, Result};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Largest supported jet order.
pub const MAX_ORDER: usize = 12;
const CAP: usize = MAX_ORDER + 1;

/// Truncated Taylor series of order `order` at `base`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    base: f64,
    order: usize,
    c: [f64; CAP],
}

/// Elementary functions that can be lifted to jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Elementary {
    Exp,
    Log,
    Sinh,
    Cosh,
    Tanh,
    Arcth,
    Pow(f64),
    Reciprocal,
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::OrderExceeded {
            requested: order,
            available: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

impl Jet {
    /// Jet with explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(base: f64, coeffs: &[f64]) -> Result<Jet> {
        if coeffs.is_empty() {
            return Err(Error::domain("Jet::from_coeffs", "empty coefficient list"));
        }
        let order = coeffs.len() - 1;
        check_order(order)?;
        let mut c = [0.0; CAP];
        c[..=order].copy_from_slice(coeffs);
        Ok(Jet { base, order, c })
    }

    /// Constant function `value`.
    pub fn constant(value: f64, base: f64, order: usize) -> Result<Jet> {
        check_order(order)?;
        let mut c = [0.0; CAP];
        c[0] = value;
        Ok(Jet { base, order, c })
    }

    /// The identity function `x ↦ x` at `base`.
    pub fn variable(base: f64, order: usize) -> Result<Jet> {
        check_order(order)?;
        let mut c = [0.0; CAP];
        c[0] = base;
        if order >= 1 {
            c[1] = 1.0;
        }
        Ok(Jet { base, order, c })
    }

    fn blank(&self, order: usize) -> Jet {
        Jet {
            base: self.base,
            order,
            c: [0.0; CAP],
        }
    }

    fn same_shape_const(&self, v: f64) -> Jet {
        let mut j = self.blank(self.order);
        j.c[0] = v;
        j
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Taylor coefficients `c_0..=c_order`.
    pub fn coeffs(&self) -> &[f64] {
        &self.c[..=self.order]
    }

    /// Coefficient `c_m` (zero beyond the order).
    pub fn coeff(&self, m: usize) -> f64 {
        if m <= self.order {
            self.c[m]
        } else {
            0.0
        }
    }

    /// Function value at the base point.
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `f^(m)(base) = m! c_m`.
    pub fn derivative(&self, m: usize) -> Result<f64> {
        if m > self.order {
            return Err(Error::OrderExceeded {
                requested: m,
                available: self.order,
            });
        }
        let mut f = 1.0;
        for k in 2..=m {
            f *= k as f64;
        }
        Ok(f * self.c[m])
    }

    /// Same jet truncated to a lower order.
    pub fn truncate(&self, order: usize) -> Jet {
        let order = order.min(self.order);
        let mut j = *self;
        for v in j.c.iter_mut().skip(order + 1) {
            *v = 0.0;
        }
        j.order = order;
        j
    }

    /// Jet of the derivative, one order lower.
    pub fn differentiate(&self) -> Result<Jet> {
        if self.order == 0 {
            return Err(Error::OrderExceeded {
                requested: 1,
                available: 0,
            });
        }
        let mut j = self.blank(self.order - 1);
        for m in 0..self.order {
            j.c[m] = (m + 1) as f64 * self.c[m + 1];
        }
        Ok(j)
    }

    /// Jet of the n-th derivative, `n` orders lower.
    pub fn differentiate_n(&self, n: usize) -> Result<Jet> {
        if n > self.order {
            return Err(Error::OrderExceeded {
                requested: n,
                available: self.order,
            });
        }
        let mut j = self.blank(self.order - n);
        for m in 0..=self.order - n {
            let mut f = 1.0;
            for k in (m + 1)..=(m + n) {
                f *= k as f64;
            }
            j.c[m] = f * self.c[m + n];
        }
        Ok(j)
    }

    /// Lift an elementary function: jet of `f ∘ self`.
    pub fn lift(&self, f: Elementary) -> Result<Jet> {
        match f {
            Elementary::Exp => Ok(self.exp()),
            Elementary::Log => self.ln(),
            Elementary::Sinh => Ok(self.sinh()),
            Elementary::Cosh => Ok(self.cosh()),
            Elementary::Tanh => Ok(self.tanh()),
            Elementary::Arcth => self.artanh(),
            Elementary::Pow(a) => self.powf(a),
            Elementary::Reciprocal => self.recip(),
        }
    }

    pub fn exp(&self) -> Jet {
        let mut b = self.blank(self.order);
        b.c[0] = self.c[0].exp();
        for k in 1..=self.order {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * self.c[j] * b.c[k - j];
            }
            b.c[k] = s / k as f64;
        }
        b
    }

    /// Natural logarithm; requires a positive constant term.
    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.c[0];
        if !(a0 > 0.0) {
            return Err(Error::domain("jet ln", format!("constant term {a0} not positive")));
        }
        let mut b = self.blank(self.order);
        b.c[0] = a0.ln();
        for k in 1..=self.order {
            let mut s = 0.0;
            for j in 1..k {
                s += j as f64 * b.c[j] * self.c[k - j];
            }
            b.c[k] = (self.c[k] - s / k as f64) / a0;
        }
        Ok(b)
    }

    /// Real power; requires a positive constant term.
    pub fn powf(&self, alpha: f64) -> Result<Jet> {
        let a0 = self.c[0];
        if !(a0 > 0.0) {
            return Err(Error::domain("jet pow", format!("constant term {a0} not positive")));
        }
        let mut b = self.blank(self.order);
        b.c[0] = a0.powf(alpha);
        for k in 1..=self.order {
            let mut s = 0.0;
            for j in 1..=k {
                s += ((alpha + 1.0) * j as f64 - k as f64) * self.c[j] * b.c[k - j];
            }
            b.c[k] = s / (k as f64 * a0);
        }
        Ok(b)
    }

    /// Integer power by repeated multiplication (any constant term).
    pub fn powi(&self, n: u32) -> Jet {
        let mut result = self.same_shape_const(1.0);
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }

    /// Reciprocal; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Jet> {
        let a0 = self.c[0];
        if a0 == 0.0 || !a0.is_finite() {
            return Err(Error::domain("jet reciprocal", format!("constant term {a0}")));
        }
        let mut b = self.blank(self.order);
        b.c[0] = 1.0 / a0;
        for k in 1..=self.order {
            let mut s = 0.0;
            for j in 1..=k {
                s += self.c[j] * b.c[k - j];
            }
            b.c[k] = -s / a0;
        }
        Ok(b)
    }

    pub fn sqrt(&self) -> Result<Jet> {
        self.powf(0.5)
    }

    /// Coupled sinh/cosh recurrence.
    fn sinh_cosh(&self) -> (Jet, Jet) {
        let mut s = self.blank(self.order);
        let mut c = self.blank(self.order);
        s.c[0] = self.c[0].sinh();
        c.c[0] = self.c[0].cosh();
        for k in 1..=self.order {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                let w = j as f64 * self.c[j];
                ss += w * c.c[k - j];
                cc += w * s.c[k - j];
            }
            s.c[k] = ss / k as f64;
            c.c[k] = cc / k as f64;
        }
        (s, c)
    }

    pub fn sinh(&self) -> Jet {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Jet {
        self.sinh_cosh().1
    }

    /// tanh through the exponential: tanh a = (1 - e^{-2a}) / (1 + e^{-2a}) for a ≥ 0.
    pub fn tanh(&self) -> Jet {
        if self.c[0] < 0.0 {
            return -(-*self).tanh();
        }
        let e = (*self * -2.0).exp();
        let mut num = -e;
        num.c[0] = -(-2.0 * self.c[0]).exp_m1();
        let den = e + 1.0;
        let mut t = num / den;
        t.c[0] = self.c[0].tanh();
        t
    }

    /// artanh through the logarithm: artanh a = ln((1 + a)/(1 - a)) / 2; requires |a₀| < 1.
    pub fn artanh(&self) -> Result<Jet> {
        let a0 = self.c[0];
        if !(a0.abs() < 1.0) {
            return Err(Error::domain("jet arcth", format!("constant term {a0} outside (-1, 1)")));
        }
        let ratio = (*self + 1.0) / (1.0 - *self);
        let mut out = ratio.ln()? * 0.5;
        out.c[0] = a0.atanh();
        Ok(out)
    }

    /// Power-series composition Σ f_k (self - center)^k.
    pub fn compose_series(&self, center: f64, f: &[f64]) -> Jet {
        let mut delta = *self;
        delta.c[0] -= center;
        let mut acc = self.same_shape_const(0.0);
        for &fk in f.iter().rev() {
            acc = acc * delta + fk;
        }
        acc
    }

    /// Horner evaluation of Σ a_k y^k with y = self².
    fn even_series(&self, a: &[f64]) -> Jet {
        let y = *self * *self;
        let mut acc = self.same_shape_const(0.0);
        for &ak in a.iter().rev() {
            acc = acc * y + ak;
        }
        acc
    }

    /// x / sinh x, analytic at 0 (value 1).
    pub fn sinhc(&self) -> Jet {
        let x0 = self.c[0];
        if x0 < 0.0 {
            return (-*self).sinhc();
        }
        if x0 < 1.0 {
            return self.even_series(&series().sinhc);
        }
        // 2x e^{-x} / (1 - e^{-2x})
        let e = (-*self).exp();
        let den = 1.0 - e * e;
        (*self * e * 2.0) / den
    }

    /// x coth x, analytic at 0 (value 1).
    pub fn xcoth(&self) -> Jet {
        let x0 = self.c[0];
        if x0 < 0.0 {
            return (-*self).xcoth();
        }
        if x0 < 1.0 {
            return self.even_series(&series().xcoth);
        }
        let e2 = (*self * -2.0).exp();
        *self * (e2 + 1.0) / (1.0 - e2)
    }

    /// artanh(x) / x, analytic at 0 (value 1); requires |x₀| < 1.
    pub fn artanhc(&self) -> Result<Jet> {
        let x0 = self.c[0];
        if !(x0.abs() < 1.0) {
            return Err(Error::domain("jet arcth(x)/x", format!("constant term {x0} outside (-1, 1)")));
        }
        if x0.abs() < 0.5 {
            let a: Vec<f64> = (0..40).map(|k| 1.0 / (2 * k + 1) as f64).collect();
            return Ok(self.even_series(&a));
        }
        Ok(self.artanh()? / *self)
    }
}

struct EvenSeries {
    sinhc: Vec<f64>,
    xcoth: Vec<f64>,
}

const SERIES_TERMS: usize = 26;

fn series() -> &'static EvenSeries {
    static CELL: OnceLock<EvenSeries> = OnceLock::new();
    CELL.get_or_init(|| {
        // sinh(x)/x = Σ y^k/(2k+1)!, cosh x = Σ y^k/(2k)!, y = x²
        let mut s = vec![0.0; SERIES_TERMS];
        let mut ch = vec![0.0; SERIES_TERMS];
        let mut f = 1.0;
        for k in 0..SERIES_TERMS {
            if k > 0 {
                f *= (2 * k) as f64;
            }
            ch[k] = 1.0 / f;
            s[k] = 1.0 / (f * (2 * k + 1) as f64);
            f *= (2 * k + 1) as f64;
        }
        let mut inv = vec![0.0; SERIES_TERMS];
        inv[0] = 1.0;
        for n in 1..SERIES_TERMS {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += s[k] * inv[n - k];
            }
            inv[n] = -acc;
        }
        let mut xc = vec![0.0; SERIES_TERMS];
        for n in 0..SERIES_TERMS {
            for k in 0..=n {
                xc[n] += ch[k] * inv[n - k];
            }
        }
        EvenSeries { sinhc: inv, xcoth: xc }
    })
}

fn zip_with(a: &Jet, b: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
    debug_assert!(a.base == b.base || a.base.is_nan() || b.base.is_nan());
    let order = a.order.min(b.order);
    let mut j = a.blank(order);
    for m in 0..=order {
        j.c[m] = f(a.c[m], b.c[m]);
    }
    j
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        zip_with(&self, &o, |x, y| x + y)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        zip_with(&self, &o, |x, y| x - y)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut j = self.blank(order);
        for k in 0..=order {
            let mut s = 0.0;
            for i in 0..=k {
                s += self.c[i] * o.c[k - i];
            }
            j.c[k] = s;
        }
        j
    }
}

/// Jet division; the divisor's constant term must be nonzero.
impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut q = self.blank(order);
        let b0 = o.c[0];
        for k in 0..=order {
            let mut s = self.c[k];
            for j in 1..=k {
                s -= o.c[j] * q.c[k - j];
            }
            q.c[k] = s / b0;
        }
        q
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let mut j = self;
        for v in j.c.iter_mut() {
            *v = -*v;
        }
        j
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, o: f64) -> Jet {
        let mut j = self;
        j.c[0] += o;
        j
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, o: f64) -> Jet {
        let mut j = self;
        j.c[0] -= o;
        j
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        -o + self
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        o + self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, o: f64) -> Jet {
        let mut j = self;
        for v in j.c.iter_mut() {
            *v *= o;
        }
        j
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        o * self
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, o: f64) -> Jet {
        self * (1.0 / o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinh_of_identity_at_zero() {
        let x = Jet::variable(0.0, 5).unwrap();
        let s = x.lift(Elementary::Sinh).unwrap();
        let expect = [0.0, 1.0, 0.0, 1.0 / 6.0, 0.0, 1.0 / 120.0];
        for (a, b) in s.coeffs().iter().zip(expect) {
            assert!((a - b).abs() < 1e-16);
        }
    }

    #[test]
    fn arcth_of_identity_at_zero() {
        let x = Jet::variable(0.0, 5).unwrap();
        let a = x.lift(Elementary::Arcth).unwrap();
        let expect = [0.0, 1.0, 0.0, 1.0 / 3.0, 0.0, 1.0 / 5.0];
        for (a, b) in a.coeffs().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(Jet::variable(1.0, 3).unwrap().artanh().is_err());
    }

    #[test]
    fn second_derivative_of_inverse_sinh_squared() {
        let t = 0.7f64;
        let x = Jet::variable(t, 4).unwrap();
        let f = x.sinh().powi(2).recip().unwrap();
        let sh = t.sinh();
        let expect = 6.0 / sh.powi(4) + 4.0 / sh.powi(2);
        assert!((f.derivative(2).unwrap() - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn exp_derivatives_and_constants() {
        let x = Jet::variable(1.3, 6).unwrap();
        let e = x.exp();
        assert!((e.derivative(3).unwrap() - 1.3f64.exp()).abs() < 1e-13);
        let c = Jet::constant(2.5, 0.3, 6).unwrap();
        for m in 1..=6 {
            assert_eq!(c.derivative(m).unwrap(), 0.0);
        }
        assert!(matches!(c.derivative(7), Err(Error::OrderExceeded { .. })));
        assert!(Jet::variable(0.0, MAX_ORDER + 1).is_err());
    }

    #[test]
    fn sinhc_and_xcoth_match_direct_forms() {
        for &x0 in &[0.0, 0.01, 0.4, 0.99, 1.0, 1.7, 6.0] {
            let x = Jet::variable(x0, 8).unwrap();
            let s = x.sinhc();
            let c = x.xcoth();
            if x0 >= 0.4 {
                let direct_s = x / x.sinh();
                let direct_c = x * x.cosh() / x.sinh();
                for m in 0..=8 {
                    assert!((s.coeff(m) - direct_s.coeff(m)).abs() < 1e-12, "sinhc {x0} {m}");
                    assert!((c.coeff(m) - direct_c.coeff(m)).abs() < 1e-12, "xcoth {x0} {m}");
                }
            } else if x0 == 0.0 {
                assert_eq!(s.value(), 1.0);
                assert!((s.coeff(2) + 1.0 / 6.0).abs() < 1e-16);
                assert!((c.coeff(2) - 1.0 / 3.0).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn artanhc_series_at_zero() {
        let v = Jet::variable(0.0, 4).unwrap();
        let a = v.artanhc().unwrap();
        let expect = [1.0, 0.0, 1.0 / 3.0, 0.0, 1.0 / 5.0];
        for (a, b) in a.coeffs().iter().zip(expect) {
            assert!((a - b).abs() < 1e-16);
        }
        let v = Jet::variable(0.6, 4).unwrap();
        let direct = v.artanh().unwrap() / v;
        let a = v.artanhc().unwrap();
        for m in 0..=4 {
            assert!((a.coeff(m) - direct.coeff(m)).abs() < 1e-14);
        }
    }

    #[test]
    fn compose_series_matches_lift() {
        let x = Jet::variable(0.0, 6).unwrap();
        let inner = (x * 0.5).sinh();
        let via_series: Vec<f64> = (0..=6)
            .map(|k| 1.0 / (1..=k).map(|i| i as f64).product::<f64>())
            .collect();
        let a = inner.compose_series(0.0, &via_series);
        let b = inner.exp();
        for m in 0..=6 {
            assert!((a.coeff(m) - b.coeff(m)).abs() < 1e-15);
        }
    }

    #[test]
    fn differentiate_n_shifts_coefficients() {
        let x = Jet::variable(0.3, 8).unwrap();
        let e = (x * 2.0).exp();
        let d3 = e.differentiate_n(3).unwrap();
        assert_eq!(d3.order(), 5);
        for m in 0..=5 {
            let expect = 8.0 * e.derivative(m).unwrap() ;
            assert!((d3.derivative(m).unwrap() - expect).abs() < 1e-11 * expect.abs());
        }
    }
}
