//! Classical orthogonal polynomials with general real parameters, plus the
//! log-gamma function used by normalization constants.
//!
//! Jacobi polynomials are required here for arbitrary real `(a, b)`,
//! including negative non-integer values, so they are assembled from the
//! closed finite sum with generalized binomial products instead of the
//! three-term recurrence (whose coefficients become singular exactly in the
//! parameter range the seed functions live in).

use crate::error::{Error, Result};

/// Maximum degree accepted when constructing a basis polynomial.
pub const MAX_DEGREE: u32 = 64;

/// Dense polynomial in one real variable, stored as monomial coefficients
/// `c[0] + c[1] x + ... + c[d] x^d`.
///
/// The variable is dimensionless and in practice ranges over `(-1, 1)`
/// (the compact variable `t` or `z`) or over `[0, inf)` (the Laguerre
/// variable `rho`).
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from monomial coefficients, stripping exactly-zero
    /// leading coefficients so the degree invariant holds.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn leading_coeff(&self) -> f64 {
        *self.coeffs.last().expect("coeffs never empty")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Coefficientwise derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Substitutes `x -> c0 + c1 x`, returning the composed polynomial.
    pub fn compose_affine(&self, c0: f64, c1: f64) -> Polynomial {
        let mut result = Polynomial::constant(*self.coeffs.last().unwrap());
        let linear = Polynomial::new(vec![c0, c1]);
        for &c in self.coeffs.iter().rev().skip(1) {
            result = result.mul(&linear).add(&Polynomial::constant(c));
        }
        result
    }

    /// Drops leading coefficients whose magnitude is below `rel_tol` times
    /// the largest coefficient magnitude. Used after exact-cancellation
    /// arithmetic so degree assertions see the true degree.
    pub fn trimmed(&self, rel_tol: f64) -> Polynomial {
        let scale = self.coeffs.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
        if scale == 0.0 {
            return Polynomial::zero();
        }
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().unwrap().abs() <= rel_tol * scale {
            coeffs.pop();
        }
        Polynomial::new(coeffs)
    }
}

/// Generalized binomial coefficient `binom(x, k)` for real `x`, computed as
/// a falling-factorial product (never via gamma ratios, which would be
/// singular or lose sign information for negative `x`).
pub fn gen_binomial(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for j in 1..=k {
        acc *= (x - (k - j) as f64) / j as f64;
    }
    acc
}

/// Jacobi polynomial `P_n^{(a,b)}` as exact monomial coefficients in `z`.
///
/// Valid for any real `a`, `b` (the partner constructions use negative
/// non-integer parameters); reduces to the classical polynomial for
/// `a, b > -1`. Built from the finite sum
/// `sum_l binom(n+a, n-l) binom(n+b, l) ((z-1)/2)^l ((z+1)/2)^(n-l)`.
pub fn jacobi_poly(n: u32, a: f64, b: f64) -> Result<Polynomial> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeCap(format!(
            "jacobi_poly degree {n} exceeds cap {MAX_DEGREE}"
        )));
    }
    let n_us = n as usize;
    let half_minus = Polynomial::new(vec![-0.5, 0.5]); // (z-1)/2
    let half_plus = Polynomial::new(vec![0.5, 0.5]); // (z+1)/2

    let mut pow_minus = Vec::with_capacity(n_us + 1);
    let mut pow_plus = Vec::with_capacity(n_us + 1);
    pow_minus.push(Polynomial::constant(1.0));
    pow_plus.push(Polynomial::constant(1.0));
    for k in 1..=n_us {
        pow_minus.push(pow_minus[k - 1].mul(&half_minus));
        pow_plus.push(pow_plus[k - 1].mul(&half_plus));
    }

    let mut sum = Polynomial::zero();
    for l in 0..=n {
        let c = gen_binomial(n as f64 + a, n - l) * gen_binomial(n as f64 + b, l);
        if c == 0.0 {
            continue;
        }
        let term = pow_minus[l as usize].mul(&pow_plus[n_us - l as usize]);
        sum = sum.add(&term.scale(c));
    }
    Ok(sum)
}

/// Generalized Laguerre polynomial `L_n^{(a)}` as monomial coefficients in
/// `rho`, valid for any real `a`:
/// `L_n^{(a)}(rho) = sum_k (-1)^k binom(n+a, n-k) rho^k / k!`.
pub fn laguerre_poly(n: u32, a: f64) -> Result<Polynomial> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeCap(format!(
            "laguerre_poly degree {n} exceeds cap {MAX_DEGREE}"
        )));
    }
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut k_fact = 1.0;
    for k in 0..=n {
        if k > 0 {
            k_fact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.push(sign * gen_binomial(n as f64 + a, n - k) / k_fact);
    }
    Ok(Polynomial::new(coeffs))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0` (Lanczos, g = 7).
///
/// Accurate to better than 1e-13 relative to the gamma scale over
/// `[1e-3, 1e3]`; used for normalization constants, which are assembled in
/// log space to avoid overflow when the Jacobi parameter gets large.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        // Reflection: ln Gamma(x) = ln(pi / sin(pi x)) - ln Gamma(1 - x).
        let reflected = log_gamma_core(1.0 - x);
        return Ok(std::f64::consts::PI.ln() - (std::f64::consts::PI * x).sin().ln() - reflected);
    }
    Ok(log_gamma_core(x))
}

fn log_gamma_core(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let base = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * base.ln() - base + acc.ln()
}
