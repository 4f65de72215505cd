//! Closed-form spectra and normalized wavefunctions of the deformed radial
//! oscillator and of its constant-mass Poschl-Teller image, together with
//! the `alpha -> 0` limits.
//!
//! Radial bound states, `n = 0, 1, 2, ...`:
//!   `E_n = alpha (2L + 5/2) + (L + 3/2) Delta + 4 [alpha (L + 3/2) + Delta/2] n + 4 alpha n^2`
//!   `psi_n = N r^(L+1) f^(-(L + 5/2 + Delta/(2 alpha))/2) P_n^(L+1/2, Delta/(2 alpha))(t)`
//! Angular image on `(0, pi/2)`:
//!   `eps_n = (A + B + 2n)^2`,
//!   `phi_n = N (sin u)^A (cos u)^B P_n^(A-1/2, B-1/2)(cos 2u)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::ExtensionSpec;
use crate::pct::{self, ModelParams};
use crate::specfun::{jacobi_poly, laguerre_poly, log_gamma, Polynomial};

/// Largest level index accepted per spectrum request; the bound-state tower
/// is infinite but desk scale stops here.
pub const MAX_LEVEL: u32 = 64;

/// Poschl-Teller potential `U(u; A, B) = A(A-1) csc^2 u + B(B-1) sec^2 u`
/// on `0 < u < pi/2`.
pub fn pt1_potential(a: f64, b: f64, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!("u must lie in (0, pi/2), got {u}")));
    }
    let s = u.sin();
    let c = u.cos();
    Ok(a * (a - 1.0) / (s * s) + b * (b - 1.0) / (c * c))
}

/// Poschl-Teller eigenvalue `eps_n(A, B) = (A + B + 2n)^2`.
pub fn pt1_energy(a: f64, b: f64, n: u32) -> f64 {
    let s = a + b + 2.0 * n as f64;
    s * s
}

/// Normalized Poschl-Teller bound state; requires `A, B > 1/2` so the state
/// is normalizable on `(0, pi/2)`.
pub fn pt1_wavefunction(a: f64, b: f64, n: u32, u: f64) -> Result<f64> {
    if !(a > 0.5 && b > 0.5) {
        return Err(Error::Domain(format!(
            "normalizable PT states need A, B > 1/2, got A={a}, B={b}"
        )));
    }
    if !(u > 0.0 && u < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!("u must lie in (0, pi/2), got {u}")));
    }
    let poly = jacobi_poly(n, a - 0.5, b - 0.5)?;
    Ok(pt1_norm(a, b, n)? * u.sin().powf(a) * u.cos().powf(b) * poly.eval((2.0 * u).cos()))
}

/// `N^(A,B)_n = sqrt(2 (A+B+2n) n! Gamma(A+B+n) / (Gamma(A+n+1/2) Gamma(B+n+1/2)))`,
/// assembled in log space.
fn pt1_norm(a: f64, b: f64, n: u32) -> Result<f64> {
    let nf = n as f64;
    let ln = 0.5
        * (2.0f64.ln() + (a + b + 2.0 * nf).ln() + log_gamma(nf + 1.0)?
            + log_gamma(a + b + nf)?
            - log_gamma(a + nf + 0.5)?
            - log_gamma(b + nf + 0.5)?);
    Ok(ln.exp())
}

/// Radial potential `V(r; L, omega) = L(L+1)/r^2 + omega^2 r^2 / 4`,
/// independent of the deformation.
pub fn potential(params: &ModelParams, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("potential requires r > 0, got {r}")));
    }
    let l = params.l_f64();
    let omega = params.omega();
    Ok(l * (l + 1.0) / (r * r) + 0.25 * omega * omega * r * r)
}

/// Bound-state energy of the deformed radial oscillator. For `alpha = 0`
/// the same expression reduces to the linear spectrum `(2n + L + 3/2) omega`.
pub fn energy(params: &ModelParams, n: u32) -> f64 {
    let alpha = params.alpha();
    let delta = params.delta();
    let l = params.l_f64();
    let nf = n as f64;
    alpha * (2.0 * l + 2.5)
        + (l + 1.5) * delta
        + 4.0 * (alpha * (l + 1.5) + 0.5 * delta) * nf
        + 4.0 * alpha * nf * nf
}

/// Internal: log of the radial normalization constant,
/// `N^2 = 2 alpha^(L+3/2) n! (2n+L+3/2+d) Gamma(n+L+3/2+d) / (Gamma(n+L+3/2) Gamma(n+1+d))`
/// with `d = Delta/(2 alpha)`.
fn radial_log_norm(params: &ModelParams, n: u32) -> Result<f64> {
    let d = params.delta_over_2alpha()?;
    let l = params.l_f64();
    let nf = n as f64;
    Ok(0.5
        * (2.0f64.ln() + (l + 1.5) * params.alpha().ln() + log_gamma(nf + 1.0)?
            + (2.0 * nf + l + 1.5 + d).ln()
            + log_gamma(nf + l + 1.5 + d)?
            - log_gamma(nf + l + 1.5)?
            - log_gamma(nf + 1.0 + d)?))
}

/// Normalized bound state of the deformed radial oscillator, `alpha > 0`.
pub fn wavefunction(params: &ModelParams, n: u32, r: f64) -> Result<f64> {
    let poly = radial_jacobi(params, n)?;
    let ln_norm = radial_log_norm(params, n)?;
    Ok(eval_radial(params, &poly, ln_norm, r)?)
}

/// Samples a bound state on a grid, building the Jacobi factor only once.
pub fn wavefunction_on_grid(params: &ModelParams, n: u32, grid: &[f64]) -> Result<Vec<f64>> {
    let poly = radial_jacobi(params, n)?;
    let ln_norm = radial_log_norm(params, n)?;
    grid.iter().map(|&r| eval_radial(params, &poly, ln_norm, r)).collect()
}

fn radial_jacobi(params: &ModelParams, n: u32) -> Result<Polynomial> {
    let d = params.delta_over_2alpha()?;
    jacobi_poly(n, params.l_f64() + 0.5, d)
}

fn eval_radial(params: &ModelParams, poly: &Polynomial, ln_norm: f64, r: f64) -> Result<f64> {
    let t = pct::t_of_r(params, r)?;
    let d = params.delta_over_2alpha()?;
    let l = params.l_f64();
    let f = pct::deforming_f(params, r);
    let envelope = ln_norm + (l + 1.0) * r.ln() - 0.5 * (l + 2.5 + d) * f.ln();
    Ok(envelope.exp() * poly.eval(t))
}

/// Normalized constant-mass radial oscillator state
/// `psi = N r^(L+1) exp(-omega r^2/4) L_n^(L+1/2)(omega r^2/2)`.
pub fn limit_wavefunction(l: u32, omega: f64, n: u32, r: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be > 0, got {omega}")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("wavefunction requires r > 0, got {r}")));
    }
    let lf = l as f64;
    let nf = n as f64;
    let poly = laguerre_poly(n, lf + 0.5)?;
    let ln_norm = 0.5
        * ((lf + 1.5) * (0.5 * omega).ln() + 2.0f64.ln() + log_gamma(nf + 1.0)?
            - log_gamma(nf + lf + 1.5)?);
    let rho = 0.5 * omega * r * r;
    Ok((ln_norm + (lf + 1.0) * r.ln() - 0.5 * rho).exp() * poly.eval(rho))
}

/// Where a spectrum's energies came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    ClosedForm,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub n: i64,
    pub energy: f64,
}

/// Ordered `(n, E_n)` table with provenance. Energies are validated to be
/// strictly increasing in `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub source: SpectrumSource,
    pub params: ModelParams,
    pub extension: Option<ExtensionSpec>,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    pub fn new(
        source: SpectrumSource,
        params: ModelParams,
        extension: Option<ExtensionSpec>,
        entries: Vec<SpectrumEntry>,
    ) -> Result<Self> {
        if entries.windows(2).any(|w| w[0].n >= w[1].n || w[0].energy >= w[1].energy) {
            return Err(Error::Domain(
                "spectrum entries must be strictly increasing in n and energy".into(),
            ));
        }
        Ok(SpectrumTable { source, params, extension, entries })
    }

    /// Closed-form table of the unextended oscillator for `n = 0..=n_max`.
    pub fn closed_form(params: &ModelParams, n_max: u32) -> Result<Self> {
        if n_max > MAX_LEVEL {
            return Err(Error::Domain(format!(
                "n_max {n_max} exceeds the per-request level cap {MAX_LEVEL}"
            )));
        }
        let entries = (0..=n_max)
            .map(|n| SpectrumEntry { n: n as i64, energy: energy(params, n) })
            .collect();
        SpectrumTable::new(SpectrumSource::ClosedForm, *params, None, entries)
    }
}
