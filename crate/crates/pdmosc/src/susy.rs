//! Deformed supersymmetric machinery: superpotential, first-order
//! intertwining operators, partner potential, and the shape-invariance
//! hierarchy.
//!
//! The factorization uses `A+- = -+ sqrt(f) d/dr sqrt(f) + W` with
//! `W(r; L, omega) = -(L+1) f/r + alpha (L + 3/2 + Delta/(2 alpha)) r`,
//! so `H = A+ A- + E_0` and the partner shifts `(L, omega)` to
//! `(L+1, omega')` up to an additive constant.

use crate::error::{Error, Result};
use crate::oscillator::energy;
use crate::pct::{self, GridFunction, ModelParams};

/// Hierarchy depth cap.
pub const MAX_DEPTH: u32 = 32;

/// One level of the shape-invariance hierarchy: parameters `(L + i,
/// omega_i)`, the energy increment `eps_i`, and the additive potential
/// shift accumulated at this level.
#[derive(Clone, Copy, Debug)]
pub struct HierarchyLevel {
    pub i: u32,
    pub l: u32,
    pub omega: f64,
    pub eps: f64,
    pub shift: f64,
    pub params: ModelParams,
}

/// Superpotential `W(r) = -(L+1) f/r + [alpha (L + 3/2) + Delta/2] r`.
/// Tends to -inf at the origin and +inf at infinity, with a single zero at
/// `r^2 = 2(L+1)/(alpha + Delta)`.
pub fn superpotential(params: &ModelParams, r: f64) -> Result<f64> {
    params.require_deformed()?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("superpotential requires r > 0, got {r}")));
    }
    let l = params.l_f64();
    let f = pct::deforming_f(params, r);
    Ok(-(l + 1.0) * f / r + (params.alpha() * (l + 1.5) + 0.5 * params.delta()) * r)
}

/// `dW/dr`, used for the partner potential `V_1 = V_0 + 2 f W'`.
fn superpotential_prime(params: &ModelParams, r: f64) -> Result<f64> {
    params.require_deformed()?;
    let l = params.l_f64();
    Ok(-(l + 1.0) * (params.alpha() - 1.0 / (r * r))
        + params.alpha() * (l + 1.5)
        + 0.5 * params.delta())
}

fn apply_first_order(
    params: &ModelParams,
    psi: &GridFunction,
    derivative_sign: f64,
) -> Result<GridFunction> {
    params.require_deformed()?;
    if psi.len() < 5 {
        return Err(Error::Grid(format!(
            "operator stencil needs >= 5 points, got {}",
            psi.len()
        )));
    }
    let d = psi.derivative_central4()?;
    let inner = psi.interior(2, 2)?;
    let values = d
        .grid()
        .iter()
        .zip(d.values())
        .zip(inner.values())
        .map(|((&r, &dv), &v)| {
            let f = pct::deforming_f(params, r);
            let f_prime = 2.0 * params.alpha() * r;
            let w = superpotential(params, r)?;
            Ok(derivative_sign * (f * dv + 0.5 * f_prime * v) + w * v)
        })
        .collect::<Result<Vec<f64>>>()?;
    GridFunction::new(psi.space(), d.grid().to_vec(), values)
}

/// `A- psi = f psi' + (f'/2) psi + W psi` via fourth-order central
/// differences; two boundary points per side are dropped. Annihilates the
/// ground state.
pub fn apply_a_minus(params: &ModelParams, psi: &GridFunction) -> Result<GridFunction> {
    apply_first_order(params, psi, 1.0)
}

/// `A+ psi = -f psi' - (f'/2) psi + W psi`, the formal adjoint of `A-`.
pub fn apply_a_plus(params: &ModelParams, psi: &GridFunction) -> Result<GridFunction> {
    apply_first_order(params, psi, -1.0)
}

/// Partner parameters `(L + 1, omega')` with
/// `omega' = sqrt(omega^2 + 4 alpha^2 + 4 alpha Delta)`, so that
/// `Delta' = Delta + 2 alpha`.
pub fn partner_params(params: &ModelParams) -> Result<ModelParams> {
    params.require_deformed()?;
    let alpha = params.alpha();
    let omega2 = params.omega() * params.omega();
    let omega_prime = (omega2 + 4.0 * alpha * alpha + 4.0 * alpha * params.delta()).sqrt();
    ModelParams::new(alpha, params.l() + 1, omega_prime)
}

/// Partner potential `V_1(r) = V_0(r) + 2 f dW/dr`; equals
/// `V(r; L+1, omega') + alpha (2L + 3 + Delta/alpha)` pointwise.
pub fn partner_potential(params: &ModelParams, r: f64) -> Result<f64> {
    let v0 = crate::oscillator::potential(params, r)?;
    Ok(v0 + 2.0 * pct::deforming_f(params, r) * superpotential_prime(params, r)?)
}

/// Constant separating the partner from the parameter-shifted potential:
/// `V_1 - V(.; L+1, omega') = alpha (2L + 3) + Delta`.
pub fn partner_shift(params: &ModelParams) -> Result<f64> {
    params.require_deformed()?;
    Ok(params.alpha() * (2.0 * params.l_f64() + 3.0) + params.delta())
}

/// Builds hierarchy levels `0..=depth`:
/// `omega_i = sqrt(omega^2 + 4 i alpha Delta + 4 i^2 alpha^2)`,
/// `eps_0 = E_0`, `eps_i = alpha (4L + 8i + 2) + 2 Delta`, and the potential
/// shift `i alpha (2L + 2i + 1 + Delta/alpha)`. The eps increments
/// telescope: `sum_(i=0)^n eps_i = E_n`.
pub fn hierarchy(params: &ModelParams, depth: u32) -> Result<Vec<HierarchyLevel>> {
    params.require_deformed()?;
    if depth > MAX_DEPTH {
        return Err(Error::DepthCap(format!(
            "hierarchy depth {depth} exceeds cap {MAX_DEPTH}"
        )));
    }
    let alpha = params.alpha();
    let delta = params.delta();
    let l = params.l_f64();
    let omega2 = params.omega() * params.omega();
    (0..=depth)
        .map(|i| {
            let fi = i as f64;
            let omega_i = (omega2 + 4.0 * fi * alpha * delta + 4.0 * fi * fi * alpha * alpha)
                .sqrt();
            let eps = if i == 0 {
                energy(params, 0)
            } else {
                alpha * (4.0 * l + 8.0 * fi + 2.0) + 2.0 * delta
            };
            let shift = fi * alpha * (2.0 * l + 2.0 * fi + 1.0) + fi * delta;
            Ok(HierarchyLevel {
                i,
                l: params.l() + i,
                omega: omega_i,
                eps,
                shift,
                params: ModelParams::new(alpha, params.l() + i, omega_i)?,
            })
        })
        .collect()
}
