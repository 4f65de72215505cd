//! Point canonical transformation dictionary between the deformed radial
//! problem on `(0, inf)` and the constant-mass trigonometric Poschl-Teller
//! problem on `(0, pi/2)`.
//!
//! The deforming function is `f(r) = 1 + alpha r^2`, the coordinate map is
//! `u = arctan(sqrt(alpha) r)`, and energies map as `E = alpha eps + c`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical/deformation parameter bundle: deformation `alpha >= 0`
/// (1/length^2), orbital quantum number `L`, oscillator frequency
/// `omega > 0`. `alpha = 0` is allowed as the constant-mass limit flag;
/// angular-map operations reject it because the image interval degenerates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    alpha: f64,
    l: u32,
    omega: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, l: u32, omega: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        if !omega.is_finite() || omega <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega must be finite and > 0, got {omega}"
            )));
        }
        Ok(ModelParams { alpha, l, omega })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn l_f64(&self) -> f64 {
        self.l as f64
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `Delta = sqrt(omega^2 + alpha^2)`; equals `omega` iff `alpha = 0`.
    pub fn delta(&self) -> f64 {
        self.omega.hypot(self.alpha)
    }

    /// The ubiquitous Jacobi parameter `Delta / (2 alpha)`.
    pub fn delta_over_2alpha(&self) -> Result<f64> {
        self.require_deformed()?;
        Ok(self.delta() / (2.0 * self.alpha))
    }

    pub fn is_deformed(&self) -> bool {
        self.alpha > 0.0
    }

    pub fn require_deformed(&self) -> Result<()> {
        if self.alpha > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(
                "operation requires alpha > 0 (the alpha = 0 limit has dedicated operations)"
                    .into(),
            ))
        }
    }
}

/// Poschl-Teller parameters `(A, B)` and the additive energy constant `c`
/// of the transformation: `A = L + 1`, `B = (1 + Delta/alpha)/2`,
/// `c = -alpha L(L+1) - omega^2/(4 alpha)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pt1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Auxiliary map constants `u = a_pct v + b_pct` with `a_pct = sqrt(alpha)`,
/// `b_pct = 0`.
pub fn pct_scale(params: &ModelParams) -> Result<f64> {
    params.require_deformed()?;
    Ok(params.alpha().sqrt())
}

/// PT I parameters and the additive constant for a deformed parameter set.
/// The energy correspondence is `E = alpha * eps + c`.
pub fn pt1_parameters(params: &ModelParams) -> Result<Pt1Params> {
    params.require_deformed()?;
    let l = params.l_f64();
    let alpha = params.alpha();
    let omega = params.omega();
    Ok(Pt1Params {
        a: l + 1.0,
        b: 0.5 * (1.0 + params.delta() / alpha),
        c: -alpha * l * (l + 1.0) - omega * omega / (4.0 * alpha),
    })
}

fn require_positive_r(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("radial coordinate must be > 0, got {r}")))
    }
}

/// Deforming function `f(alpha; r) = 1 + alpha r^2`.
pub fn deforming_f(params: &ModelParams, r: f64) -> f64 {
    1.0 + params.alpha() * r * r
}

/// Angular coordinate `u(r) = arctan(sqrt(alpha) r)`, strictly increasing,
/// with range `(0, pi/2)`.
pub fn u_of_r(params: &ModelParams, r: f64) -> Result<f64> {
    params.require_deformed()?;
    require_positive_r(r)?;
    Ok((params.alpha().sqrt() * r).atan())
}

/// Inverse map `r(u) = tan(u) / sqrt(alpha)` for `0 < u < pi/2`.
pub fn r_of_u(params: &ModelParams, u: f64) -> Result<f64> {
    params.require_deformed()?;
    if !(u > 0.0 && u < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "angular coordinate must lie in (0, pi/2), got {u}"
        )));
    }
    Ok(u.tan() / params.alpha().sqrt())
}

/// Compact wavefunction argument `t(r) = (1 - alpha r^2)/(1 + alpha r^2)
/// = cos 2u`, strictly decreasing in `r` with range `(-1, 1)`.
pub fn t_of_r(params: &ModelParams, r: f64) -> Result<f64> {
    params.require_deformed()?;
    require_positive_r(r)?;
    let x = params.alpha() * r * r;
    Ok((1.0 - x) / (1.0 + x))
}

/// `dt/dr = -4 alpha r / f^2`; needed to convert t-derivatives of the
/// denominator polynomials into radial derivatives.
pub fn dt_dr(params: &ModelParams, r: f64) -> Result<f64> {
    params.require_deformed()?;
    require_positive_r(r)?;
    let f = deforming_f(params, r);
    Ok(-4.0 * params.alpha() * r / (f * f))
}

/// `d^2t/dr^2 = -4 alpha / f^2 + 16 alpha^2 r^2 / f^3`.
pub fn d2t_dr2(params: &ModelParams, r: f64) -> Result<f64> {
    params.require_deformed()?;
    require_positive_r(r)?;
    let alpha = params.alpha();
    let f = deforming_f(params, r);
    Ok(-4.0 * alpha / (f * f) + 16.0 * alpha * alpha * r * r / (f * f * f))
}

/// Effective potential converting the general two-parameter ordered kinetic
/// term to the symmetric one used here:
/// `V_eff = V + (1/2)(xi + zeta + 1/2) m''/m^2 - (xi zeta + xi + zeta + 7/16) m'^2/m^3`
/// with `m = (1 + alpha r^2)^-2` and the remaining exponent fixed by
/// `xi + eta + zeta = -1`.
pub fn von_roos_effective_potential(
    xi: f64,
    zeta: f64,
    params: &ModelParams,
    r: f64,
    v_at_r: f64,
) -> Result<f64> {
    require_positive_r(r)?;
    let alpha = params.alpha();
    let f = deforming_f(params, r);
    let m = 1.0 / (f * f);
    let m1 = -4.0 * alpha * r / (f * f * f);
    let m2 = -4.0 * alpha / (f * f * f) + 24.0 * alpha * alpha * r * r / (f * f * f * f);
    Ok(v_at_r + 0.5 * (xi + zeta + 0.5) * m2 / (m * m)
        - (xi * zeta + xi + zeta + 7.0 / 16.0) * m1 * m1 / (m * m * m))
}

/// Which 1-D coordinate a sampled function lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    /// `r` in `(0, inf)`.
    Radial,
    /// `u` in `(0, pi/2)`.
    Angular,
}

/// Sampled function on a strictly increasing 1-D grid. Values are immutable
/// after construction.
#[derive(Clone, Debug)]
pub struct GridFunction {
    space: Space,
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(space: Space, grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Grid(format!(
                "grid/value length mismatch: {} vs {}",
                grid.len(),
                values.len()
            )));
        }
        if grid.is_empty() {
            return Err(Error::Grid("grid must be non-empty".into()));
        }
        if !grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Grid("grid must be strictly increasing".into()));
        }
        if grid.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Grid("grid and values must be finite".into()));
        }
        Ok(GridFunction { space, grid, values })
    }

    /// Uniform grid over `[lo, hi]` with `n >= 2` points, sampled from `f`.
    pub fn sample_uniform(
        space: Space,
        lo: f64,
        hi: f64,
        n: usize,
        mut f: impl FnMut(f64) -> f64,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Grid(format!("need at least 2 grid points, got {n}")));
        }
        if !(lo < hi) {
            return Err(Error::Grid(format!("need lo < hi, got ({lo}, {hi})")));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let grid: Vec<f64> = (0..n).map(|i| lo + i as f64 * h).collect();
        let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
        GridFunction::new(space, grid, values)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Spacing of a uniform grid; errors if the grid is not uniform to
    /// relative 1e-9 (the difference stencils assume uniformity).
    pub fn uniform_spacing(&self) -> Result<f64> {
        if self.grid.len() < 2 {
            return Err(Error::Grid("need at least 2 points for a spacing".into()));
        }
        let h = self.grid[1] - self.grid[0];
        for w in self.grid.windows(2) {
            if ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs() {
                return Err(Error::Grid("grid must be uniform".into()));
            }
        }
        Ok(h)
    }

    /// Fourth-order central first derivative; the two outermost points on
    /// each side are dropped.
    pub fn derivative_central4(&self) -> Result<GridFunction> {
        let n = self.len();
        if n < 5 {
            return Err(Error::Grid(format!(
                "fourth-order stencil needs >= 5 points, got {n}"
            )));
        }
        let h = self.uniform_spacing()?;
        let v = &self.values;
        let mut grid = Vec::with_capacity(n - 4);
        let mut values = Vec::with_capacity(n - 4);
        for i in 2..n - 2 {
            grid.push(self.grid[i]);
            values.push((-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / (12.0 * h));
        }
        GridFunction::new(self.space, grid, values)
    }

    /// L2 norm of the sample vector (no measure weight).
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Restricts to the index range `[lo, len - hi)`.
    pub fn interior(&self, lo: usize, hi: usize) -> Result<GridFunction> {
        if lo + hi >= self.len() {
            return Err(Error::Grid("interior window is empty".into()));
        }
        GridFunction::new(
            self.space,
            self.grid[lo..self.len() - hi].to_vec(),
            self.values[lo..self.len() - hi].to_vec(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: f64, expected: f64, tol: f64, label: &str) {
        let scale = 1.0f64.max(expected.abs());
        assert!(
            (actual - expected).abs() <= tol * scale,
            "{label}: actual {actual} vs expected {expected}"
        );
    }

    fn params(alpha: f64, l: u32, omega: f64) -> ModelParams {
        ModelParams::new(alpha, l, omega).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(-0.1, 0, 1.0).is_err());
        assert!(ModelParams::new(0.5, 0, 0.0).is_err());
        assert!(ModelParams::new(f64::NAN, 0, 1.0).is_err());
        let p = params(0.0, 1, 2.0);
        assert!(!p.is_deformed());
        assert_close(p.delta(), 2.0, 1e-15, "delta at alpha=0");
    }

    #[test]
    fn u_of_r_examples() {
        let p = params(1.0, 0, 1.0);
        assert!(u_of_r(&p, 1e-12).unwrap() > 0.0);
        assert_close(
            u_of_r(&p, 1.0).unwrap(),
            std::f64::consts::FRAC_PI_4,
            1e-15,
            "arctan(1)",
        );
        let p3 = params(1.0 / 3.0, 0, 1.0);
        assert_close(
            u_of_r(&p3, 3f64.sqrt()).unwrap(),
            std::f64::consts::FRAC_PI_4,
            1e-15,
            "arctan(1) via alpha=1/3",
        );
        assert!(u_of_r(&params(0.0, 0, 1.0), 1.0).is_err());
        assert!(u_of_r(&p, -1.0).is_err());
    }

    #[test]
    fn r_of_u_examples_and_roundtrip() {
        let p = params(1.0, 0, 1.0);
        assert_close(r_of_u(&p, std::f64::consts::FRAC_PI_4).unwrap(), 1.0, 1e-15, "tan(pi/4)");
        let p4 = params(4.0, 0, 1.0);
        assert_close(
            r_of_u(&p4, std::f64::consts::FRAC_PI_3).unwrap(),
            3f64.sqrt() / 2.0,
            1e-15,
            "tan(pi/3)/2",
        );
        let p05 = params(0.5, 0, 1.0);
        for &r in &[0.1, 1.0, 10.0] {
            let back = r_of_u(&p05, u_of_r(&p05, r).unwrap()).unwrap();
            assert!(((back - r) / r).abs() < 1e-14, "roundtrip at r={r}");
        }
        assert!(r_of_u(&p, 0.0).is_err());
        assert!(r_of_u(&p, std::f64::consts::FRAC_PI_2).is_err());
    }

    #[test]
    fn t_of_r_examples() {
        let p = params(0.25, 0, 1.0);
        assert_close(t_of_r(&p, 2.0).unwrap(), 0.0, 1e-15, "t at alpha r^2 = 1");
        assert!(t_of_r(&p, 1e-9).unwrap() > 1.0 - 1e-8);
        let p3 = params(1.0 / 3f64.sqrt(), 0, 1.0);
        assert_close(t_of_r(&p3, 1.0).unwrap(), 2.0 - 3f64.sqrt(), 1e-14, "t closed form");
        assert!(t_of_r(&params(0.0, 0, 1.0), 1.0).is_err());
    }

    #[test]
    fn deforming_f_examples() {
        assert_close(deforming_f(&params(0.0, 0, 1.0), 7.3), 1.0, 1e-15, "alpha=0");
        assert_close(deforming_f(&params(1.0, 0, 1.0), 2.0), 5.0, 1e-15, "1+4");
        let a = 1.0 / 3f64.sqrt();
        assert_close(deforming_f(&params(a, 0, 1.0), 1.0), 1.0 + a, 1e-15, "1+a");
    }

    #[test]
    fn pt1_parameters_examples() {
        let p = params(1.0 / 3f64.sqrt(), 1, 1.0);
        let pt = pt1_parameters(&p).unwrap();
        assert_close(p.delta(), 2.0 / 3f64.sqrt(), 1e-15, "Delta");
        assert_close(pt.a, 2.0, 1e-15, "A");
        assert_close(pt.b, 1.5, 1e-14, "B");
        assert_close(pt.c, -2.0 / 3f64.sqrt() - 3f64.sqrt() / 4.0, 1e-14, "c");

        // L = 0, omega = alpha: Delta = alpha sqrt(2), B = (1+sqrt(2))/2, c = -alpha/4.
        let q = params(0.7, 0, 0.7);
        let qt = pt1_parameters(&q).unwrap();
        assert_close(qt.b, (1.0 + 2f64.sqrt()) / 2.0, 1e-14, "B at omega=alpha");
        assert_close(qt.c, -0.7 / 4.0, 1e-14, "c at omega=alpha");

        assert!(pt1_parameters(&params(0.0, 1, 1.0)).is_err());
    }

    #[test]
    fn cos_2u_equals_t() {
        let p = params(0.37, 2, 1.4);
        let mut r = 0.05;
        while r < 20.0 {
            let u = u_of_r(&p, r).unwrap();
            let t = t_of_r(&p, r).unwrap();
            assert!(((2.0 * u).cos() - t).abs() < 1e-13, "cos2u vs t at r={r}");
            r *= 1.5;
        }
    }

    #[test]
    fn maps_are_monotone() {
        let p = params(0.8, 1, 1.0);
        let rs: Vec<f64> = (1..200).map(|i| 0.05 * i as f64).collect();
        let us: Vec<f64> = rs.iter().map(|&r| u_of_r(&p, r).unwrap()).collect();
        let ts: Vec<f64> = rs.iter().map(|&r| t_of_r(&p, r).unwrap()).collect();
        assert!(us.windows(2).all(|w| w[0] < w[1]), "u strictly increasing");
        assert!(ts.windows(2).all(|w| w[0] > w[1]), "t strictly decreasing");
    }

    #[test]
    fn measure_consistency_du_dr() {
        // du/dr = sqrt(alpha)/f by central differences.
        let p = params(0.6, 0, 1.0);
        let h = 1e-5;
        for &r in &[0.3, 1.0, 2.5, 6.0] {
            let du = (u_of_r(&p, r + h).unwrap() - u_of_r(&p, r - h).unwrap()) / (2.0 * h);
            let expected = p.alpha().sqrt() / deforming_f(&p, r);
            assert!((du - expected).abs() < 1e-8, "du/dr at r={r}");
        }
    }

    #[test]
    fn dt_dr_matches_central_differences() {
        let p = params(0.6, 0, 1.0);
        let h = 1e-5;
        for &r in &[0.3, 1.0, 2.5, 6.0] {
            let fd = (t_of_r(&p, r + h).unwrap() - t_of_r(&p, r - h).unwrap()) / (2.0 * h);
            assert!((dt_dr(&p, r).unwrap() - fd).abs() < 1e-8, "dt/dr at r={r}");
            let fd2 = (t_of_r(&p, r + h).unwrap() - 2.0 * t_of_r(&p, r).unwrap()
                + t_of_r(&p, r - h).unwrap())
                / (h * h);
            assert!((d2t_dr2(&p, r).unwrap() - fd2).abs() < 1e-5, "d2t/dr2 at r={r}");
        }
    }

    #[test]
    fn von_roos_symmetric_ordering_is_identity() {
        // xi = zeta = -1/4 makes both correction coefficients vanish.
        let p = params(0.9, 1, 2.0);
        for &r in &[0.2, 1.0, 3.0] {
            let v = 17.3;
            assert_close(
                von_roos_effective_potential(-0.25, -0.25, &p, r, v).unwrap(),
                v,
                1e-14,
                "MM ordering",
            );
        }
        // alpha = 0: constant mass, every ordering is the identity.
        let p0 = params(0.0, 1, 2.0);
        assert_close(
            von_roos_effective_potential(0.3, -0.8, &p0, 1.7, 4.2).unwrap(),
            4.2,
            1e-14,
            "alpha=0",
        );
    }

    #[test]
    fn von_roos_matches_numerical_mass_derivatives() {
        // Independent oracle: differentiate m(r) = f^-2 by central differences.
        let p = params(1.0, 0, 2.0);
        let (xi, zeta) = (0.0, -0.5);
        let r = 1.0;
        let m = |r: f64| {
            let f = 1.0 + p.alpha() * r * r;
            1.0 / (f * f)
        };
        let h = 1e-4;
        let m0 = m(r);
        let m1 = (m(r + h) - m(r - h)) / (2.0 * h);
        let m2 = (m(r + h) - 2.0 * m0 + m(r - h)) / (h * h);
        let v = 1.0; // V(1; L=0, omega=2) = 0 + (1/4)*4*1 = 1
        let expected = v + 0.5 * (xi + zeta + 0.5) * m2 / (m0 * m0)
            - (xi * zeta + xi + zeta + 7.0 / 16.0) * m1 * m1 / (m0 * m0 * m0);
        let got = von_roos_effective_potential(xi, zeta, &p, r, v).unwrap();
        assert!((got - expected).abs() < 1e-6, "von Roos FD oracle: {got} vs {expected}");
    }

    #[test]
    fn grid_function_validation_and_stencil() {
        assert!(GridFunction::new(Space::Radial, vec![1.0, 0.5], vec![0.0, 0.0]).is_err());
        assert!(GridFunction::new(Space::Radial, vec![0.5, 1.0], vec![0.0]).is_err());
        assert!(GridFunction::new(Space::Radial, vec![0.5, 1.0], vec![0.0, f64::NAN]).is_err());

        // d/dr sin(r) = cos(r) to fourth order.
        let g = GridFunction::sample_uniform(Space::Radial, 0.0, 3.0, 601, f64::sin).unwrap();
        let d = g.derivative_central4().unwrap();
        for (x, v) in d.grid().iter().zip(d.values()) {
            assert!((v - x.cos()).abs() < 1e-9, "sin' at {x}");
        }
        assert_eq!(d.len(), 601 - 4);

        let nonuniform =
            GridFunction::new(Space::Radial, vec![0.0, 0.1, 0.3, 0.4, 0.5], vec![0.0; 5]).unwrap();
        assert!(nonuniform.derivative_central4().is_err());
    }
}
