//! Independent numerical verification engine: a finite-difference
//! eigensolver on a compact interval, a deformed-operator residual check on
//! radial samples, and adaptive Gauss-Kronrod quadrature.
//!
//! Eigensolving happens in the angular variable `u` on `(0, pi/2)` (compact
//! domain, constant mass), so there is no truncation radius to tune; the
//! energy map `E = alpha eps + c` converts results back to the radial
//! problem.

use crate::error::{Error, Result};
use crate::pct::{self, GridFunction, ModelParams};

/// Default interior grid size for the eigensolver; tolerances elsewhere
/// assume this together with one Richardson step.
pub const DEFAULT_POINTS: usize = 4096;

/// Dirichlet eigenproblem `(-d^2/du^2 + U(u)) phi = eps phi` on an open
/// interval, discretized on `points` interior nodes.
pub struct FdProblem<F: Fn(f64) -> f64> {
    pub potential: F,
    pub interval: (f64, f64),
    pub points: usize,
}

impl<F: Fn(f64) -> f64> FdProblem<F> {
    pub fn new(potential: F, interval: (f64, f64), points: usize) -> Result<Self> {
        if points < 64 {
            return Err(Error::Grid(format!("need at least 64 points, got {points}")));
        }
        if !(interval.0 < interval.1) {
            return Err(Error::Grid(format!(
                "need lo < hi, got ({}, {})",
                interval.0, interval.1
            )));
        }
        Ok(FdProblem { potential, interval, points })
    }
}

/// Lowest `k` eigenvalues of the symmetric tridiagonal 3-point
/// discretization with Dirichlet walls, Richardson-extrapolated over the
/// base grid and one spacing-halved grid (O(h^2) -> O(h^4)).
pub fn fd_eigenvalues<F: Fn(f64) -> f64>(problem: &FdProblem<F>, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > problem.points / 4 {
        return Err(Error::Grid(format!(
            "eigenvalue count {k} must be in 1..=points/4 = {}",
            problem.points / 4
        )));
    }
    let coarse = dirichlet_eigenvalues(&problem.potential, problem.interval, problem.points, k)?;
    // 2N+1 interior nodes halve the spacing exactly.
    let fine =
        dirichlet_eigenvalues(&problem.potential, problem.interval, 2 * problem.points + 1, k)?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(&c, &f)| (4.0 * f - c) / 3.0)
        .collect())
}

fn dirichlet_eigenvalues<F: Fn(f64) -> f64>(
    potential: &F,
    (lo, hi): (f64, f64),
    n: usize,
    k: usize,
) -> Result<Vec<f64>> {
    let h = (hi - lo) / (n + 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(n);
    for i in 1..=n {
        let u = lo + i as f64 * h;
        let v = potential(u);
        if !v.is_finite() {
            return Err(Error::Grid(format!("potential is not finite at node u = {u}")));
        }
        diag.push(2.0 * inv_h2 + v);
    }
    let off2 = inv_h2 * inv_h2; // squared off-diagonal, constant
    Ok(tridiag_lowest_eigenvalues(&diag, off2, k))
}

/// Lowest `k` eigenvalues of a symmetric tridiagonal matrix with constant
/// off-diagonal (given squared), by bisection on the Sturm sequence count.
/// Deterministic: plain bisection to near machine precision.
fn tridiag_lowest_eigenvalues(diag: &[f64], off2: f64, k: usize) -> Vec<f64> {
    let off = off2.sqrt();
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for (i, &d) in diag.iter().enumerate() {
        let radius = if i == 0 || i + 1 == diag.len() { off } else { 2.0 * off };
        let radius = if diag.len() == 1 { 0.0 } else { radius };
        lower = lower.min(d - radius);
        upper = upper.max(d + radius);
    }
    let pivmin = f64::MIN_POSITIVE.max(off2 * f64::MIN_POSITIVE);

    let count_below = |x: f64| -> usize {
        let mut count = 0usize;
        let mut q = 1.0f64;
        for (i, &d) in diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - off2 / q };
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };

    (1..=k)
        .map(|j| {
            let mut lo = lower;
            let mut hi = upper;
            // Bisection preserves count(lo) < j <= count(hi).
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if count_below(mid) >= j {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-13 * hi.abs().max(lo.abs()).max(1.0) {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Lowest `k` eigenvalues of the deformed radial Hamiltonian
/// `pi_r^2 + V(r)` computed by mapping onto the angular interval:
/// `U(u) = V(r(u)) / alpha` and `E = alpha * eps`.
pub fn deformed_eigenvalues<F: Fn(f64) -> f64>(
    params: &ModelParams,
    potential: F,
    k: usize,
    points: usize,
) -> Result<Vec<f64>> {
    params.require_deformed()?;
    let alpha = params.alpha();
    let sqrt_alpha = alpha.sqrt();
    let problem = FdProblem::new(
        move |u: f64| potential(u.tan() / sqrt_alpha) / alpha,
        (0.0, std::f64::consts::FRAC_PI_2),
        points,
    )?;
    let eps = fd_eigenvalues(&problem, k)?;
    Ok(eps.into_iter().map(|e| alpha * e).collect())
}

/// Relative L2 residual of `(pi_r^2 + V - E) psi` on the interior of a
/// uniform radial grid, with `pi_r^2` realized as the nested composition
/// `-sqrt(f) D [ f D ( sqrt(f) psi ) ]` of fourth-order first-derivative
/// stencils (two interior points lost per application).
pub fn deformed_residual<F: Fn(f64) -> f64>(
    params: &ModelParams,
    potential: F,
    psi: &GridFunction,
    energy: f64,
) -> Result<f64> {
    if psi.len() < 9 {
        return Err(Error::Grid(format!(
            "residual stencil needs >= 9 points, got {}",
            psi.len()
        )));
    }
    psi.uniform_spacing()?;

    let weighted = GridFunction::new(
        psi.space(),
        psi.grid().to_vec(),
        psi.grid()
            .iter()
            .zip(psi.values())
            .map(|(&r, &v)| pct::deforming_f(params, r).sqrt() * v)
            .collect(),
    )?;
    let d1 = weighted.derivative_central4()?;
    let fd1 = GridFunction::new(
        d1.space(),
        d1.grid().to_vec(),
        d1.grid()
            .iter()
            .zip(d1.values())
            .map(|(&r, &v)| pct::deforming_f(params, r) * v)
            .collect(),
    )?;
    let d2 = fd1.derivative_central4()?;

    // d2 lives on psi's grid minus 4 points per side.
    let inner = psi.interior(4, 4)?;
    let mut res_sq = 0.0;
    let mut psi_sq = 0.0;
    for ((&r, &pi2v), &p) in d2.grid().iter().zip(d2.values()).zip(inner.values()) {
        let kinetic = -pct::deforming_f(params, r).sqrt() * pi2v;
        let res = kinetic + (potential(r) - energy) * p;
        res_sq += res * res;
        psi_sq += p * p;
    }
    if psi_sq == 0.0 {
        return Err(Error::Grid("residual undefined for identically zero samples".into()));
    }
    Ok((res_sq / psi_sq).sqrt())
}

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let sum = f(center - x) + f(center + x);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    let err = ((kronrod - gauss) * half).abs();
    (kronrod * half, err)
}

#[derive(Debug)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

/// Adaptive Gauss-Kronrod (G7, K15) integral of `f` over `(lo, hi)` with
/// absolute error target `tol`. `hi` may be `f64::INFINITY`, handled by the
/// substitution `x = lo + s/(1-s)`. Non-convergence within the subdivision
/// budget is an explicit error, never a silent value.
pub fn quad_integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("quadrature tolerance must be > 0, got {tol}")));
    }
    if hi.is_infinite() {
        if lo.is_infinite() {
            return Err(Error::Domain("doubly infinite intervals are not supported".into()));
        }
        let g = move |s: f64| {
            let one_minus = 1.0 - s;
            f(lo + s / one_minus) / (one_minus * one_minus)
        };
        return quad_finite(&g, 0.0, 1.0, tol);
    }
    if !(lo < hi) {
        return Err(Error::Domain(format!("need lo < hi, got ({lo}, {hi})")));
    }
    quad_finite(&f, lo, hi, tol)
}

fn quad_finite<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    const MAX_SEGMENTS: usize = 4096;
    let (value, error) = gk15(f, lo, hi);
    let mut segments = vec![Segment { lo, hi, value, error }];
    loop {
        let total_err: f64 = segments.iter().map(|s| s.error).sum();
        if total_err <= tol {
            return Ok(segments.iter().map(|s| s.value).sum());
        }
        if segments.len() >= MAX_SEGMENTS {
            return Err(Error::QuadratureNonConvergence(format!(
                "error {total_err:.3e} above tolerance {tol:.3e} after {MAX_SEGMENTS} segments"
            )));
        }
        // Split the segment with the largest error estimate; ties broken by
        // position so the subdivision order is deterministic.
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| {
                a.error
                    .total_cmp(&b.error)
                    .then(b.lo.total_cmp(&a.lo))
            })
            .map(|(i, _)| i)
            .expect("segment list never empty");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.lo + seg.hi);
        if !(seg.lo < mid && mid < seg.hi) {
            return Err(Error::QuadratureNonConvergence(format!(
                "interval [{}, {}] can no longer be split",
                seg.lo, seg.hi
            )));
        }
        let (v1, e1) = gk15(f, seg.lo, mid);
        let (v2, e2) = gk15(f, mid, seg.hi);
        segments.push(Segment { lo: seg.lo, hi: mid, value: v1, error: e1 });
        segments.push(Segment { lo: mid, hi: seg.hi, value: v2, error: e2 });
    }
}
