//! Stationary points away from the integrable limits.
//!
//! Real roots `y = r2^2` of the degree-7 polynomial are turned into full
//! points through the auxiliary variable `X = lambda - 2U(1 - 2y)`:
//!
//! ```text
//! X^2 = eps^2 + J y / (2(1 - y)) * (J +- sqrt(J^2 + 8 eps^2 (1 - y) / y))
//! r1 = J r2 / (sqrt2 (X + eps)),  r3 = J r2 / (sqrt2 (X - eps))
//! ```
//!
//! and then polished by Newton iteration on the Lagrange system.

use faer::prelude::Solve;
use faer::Mat;

use super::energy::{energy_at, lagrangian_gradient, lagrangian_hessian, norm};
use super::polynomial::{polynomial_coefficients, PolynomialCoeffs};
use super::tables::{stationary_points_eps0, stationary_points_j0, stationary_points_u0};
use super::{dedup, Branch, Phase, Regime, StationaryPoint};
use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Unpolished candidates must have a residual below this, relative to the
/// coupling scale.
const CANDIDATE_REL_TOL: f64 = 1e-6;
/// Polished points must have a residual below this times `max(1, scale)`.
pub const RESIDUAL_TOL: f64 = 1e-9;
const SINGULAR_REL_TOL: f64 = 1e-10;
const MAX_NEWTON_STEPS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverCandidate {
    pub rho2_sq: f64,
    pub x: f64,
    /// Signs `[outer, inner]` of the two square roots in the `X` formula.
    pub sign_choices: [i8; 2],
}

impl SolverCandidate {
    /// `lambda` and signed amplitudes `(r1, r2, r3)` with `r2 > 0`.
    pub fn recover(&self, p: &ModelParams) -> (f64, [f64; 3]) {
        let y = self.rho2_sq;
        let r2 = y.sqrt();
        let c = std::f64::consts::FRAC_1_SQRT_2 * p.j * r2;
        let lambda = self.x + 2.0 * p.u * (1.0 - 2.0 * y);
        (lambda, [c / (self.x + p.eps), r2, c / (self.x - p.eps)])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CandidateFailure {
    /// Rejected before polishing.
    Residual { candidate: SolverCandidate, residual: f64 },
    /// Newton iteration did not reach the residual tolerance.
    Diverged { candidate: SolverCandidate, residual: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralSolution {
    pub coeffs: PolynomialCoeffs,
    /// Every real root of the polynomial, ascending.
    pub real_roots: Vec<f64>,
    pub points: Vec<StationaryPoint>,
    pub failures: Vec<CandidateFailure>,
}

impl GeneralSolution {
    /// Real roots inside `(0, 1)`, the only ones that can be `r2^2`.
    pub fn admissible_roots(&self) -> impl Iterator<Item = f64> + '_ {
        self.real_roots.iter().copied().filter(|y| *y > 0.0 && *y < 1.0)
    }
}

/// The (up to four) real values of `X` for `r2^2 = y`.
pub fn x_candidates(p: &ModelParams, y: f64) -> Vec<SolverCandidate> {
    let mut out = Vec::new();
    if !(y > 0.0 && y < 1.0) {
        return out;
    }
    let (j, eps) = (p.j, p.eps);
    let inner = (j * j + 8.0 * eps * eps * (1.0 - y) / y).sqrt();
    let pre = j * y / (2.0 * (1.0 - y));
    let guard = SINGULAR_REL_TOL * p.coupling_scale();
    for inner_sign in [1i8, -1] {
        let t = eps * eps + pre * (j + f64::from(inner_sign) * inner);
        if t < 0.0 {
            continue;
        }
        for outer_sign in [1i8, -1] {
            let x = f64::from(outer_sign) * t.sqrt();
            if (x - eps).abs() < guard || (x + eps).abs() < guard {
                continue;
            }
            out.push(SolverCandidate { rho2_sq: y, x, sign_choices: [outer_sign, inner_sign] });
        }
    }
    out
}

/// Newton iteration on the Lagrange system. Returns the best iterate and its
/// residual.
fn polish(p: &ModelParams, r: [f64; 3], lambda: f64) -> ([f64; 3], f64, f64) {
    let mut z = [r[0], r[1], r[2], lambda];
    let resid = |z: &[f64; 4]| norm(&lagrangian_gradient(p, &[z[0], z[1], z[2]], z[3]));
    let mut best = (z, resid(&z));
    let floor = 1e-15 * p.coupling_scale().max(1.0);
    for _ in 0..MAX_NEWTON_STEPS {
        if best.1 <= floor {
            break;
        }
        let rr = [z[0], z[1], z[2]];
        let g = lagrangian_gradient(p, &rr, z[3]);
        let h = lagrangian_hessian(p, &rr, z[3]);
        let a = Mat::<f64>::from_fn(4, 4, |i, k| h[i][k]);
        let b = Mat::<f64>::from_fn(4, 1, |i, _| -g[i]);
        let dz = a.partial_piv_lu().solve(&b);
        let mut next = z;
        for (i, v) in next.iter_mut().enumerate() {
            *v += dz[(i, 0)];
        }
        if next.iter().any(|v| !v.is_finite()) {
            break;
        }
        z = next;
        let rz = resid(&z);
        if rz < best.1 {
            best = (z, rz);
        }
    }
    let (z, res) = best;
    ([z[0], z[1], z[2]], z[3], res)
}

/// Builds a point from signed amplitudes, flipping the global sign so that
/// `r2 >= 0`.
fn to_point(p: &ModelParams, r: [f64; 3], lambda: f64) -> StationaryPoint {
    let s = if r[1] < 0.0 { -1.0 } else { 1.0 };
    let n = norm(&r);
    let r = r.map(|x| s * x / n);
    let occ = r.map(|x| x * x);
    StationaryPoint {
        occ,
        phases: Some([Phase::from_sign(r[0] * r[1]), Phase::from_sign(r[1] * r[2])]),
        energy: energy_at(p, &r),
        lambda: Some(lambda),
        branch: Branch::General,
    }
}

/// Polynomial route for `U`, `J` and `eps` all nonzero.
pub fn solve_general(p: &ModelParams) -> Result<GeneralSolution> {
    p.validate()?;
    if Regime::of(p)? != Regime::General {
        return Err(Error::InvalidParams(format!(
            "polynomial route needs U, J, eps all nonzero, got U={} J={} eps={}",
            p.u, p.j, p.eps
        )));
    }
    let scale = p.coupling_scale();
    let accept = RESIDUAL_TOL * scale.max(1.0);
    let coeffs = polynomial_coefficients(p.u, p.j, p.eps);
    let real_roots = coeffs.real_roots();

    let mut points = Vec::new();
    let mut failures = Vec::new();
    for y in real_roots.iter().copied().filter(|y| *y > 0.0 && *y < 1.0) {
        for cand in x_candidates(p, y) {
            let (lambda, r) = cand.recover(p);
            let residual = norm(&lagrangian_gradient(p, &r, lambda));
            if !(residual < CANDIDATE_REL_TOL * scale) {
                failures.push(CandidateFailure::Residual { candidate: cand, residual });
                continue;
            }
            let (r, lambda, residual) = polish(p, r, lambda);
            if residual < accept {
                points.push(to_point(p, r, lambda));
            } else {
                failures.push(CandidateFailure::Diverged { candidate: cand, residual });
            }
        }
    }

    // Pure Fock configurations lie outside the parametrization.
    for k in 0..3 {
        let mut r = [0.0; 3];
        r[k] = 1.0;
        let g = lagrangian_gradient(p, &r, 0.0);
        // Only the k-th equation involves lambda; it fixes lambda = g_k / 2.
        let lambda = g[k] / 2.0;
        if norm(&lagrangian_gradient(p, &r, lambda)) < accept {
            points.push(to_point(p, r, lambda));
        }
    }

    let points = dedup(points);
    if points.is_empty() {
        return Err(Error::NoStationaryPoint);
    }
    Ok(GeneralSolution { coeffs, real_roots, points, failures })
}

/// Stationary points for any couplings: the closed-form table of the
/// matching integrable limit, otherwise the polynomial route.
pub fn general_stationary_points(p: &ModelParams) -> Result<Vec<StationaryPoint>> {
    p.validate()?;
    match Regime::of(p)? {
        Regime::NoTunneling => stationary_points_j0(p.u, p.eps),
        Regime::NoInteraction => stationary_points_u0(p.j, p.eps),
        Regime::NoTilt => stationary_points_eps0(p.u, p.j),
        Regime::General => Ok(solve_general(p)?.points),
    }
}
