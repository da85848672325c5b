use std::f64::consts::SQRT_2;

use super::{Phase, StationaryPoint};
use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Energy per particle at signed amplitudes on the unit sphere.
pub(crate) fn energy_at(p: &ModelParams, r: &[f64; 3]) -> f64 {
    let sigma = r[0] * r[0] - r[1] * r[1] + r[2] * r[2];
    p.u * sigma * sigma + p.eps * (r[2] * r[2] - r[0] * r[0]) + SQRT_2 * p.j * r[1] * (r[0] + r[2])
}

/// Gradient of the constraint-free part of the energy.
fn energy_gradient(p: &ModelParams, r: &[f64; 3]) -> [f64; 3] {
    let sigma = r[0] * r[0] - r[1] * r[1] + r[2] * r[2];
    let sj = SQRT_2 * p.j;
    [
        4.0 * p.u * sigma * r[0] - 2.0 * p.eps * r[0] + sj * r[1],
        -4.0 * p.u * sigma * r[1] + sj * (r[0] + r[2]),
        4.0 * p.u * sigma * r[2] + 2.0 * p.eps * r[2] + sj * r[1],
    ]
}

/// Partial derivatives of the Lagrangian with respect to `(r1, r2, r3, lambda)`.
pub(crate) fn lagrangian_gradient(p: &ModelParams, r: &[f64; 3], lambda: f64) -> [f64; 4] {
    let g = energy_gradient(p, r);
    [
        g[0] - 2.0 * lambda * r[0],
        g[1] - 2.0 * lambda * r[1],
        g[2] - 2.0 * lambda * r[2],
        1.0 - r[0] * r[0] - r[1] * r[1] - r[2] * r[2],
    ]
}

/// Jacobian of [`lagrangian_gradient`] (the bordered Hessian), row-major.
pub(crate) fn lagrangian_hessian(p: &ModelParams, r: &[f64; 3], lambda: f64) -> [[f64; 4]; 4] {
    let [r1, r2, r3] = *r;
    let u = p.u;
    let sigma = r1 * r1 - r2 * r2 + r3 * r3;
    let sj = SQRT_2 * p.j;
    let h11 = 4.0 * u * (sigma + 2.0 * r1 * r1) - 2.0 * p.eps - 2.0 * lambda;
    let h22 = -4.0 * u * (sigma - 2.0 * r2 * r2) - 2.0 * lambda;
    let h33 = 4.0 * u * (sigma + 2.0 * r3 * r3) + 2.0 * p.eps - 2.0 * lambda;
    let h12 = -8.0 * u * r1 * r2 + sj;
    let h13 = 8.0 * u * r1 * r3;
    let h23 = -8.0 * u * r2 * r3 + sj;
    [
        [h11, h12, h13, -2.0 * r1],
        [h12, h22, h23, -2.0 * r2],
        [h13, h23, h33, -2.0 * r3],
        [-2.0 * r1, -2.0 * r2, -2.0 * r3, 0.0],
    ]
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Least-squares multiplier for the three amplitude equations at `r`.
fn best_fit_lambda(p: &ModelParams, r: &[f64; 3]) -> f64 {
    let g = energy_gradient(p, r);
    let rr: f64 = r.iter().map(|x| x * x).sum();
    let gr: f64 = g.iter().zip(r).map(|(a, b)| a * b).sum();
    gr / (2.0 * rr)
}

/// Energy per particle at occupation fractions `occ` and phase differences
/// `(phi12, phi23)`, on the constraint surface.
pub fn classical_energy(occ: &[f64; 3], phases: Option<[Phase; 2]>, p: &ModelParams) -> Result<f64> {
    let total: f64 = occ.iter().sum();
    if (total - 1.0).abs() > 1e-8 || occ.iter().any(|x| *x < -1e-12) {
        return Err(Error::ConstraintViolation(total));
    }
    let [c12, c23] = match phases {
        Some([a, b]) => [a.cos(), b.cos()],
        None if p.j == 0.0 => [0.0, 0.0],
        None => return Err(Error::PhasesRequired),
    };
    let r = occ.map(|x| x.max(0.0).sqrt());
    let sigma = occ[0] - occ[1] + occ[2];
    Ok(p.u * sigma * sigma
        + p.eps * (occ[2] - occ[0])
        + SQRT_2 * p.j * (r[0] * r[1] * c12 + r[1] * r[2] * c23))
}

/// Euclidean norm of the Lagrangian gradient at `pt`. Uses the least-squares
/// multiplier when `pt.lambda` is absent.
pub fn stationarity_residual(pt: &StationaryPoint, p: &ModelParams) -> f64 {
    let r = pt.amplitudes();
    let lambda = pt.lambda.unwrap_or_else(|| best_fit_lambda(p, &r));
    norm(&lagrangian_gradient(p, &r, lambda))
}
