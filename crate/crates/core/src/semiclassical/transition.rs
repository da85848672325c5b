//! Phase-transition diagnostics for the two integrable families with a
//! critical point.

use super::{min_energy_point, stationary_points, Branch};
use crate::error::{Error, Result};
use crate::params::ModelParams;

const FIRST_STEP: f64 = 1e-4;
const SECOND_STEP: f64 = 1e-3;
const FIRST_TOL: f64 = 1e-6;
const SECOND_TOL: f64 = 1e-3;
const SAMPLES: usize = 65;
const BISECTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `J = 0`, energies as functions of `(U, eps)`.
    NoTunneling,
    /// `eps = 0`, energies as functions of `(U, J)`.
    NoTilt,
}

/// Location of the critical point: `U/eps` for [`Family::NoTunneling`],
/// `U/J` for [`Family::NoTilt`].
pub fn critical_point(family: Family) -> f64 {
    match family {
        Family::NoTunneling => 0.25,
        Family::NoTilt => -0.5,
    }
}

/// Energy per particle of one closed-form branch, continued analytically
/// outside its existence region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormBranch {
    pub family: Family,
    pub branch: Branch,
}

impl ClosedFormBranch {
    pub fn new(family: Family, branch: Branch) -> Self {
        Self { family, branch }
    }

    /// `None` where the closed form is singular (`U = 0` for the
    /// interaction-dominated branches) or for `Branch::General`.
    pub fn energy(&self, a: f64, b: f64) -> Option<f64> {
        let u = a;
        let e = match (self.family, self.branch) {
            (Family::NoTunneling, Branch::X1) => u + b,
            (Family::NoTunneling, Branch::X3) => u,
            (Family::NoTunneling, Branch::X4) => u - b,
            (Family::NoTunneling, Branch::X2) if u != 0.0 => -b * b / (16.0 * u) + b / 2.0,
            (Family::NoTunneling, Branch::X5) if u != 0.0 => -b * b / (16.0 * u) - b / 2.0,
            (Family::NoTilt, Branch::X1) => u,
            (Family::NoTilt, Branch::X2) => b,
            (Family::NoTilt, Branch::X3) => -b,
            (Family::NoTilt, Branch::X4 | Branch::X5) if u != 0.0 => u + b * b / (4.0 * u),
            _ => return None,
        };
        e.is_finite().then_some(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalDerivatives {
    pub d1a: f64,
    pub d1b: f64,
    pub d2a: f64,
    pub d2b: f64,
    /// Continuous first and discontinuous second derivative.
    pub second_order: bool,
}

/// First and second derivatives of two branches along `v` at `at`, by
/// fourth-order central differences. `v` is normalized here.
pub fn directional_derivative_test(
    a: &ClosedFormBranch,
    b: &ClosedFormBranch,
    at: (f64, f64),
    v: (f64, f64),
) -> Result<DirectionalDerivatives> {
    let len = v.0.hypot(v.1);
    if !(len > 0.0) || !len.is_finite() {
        return Err(Error::InvalidParams("direction must be nonzero".into()));
    }
    let v = (v.0 / len, v.1 / len);
    let scale = at.0.abs().max(at.1.abs()).max(f64::MIN_POSITIVE);
    let (h1, h2) = (FIRST_STEP * scale, SECOND_STEP * scale);

    let samples = |br: &ClosedFormBranch, h: f64| -> Result<[f64; 5]> {
        let mut f = [0.0; 5];
        for (k, fk) in f.iter_mut().enumerate() {
            let s = (k as f64 - 2.0) * h;
            let (x, y) = (at.0 + s * v.0, at.1 + s * v.1);
            *fk = br.energy(x, y).ok_or(Error::BranchUndefined(x, y))?;
        }
        Ok(f)
    };
    let d1 = |f: [f64; 5]| (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h1);
    let d2 = |f: [f64; 5]| {
        (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h2 * h2)
    };

    let d1a = d1(samples(a, h1)?);
    let d1b = d1(samples(b, h1)?);
    let d2a = d2(samples(a, h2)?);
    let d2b = d2(samples(b, h2)?);
    Ok(DirectionalDerivatives {
        d1a,
        d1b,
        d2a,
        d2b,
        second_order: (d1a - d1b).abs() < FIRST_TOL && (d2a - d2b).abs() > SECOND_TOL,
    })
}

/// Quantity watched along a path by [`detect_bifurcation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BifurcationPredicate {
    /// More than one distinct minimum-energy point.
    DegenerateMinimum,
    /// Number of distinct stationary points.
    BranchCount,
}

impl BifurcationPredicate {
    fn eval(self, p: &ModelParams) -> Result<usize> {
        Ok(match self {
            BifurcationPredicate::DegenerateMinimum => {
                usize::from(min_energy_point(p)?.multiplicity() > 1)
            }
            BifurcationPredicate::BranchCount => stationary_points(p)?.len(),
        })
    }
}

/// First parameter in `[t0, t1]` where `predicate` changes along `path`,
/// located by sampling and bisection. `None` if it never changes at the
/// sample points.
pub fn detect_bifurcation<F>(
    path: F,
    t0: f64,
    t1: f64,
    predicate: BifurcationPredicate,
) -> Result<Option<f64>>
where
    F: Fn(f64) -> ModelParams,
{
    let at = |t: f64| predicate.eval(&path(t));
    let step = (t1 - t0) / (SAMPLES - 1) as f64;
    let mut prev = (t0, at(t0)?);
    for k in 1..SAMPLES {
        let t = if k == SAMPLES - 1 { t1 } else { t0 + k as f64 * step };
        let cur = at(t)?;
        if cur != prev.1 {
            let (mut lo, mut hi) = (prev.0, t);
            let left = prev.1;
            while (hi - lo).abs() > BISECTION_TOL * (1.0 + lo.abs().max(hi.abs())) {
                let mid = 0.5 * (lo + hi);
                if at(mid)? == left {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(Some(0.5 * (lo + hi)));
        }
        prev = (t, cur);
    }
    Ok(None)
}
