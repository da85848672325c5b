//! Stationary points of the coherent-state energy per particle
//!
//! ```text
//! E(r) = U (r1^2 - r2^2 + r3^2)^2 + eps (r3^2 - r1^2) + sqrt2 J (r1 r2 + r2 r3)
//! ```
//!
//! on the unit sphere, with Lagrange multiplier `lambda` for the constraint.
//! The phase differences only enter through `cos(phi) = +-1`, so they are
//! carried as signs of the real amplitudes `r1`, `r3` (with `r2 >= 0`) and
//! exported as [`Phase`] pairs.

mod energy;
mod general;
mod polynomial;
mod tables;
mod transition;

use std::cmp::Ordering;
use std::fmt;

pub use energy::{classical_energy, stationarity_residual};
pub use general::{
    general_stationary_points, solve_general, x_candidates, CandidateFailure, GeneralSolution,
    SolverCandidate,
};
pub use polynomial::{polynomial_coefficients, PolynomialCoeffs};
pub use tables::{stationary_points_eps0, stationary_points_j0, stationary_points_u0};
pub use transition::{
    critical_point, detect_bifurcation, directional_derivative_test, BifurcationPredicate,
    ClosedFormBranch, DirectionalDerivatives, Family,
};

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Relative size below which a coupling is treated as exactly zero.
pub const DISPATCH_REL_TOL: f64 = 1e-12;
/// Energy window for ties between minimum-energy points.
pub const TIE_TOL: f64 = 1e-12;
/// Occupation distance below which two points are the same.
pub const DEDUP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Zero,
    Pi,
}

impl Phase {
    pub fn from_sign(x: f64) -> Self {
        if x < 0.0 {
            Phase::Pi
        } else {
            Phase::Zero
        }
    }

    pub fn cos(self) -> f64 {
        match self {
            Phase::Zero => 1.0,
            Phase::Pi => -1.0,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Zero => "0",
            Phase::Pi => "pi",
        })
    }
}

/// Row label of a closed-form stationary point, or `General` for points
/// found by the polynomial route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    X1,
    X2,
    X3,
    X4,
    X5,
    General,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::X1 => "x1",
            Branch::X2 => "x2",
            Branch::X3 => "x3",
            Branch::X4 => "x4",
            Branch::X5 => "x5",
            Branch::General => "general",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryPoint {
    /// N1/N, N2/N, N3/N
    pub occ: [f64; 3],
    /// (phi12, phi23); `None` when `J = 0`, where they are arbitrary.
    pub phases: Option<[Phase; 2]>,
    /// E/N
    pub energy: f64,
    pub lambda: Option<f64>,
    pub branch: Branch,
}

impl StationaryPoint {
    /// Signed amplitudes `(r1, r2, r3)` with `r2 >= 0`.
    pub fn amplitudes(&self) -> [f64; 3] {
        let [c12, c23] = match self.phases {
            Some([a, b]) => [a.cos(), b.cos()],
            None => [1.0, 1.0],
        };
        let r = self.occ.map(|x| x.max(0.0).sqrt());
        [c12 * r[0], r[1], c23 * r[2]]
    }

    /// Same configuration up to `DEDUP_TOL` in occupations.
    pub fn coincides_with(&self, other: &StationaryPoint) -> bool {
        self.phases == other.phases
            && self.occ.iter().zip(&other.occ).all(|(a, b)| (a - b).abs() < DEDUP_TOL)
    }

    /// Larger `N1` first, then larger `N2`: the tie at `eps = 0` resolves to
    /// the limit `eps -> 0+`.
    fn cmp_occ(&self, other: &StationaryPoint) -> Ordering {
        self.occ
            .iter()
            .zip(&other.occ)
            .map(|(a, b)| b.total_cmp(a))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

/// Which closed form (if any) applies to a set of couplings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    NoTunneling,
    NoInteraction,
    NoTilt,
    General,
}

impl Regime {
    pub fn of(p: &ModelParams) -> Result<Self> {
        let scale = p.coupling_scale();
        if scale == 0.0 {
            return Err(Error::DegenerateCouplings("U = J = eps = 0"));
        }
        let negligible = |x: f64| x.abs() < DISPATCH_REL_TOL * scale;
        Ok(if negligible(p.j) {
            Regime::NoTunneling
        } else if negligible(p.u) {
            Regime::NoInteraction
        } else if negligible(p.eps) {
            Regime::NoTilt
        } else {
            Regime::General
        })
    }
}

/// All stationary points for `p`, from the closed form of its regime or the
/// polynomial route.
pub fn stationary_points(p: &ModelParams) -> Result<Vec<StationaryPoint>> {
    match Regime::of(p)? {
        Regime::NoTunneling => stationary_points_j0(p.u, p.eps),
        Regime::NoInteraction => stationary_points_u0(p.j, p.eps),
        Regime::NoTilt => stationary_points_eps0(p.u, p.j),
        Regime::General => Ok(solve_general(p)?.points),
    }
}

/// Lowest-energy stationary point together with every distinct point tied
/// with it (within [`TIE_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct MinimumEnergy {
    /// Lexicographically smallest occupation triple among the ties.
    pub point: StationaryPoint,
    /// All distinct tied points, `point` included, sorted by occupations.
    pub degenerate: Vec<StationaryPoint>,
}

impl MinimumEnergy {
    pub fn multiplicity(&self) -> usize {
        self.degenerate.len()
    }
}

pub fn min_energy_point(p: &ModelParams) -> Result<MinimumEnergy> {
    select_minimum(stationary_points(p)?)
}

pub(crate) fn select_minimum(points: Vec<StationaryPoint>) -> Result<MinimumEnergy> {
    let e_min = points
        .iter()
        .map(|pt| pt.energy)
        .min_by(f64::total_cmp)
        .ok_or(Error::NoStationaryPoint)?;
    let mut ties = dedup(points.into_iter().filter(|pt| pt.energy - e_min <= TIE_TOL).collect());
    ties.sort_by(StationaryPoint::cmp_occ);
    Ok(MinimumEnergy { point: ties[0].clone(), degenerate: ties })
}

/// Drops points that coincide with an earlier one.
pub(crate) fn dedup(points: Vec<StationaryPoint>) -> Vec<StationaryPoint> {
    let mut out: Vec<StationaryPoint> = Vec::with_capacity(points.len());
    for pt in points {
        if !out.iter().any(|q| q.coincides_with(&pt)) {
            out.push(pt);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn couplings(u: f64, j: f64, e: f64) -> ModelParams {
        ModelParams { u, j, eps: e, n: 1 }
    }

    #[test]
    fn regime_dispatch() {
        assert_eq!(Regime::of(&couplings(1.0, 0.0, 1.0)).unwrap(), Regime::NoTunneling);
        assert_eq!(Regime::of(&couplings(1e-14, 1.0, 1.0)).unwrap(), Regime::NoInteraction);
        assert_eq!(Regime::of(&couplings(1.0, 1.0, 0.0)).unwrap(), Regime::NoTilt);
        assert_eq!(Regime::of(&couplings(1.0, 1.0, 1e-6)).unwrap(), Regime::General);
        assert!(Regime::of(&couplings(0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn attractive_untilted_minimum_is_doubly_degenerate() {
        let m = min_energy_point(&couplings(-1.0, 1.0, 0.0)).unwrap();
        assert_eq!(m.multiplicity(), 2);
        let labels: Vec<_> = m.degenerate.iter().map(|p| p.branch).collect();
        assert!(labels.contains(&Branch::X4) && labels.contains(&Branch::X5));
        for pt in &m.degenerate {
            assert!((pt.energy + 1.25).abs() < 1e-14);
        }
        // x4 has the larger N1/N
        assert_eq!(m.point.branch, Branch::X4);
    }

    #[test]
    fn repulsive_untilted_minimum() {
        let m = min_energy_point(&couplings(0.3, 1.0, 0.0)).unwrap();
        assert_eq!(m.multiplicity(), 1);
        assert_eq!(m.point.branch, Branch::X3);
        assert!((m.point.energy + 1.0).abs() < 1e-15);
    }

    #[test]
    fn tiny_tilt_lifts_degeneracy() {
        let m = min_energy_point(&couplings(-1.0, 1.0, 1e-3)).unwrap();
        assert_eq!(m.multiplicity(), 1);
        assert_eq!(m.point.branch, Branch::General);
    }

    #[test]
    fn amplitudes_follow_phases() {
        let pt = StationaryPoint {
            occ: [0.25, 0.5, 0.25],
            phases: Some([Phase::Pi, Phase::Zero]),
            energy: 0.0,
            lambda: None,
            branch: Branch::General,
        };
        let a = pt.amplitudes();
        assert!((a[0] + 0.5).abs() < 1e-15 && (a[2] - 0.5).abs() < 1e-15);
        assert!(a[1] > 0.0);
    }
}
