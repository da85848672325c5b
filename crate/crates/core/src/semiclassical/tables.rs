//! Closed-form stationary points of the three integrable limits.

use super::{Branch, Phase, StationaryPoint};
use crate::error::{Error, Result};

fn point(
    branch: Branch,
    occ: [f64; 3],
    phases: Option<[Phase; 2]>,
    energy: f64,
    lambda: f64,
) -> StationaryPoint {
    StationaryPoint { occ, phases, energy, lambda: Some(lambda), branch }
}

/// `U = 0`: the three single-particle eigenvectors, with `lambda` equal to
/// the energy.
///
/// The phase of each bond follows from the stationarity conditions:
/// `sign(r1 r2) = sign(J (lambda + eps))` and `sign(r2 r3) = sign(J (lambda - eps))`.
pub fn stationary_points_u0(j: f64, eps: f64) -> Result<Vec<StationaryPoint>> {
    if j == 0.0 && eps == 0.0 {
        return Err(Error::DegenerateCouplings("U = 0 needs J != 0 or eps != 0"));
    }
    let s2 = eps * eps + j * j;
    let s = s2.sqrt();
    let sgn = if eps < 0.0 { -1.0 } else { 1.0 };
    let side = j * j / (2.0 * s2);
    let big = ((s2 + eps.abs() * s) / (2.0 * s2)).powi(2);
    let small = ((s2 - eps.abs() * s) / (2.0 * s2)).powi(2);

    let bond_phases = |lambda: f64| {
        (j != 0.0).then(|| [Phase::from_sign(j * (lambda + eps)), Phase::from_sign(j * (lambda - eps))])
    };
    // lambda = 0 leaves sign(J eps) and sign(-J eps); at eps = 0 the middle
    // well is empty and r3 = -r1.
    let x1_phases = (j != 0.0).then(|| {
        if j * eps >= 0.0 {
            [Phase::Zero, Phase::Pi]
        } else {
            [Phase::Pi, Phase::Zero]
        }
    });

    let l2 = -sgn * s;
    let l3 = sgn * s;
    Ok(vec![
        point(Branch::X1, [side, eps * eps / s2, side], x1_phases, 0.0, 0.0),
        point(Branch::X2, [big, side, small], bond_phases(l2), l2, l2),
        point(Branch::X3, [small, side, big], bond_phases(l3), l3, l3),
    ])
}

/// `J = 0`: the three pure Fock configurations, plus `x2` and `x5` when
/// `|U| >= |eps|/4`. Phases are arbitrary and reported as `None`.
pub fn stationary_points_j0(u: f64, eps: f64) -> Result<Vec<StationaryPoint>> {
    if u == 0.0 && eps == 0.0 {
        return Err(Error::DegenerateCouplings("J = 0 needs U != 0 or eps != 0"));
    }
    let mut pts = vec![point(Branch::X1, [0.0, 0.0, 1.0], None, u + eps, 2.0 * u + eps)];
    let mixed = u != 0.0 && u.abs() >= eps.abs() / 4.0;
    let shift = if mixed { eps / (8.0 * u) } else { 0.0 };
    let lower = -eps * eps / (16.0 * u);
    if mixed {
        pts.push(point(
            Branch::X2,
            [0.0, 0.5 + shift, 0.5 - shift],
            None,
            lower + eps / 2.0,
            eps / 2.0,
        ));
    }
    pts.push(point(Branch::X3, [0.0, 1.0, 0.0], None, u, 2.0 * u));
    pts.push(point(Branch::X4, [1.0, 0.0, 0.0], None, u - eps, 2.0 * u - eps));
    if mixed {
        pts.push(point(
            Branch::X5,
            [0.5 + shift, 0.5 - shift, 0.0],
            None,
            lower - eps / 2.0,
            -eps / 2.0,
        ));
    }
    Ok(pts)
}

/// `eps = 0`: five points with `N1 = N3`; `x4` and `x5` exist only for
/// `|U| >= |J|/2`.
pub fn stationary_points_eps0(u: f64, j: f64) -> Result<Vec<StationaryPoint>> {
    if j == 0.0 {
        return Err(Error::DegenerateCouplings("eps = 0 table needs J != 0; use the J = 0 table"));
    }
    let mut pts = vec![
        point(Branch::X1, [0.5, 0.0, 0.5], Some([Phase::Zero, Phase::Pi]), u, 2.0 * u),
        point(Branch::X2, [0.25, 0.5, 0.25], Some([Phase::Zero, Phase::Zero]), j, j),
        point(Branch::X3, [0.25, 0.5, 0.25], Some([Phase::Pi, Phase::Pi]), -j, -j),
    ];
    if u != 0.0 && u.abs() >= j.abs() / 2.0 {
        let q = (4.0 - (j * j) / (u * u)).max(0.0).sqrt();
        let e = u + j * j / (4.0 * u);
        // r1 / r2 has the sign of J U on both branches
        let ph = Phase::from_sign(j * u);
        let phases = Some([ph, ph]);
        let side4 = 0.25 + q / 8.0;
        let side5 = 0.25 - q / 8.0;
        pts.push(point(Branch::X4, [side4, 0.5 - q / 4.0, side4], phases, e, 2.0 * u));
        pts.push(point(Branch::X5, [side5, 0.5 + q / 4.0, side5], phases, e, 2.0 * u));
    }
    Ok(pts)
}
