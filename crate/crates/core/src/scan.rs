//! Parameter sweeps comparing the quantum ground state with the
//! semiclassical minimum, and semiclassical occupation grids.
//!
//! Cells are evaluated in parallel; output order only depends on the grid.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::quantum::ground_observables;
use crate::semiclassical::min_energy_point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    U,
    J,
    Eps,
}

impl Axis {
    pub fn set(self, p: &ModelParams, value: f64) -> ModelParams {
        let mut q = *p;
        match self {
            Axis::U => q.u = value,
            Axis::J => q.j = value,
            Axis::Eps => q.eps = value,
        }
        q
    }
}

/// Evenly spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let h = (end - start) / (steps - 1) as f64;
            (0..steps).map(|k| if k == steps - 1 { end } else { start + k as f64 * h }).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub end: f64,
    pub steps: usize,
    /// Values of the other couplings and the boson number.
    pub fixed: ModelParams,
}

impl SweepSpec {
    fn check(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidParams(format!("need at least 2 steps, got {}", self.steps)));
        }
        if !self.start.is_finite() || !self.end.is_finite() {
            return Err(Error::InvalidParams("sweep range must be finite".into()));
        }
        self.fixed.validate()
    }

    pub fn points(&self) -> Vec<ModelParams> {
        linspace(self.start, self.end, self.steps)
            .into_iter()
            .map(|v| self.axis.set(&self.fixed, v))
            .collect()
    }
}

/// One sweep point. Energies are per particle; occupations are fractions.
/// When `error` is set the numeric fields are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub ratio: f64,
    pub params: ModelParams,
    pub classical_e: f64,
    pub quantum_e: f64,
    pub classical_occ: [f64; 3],
    pub quantum_occ: [f64; 3],
    pub gap1: f64,
    pub gap2: f64,
    /// Quantum gap numerically zero or several tied classical minima.
    pub degenerate: bool,
    /// Number of tied classical minima.
    pub classical_multiplicity: usize,
    pub error: Option<String>,
}

impl SweepRow {
    fn failed(ratio: f64, params: ModelParams, err: &Error) -> Self {
        Self {
            ratio,
            params,
            classical_e: f64::NAN,
            quantum_e: f64::NAN,
            classical_occ: [f64::NAN; 3],
            quantum_occ: [f64::NAN; 3],
            gap1: f64::NAN,
            gap2: f64::NAN,
            degenerate: false,
            classical_multiplicity: 0,
            error: Some(err.to_string()),
        }
    }

    pub fn energy_deviation(&self) -> f64 {
        (self.quantum_e - self.classical_e).abs()
    }

    pub fn occupation_deviation(&self) -> f64 {
        self.quantum_occ
            .iter()
            .zip(&self.classical_occ)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Quantum and semiclassical results at a single parameter point.
pub fn compare(ratio: f64, p: &ModelParams) -> SweepRow {
    let run = || -> Result<SweepRow> {
        let m = min_energy_point(p)?;
        let g = ground_observables(p)?;
        Ok(SweepRow {
            ratio,
            params: *p,
            classical_e: m.point.energy,
            quantum_e: g.e0_per_particle,
            classical_occ: m.point.occ,
            quantum_occ: g.occ_fractions(p.n),
            gap1: g.gap1,
            gap2: g.gap2,
            degenerate: g.degenerate || m.multiplicity() > 1,
            classical_multiplicity: m.multiplicity(),
            error: None,
        })
    };
    run().unwrap_or_else(|e| SweepRow::failed(ratio, *p, &e))
}

/// Rows in ascending grid order. Individual failures are recorded in the
/// row; only an invalid sweep is an error.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.check()?;
    let values = linspace(spec.start, spec.end, spec.steps);
    Ok(values
        .par_iter()
        .map(|&v| compare(v, &spec.axis.set(&spec.fixed, v)))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    N1,
    N2,
    N3,
}

impl Quantity {
    fn index(self) -> usize {
        match self {
            Quantity::N1 => 0,
            Quantity::N2 => 1,
            Quantity::N3 => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub u_range: (f64, f64),
    pub eps_range: (f64, f64),
    /// Number of `U` and `eps` values.
    pub steps: (usize, usize),
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { u_range: (-3.0, 3.0), eps_range: (0.0, 1.0), steps: (300, 300) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub u_over_j: f64,
    pub eps_over_j: f64,
    pub quantity: Quantity,
    /// Occupation fraction, NaN on failure.
    pub value: f64,
    pub error: Option<String>,
}

/// Semiclassical minimum-energy occupations at `J = 1`. Row-major with `eps`
/// as the slow index.
pub fn grid2d(spec: &GridSpec, quantity: Quantity) -> Result<Vec<GridCell>> {
    let (nu, ne) = spec.steps;
    if nu < 2 || ne < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 steps per axis, got {nu}x{ne}")));
    }
    let finite = [spec.u_range.0, spec.u_range.1, spec.eps_range.0, spec.eps_range.1];
    if finite.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParams("grid ranges must be finite".into()));
    }
    let us = linspace(spec.u_range.0, spec.u_range.1, nu);
    let es = linspace(spec.eps_range.0, spec.eps_range.1, ne);
    let k = quantity.index();
    Ok((0..nu * ne)
        .into_par_iter()
        .map(|idx| {
            let (u, eps) = (us[idx % nu], es[idx / nu]);
            let p = ModelParams { u, j: 1.0, eps, n: 1 };
            let (value, error) = match min_energy_point(&p) {
                Ok(m) => (m.point.occ[k], None),
                Err(e) => (f64::NAN, Some(e.to_string())),
            };
            GridCell { u_over_j: u, eps_over_j: eps, quantity, value, error }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deviation {
    /// `|E0/N - E_cl/N|`
    Energy,
    /// Largest `|<N_k>/N - N_k^cl/N|`.
    Occupations,
}

/// Smallest `N <= n_max` for which every member of `family` agrees within
/// `tol`. The `n` field of the family members is ignored.
pub fn min_bosons_for_agreement(
    family: &[ModelParams],
    quantity: Deviation,
    tol: f64,
    n_max: u64,
) -> Result<u64> {
    if !(tol > 0.0) || n_max == 0 || family.is_empty() {
        return Err(Error::InvalidParams("need tol > 0, n_max >= 1, nonempty family".into()));
    }
    for n in 1..=n_max {
        let rows: Vec<SweepRow> = family.par_iter().map(|p| compare(p.u, &p.with_n(n))).collect();
        if let Some(e) = rows.iter().find_map(|r| r.error.clone()) {
            return Err(Error::InvalidParams(e));
        }
        let worst = rows
            .iter()
            .map(|r| match quantity {
                Deviation::Energy => r.energy_deviation(),
                Deviation::Occupations => r.occupation_deviation(),
            })
            .fold(0.0, f64::max);
        if worst < tol {
            return Ok(n);
        }
    }
    Err(Error::NotFound(n_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let v = linspace(-3.0, 3.0, 7);
        assert_eq!(v, vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        assert_eq!(linspace(0.1, 0.7, 2), vec![0.1, 0.7]);
    }

    #[test]
    fn single_particle_without_interaction() {
        let spec = SweepSpec {
            axis: Axis::J,
            start: -3.0,
            end: 3.0,
            steps: 25,
            fixed: ModelParams { u: 0.0, j: 0.0, eps: 1.0, n: 1 },
        };
        let rows = sweep(&spec).unwrap();
        assert_eq!(rows.len(), 25);
        for r in &rows {
            assert!(r.error.is_none());
            assert!(r.energy_deviation() < 1e-10, "{r:?}");
        }
        assert!(rows.windows(2).all(|w| w[0].ratio < w[1].ratio));
    }

    #[test]
    fn invalid_specs() {
        let fixed = ModelParams { u: 0.0, j: 1.0, eps: 0.0, n: 2 };
        let spec = SweepSpec { axis: Axis::U, start: 0.0, end: 1.0, steps: 1, fixed };
        assert!(sweep(&spec).is_err());
        let g = GridSpec { steps: (1, 4), ..Default::default() };
        assert!(grid2d(&g, Quantity::N1).is_err());
        assert!(min_bosons_for_agreement(&[fixed], Deviation::Energy, 0.0, 4).is_err());
    }

    #[test]
    fn failed_cell_is_kept() {
        // All couplings zero has no semiclassical minimum.
        let fixed = ModelParams { u: 0.0, j: 0.0, eps: 0.0, n: 2 };
        let spec = SweepSpec { axis: Axis::U, start: 0.0, end: 1.0, steps: 3, fixed };
        let rows = sweep(&spec).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].error.is_some() && rows[0].quantum_e.is_nan());
        assert!(rows[1].error.is_none());
    }

    #[test]
    fn grid_layout() {
        let g = GridSpec { u_range: (-1.0, 1.0), eps_range: (0.1, 0.3), steps: (3, 2) };
        let cells = grid2d(&g, Quantity::N2).unwrap();
        let coords: Vec<_> = cells.iter().map(|c| (c.u_over_j, c.eps_over_j)).collect();
        assert_eq!(
            coords,
            vec![(-1.0, 0.1), (0.0, 0.1), (1.0, 0.1), (-1.0, 0.3), (0.0, 0.3), (1.0, 0.3)]
        );
        assert!(cells.iter().all(|c| (0.0..=1.0).contains(&c.value)));
    }

    #[test]
    fn noninteracting_agreement_from_one_boson() {
        let family: Vec<_> = linspace(-3.0, 3.0, 13)
            .into_iter()
            .map(|j| ModelParams { u: 0.0, j, eps: 1.0, n: 1 })
            .collect();
        assert_eq!(min_bosons_for_agreement(&family, Deviation::Energy, 1e-8, 3).unwrap(), 1);
        assert_eq!(min_bosons_for_agreement(&family, Deviation::Occupations, 1e-8, 3).unwrap(), 1);
    }
}
