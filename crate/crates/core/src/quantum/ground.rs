use super::hamiltonian::fock_energy;
use super::{build_hamiltonian, full_spectrum, SpectrumResult};
use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, Basis, FockState};
use crate::params::ModelParams;

/// Relative gap below which the ground state counts as degenerate.
const DEGENERACY_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct GroundObservables {
    /// E0 / N
    pub e0_per_particle: f64,
    /// E1 - E0
    pub gap1: f64,
    /// E2 - E0
    pub gap2: f64,
    /// <N1>, <N2>, <N3> in the ground state (absolute, not per particle).
    pub occ: [f64; 3],
    /// Set when `gap1` is numerically zero. `occ` then depends on which
    /// vector of the degenerate subspace the eigensolver returned.
    pub degenerate: bool,
}

impl GroundObservables {
    pub fn occ_fractions(&self, n: u64) -> [f64; 3] {
        self.occ.map(|x| x / n as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub energy: f64,
    pub vector: Vec<f64>,
}

fn spectrum_of(p: &ModelParams) -> Result<(Basis, SpectrumResult)> {
    p.validate()?;
    let basis = enumerate_basis(p.n);
    let h = build_hamiltonian(p, &basis)?;
    let spectrum = full_spectrum(&h)?;
    Ok((basis, spectrum))
}

/// `<N_k>` for every well in the state `v` over `basis`.
pub(crate) fn mean_occupations(basis: &Basis, v: &[f64]) -> [f64; 3] {
    let mut occ = [0.0; 3];
    for (s, c) in basis.states().iter().zip(v) {
        let w = c * c;
        for (o, nk) in occ.iter_mut().zip(s.occupations()) {
            *o += nk as f64 * w;
        }
    }
    occ
}

pub(crate) fn observables_from(
    p: &ModelParams,
    basis: &Basis,
    spectrum: &SpectrumResult,
) -> GroundObservables {
    let e = spectrum.eigenvalues();
    let gap1 = e[1] - e[0];
    let gap2 = e[2] - e[0];
    let n = p.n as f64;
    let threshold = DEGENERACY_REL_TOL * e[0].abs().max(n * p.coupling_scale());
    GroundObservables {
        e0_per_particle: e[0] / n,
        gap1,
        gap2,
        occ: mean_occupations(basis, spectrum.eigenvector(0)),
        degenerate: gap1 < threshold,
    }
}

pub fn ground_observables(p: &ModelParams) -> Result<GroundObservables> {
    let (basis, spectrum) = spectrum_of(p)?;
    Ok(observables_from(p, &basis, &spectrum))
}

/// Lowest eigenpair, with the basis ordering of [`enumerate_basis`].
pub fn ground_state(p: &ModelParams) -> Result<GroundState> {
    let (_, spectrum) = spectrum_of(p)?;
    Ok(GroundState { energy: spectrum.ground_energy(), vector: spectrum.eigenvector(0).to_vec() })
}

/// Overlap magnitude `|<a|b>|` of two normalized real states.
pub fn fidelity(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    for v in [a, b] {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::NotNormalized(norm));
        }
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    Ok(dot.abs().min(1.0))
}

/// Ground state of the tunneling-free model by exhaustive search over the
/// Fock basis. Ties go to the lowest basis index.
pub fn fock_ground_j0(p: &ModelParams) -> Result<(FockState, f64)> {
    p.validate()?;
    if p.j != 0.0 {
        return Err(Error::InvalidParams(format!("J must vanish, got {}", p.j)));
    }
    let basis = enumerate_basis(p.n);
    let mut best = (basis.state(0), fock_energy(p, &basis.state(0)));
    for s in &basis.states()[1..] {
        let e = fock_energy(p, s);
        if e < best.1 {
            best = (*s, e);
        }
    }
    Ok((best.0, best.1 / p.n as f64))
}
