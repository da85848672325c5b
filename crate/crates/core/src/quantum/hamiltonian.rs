use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::fock::{Basis, FockState};
use crate::params::ModelParams;

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl HamiltonianMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Writes `v` at `(i, j)` and `(j, i)`.
    pub fn set_symmetric(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).to_bits() == self.get(j, i).to_bits()))
    }

    /// Frobenius norm, an upper bound on the spectral norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Diagonal Fock energy `(U/N)(n1 - n2 + n3)^2 + eps (n3 - n1)`.
pub(crate) fn fock_energy(p: &ModelParams, s: &FockState) -> f64 {
    let imb = s.imbalance() as f64;
    p.u / p.n as f64 * imb * imb + p.eps * (s.n3 as f64 - s.n1 as f64)
}

pub fn build_hamiltonian(p: &ModelParams, basis: &Basis) -> Result<HamiltonianMatrix> {
    p.validate()?;
    if basis.n() != p.n {
        return Err(Error::BasisMismatch { basis: basis.n(), params: p.n });
    }
    let hop = p.j * FRAC_1_SQRT_2;
    let mut h = HamiltonianMatrix::zeros(basis.dimension());
    for (i, s) in basis.states().iter().enumerate() {
        h.data[i * h.dim + i] = fock_energy(p, s);
        // a1+ a2 : |n1, n2, n3> -> |n1+1, n2-1, n3>
        if s.n2 > 0 {
            let t = FockState::new(s.n1 + 1, s.n2 - 1, s.n3);
            let j = basis.index_of(&t)?;
            h.set_symmetric(i, j, hop * (((s.n1 + 1) * s.n2) as f64).sqrt());
        }
        // a2+ a3 : |n1, n2, n3> -> |n1, n2+1, n3-1>
        if s.n3 > 0 {
            let t = FockState::new(s.n1, s.n2 + 1, s.n3 - 1);
            let j = basis.index_of(&t)?;
            h.set_symmetric(i, j, hop * (((s.n2 + 1) * s.n3) as f64).sqrt());
        }
    }
    Ok(h)
}

/// Two-mode Hamiltonian `(U/N)(Nb - N2)^2 + J(b+ a2 + a2+ b)` on `|Nb, N - Nb>`,
/// indexed by descending `Nb`.
///
/// At `eps = 0` this is the block of the triple-well Hamiltonian with the
/// antisymmetric combination of wells 1 and 3 empty.
pub fn double_well_matrix(p: &ModelParams) -> Result<HamiltonianMatrix> {
    p.validate()?;
    if p.eps != 0.0 {
        return Err(Error::NonzeroTilt(p.eps));
    }
    let n = p.n;
    let mut h = HamiltonianMatrix::zeros(n as usize + 1);
    for i in 0..=n {
        let nb = n - i;
        let n2 = i;
        let d = nb as f64 - n2 as f64;
        h.data[i as usize * h.dim + i as usize] = p.u / n as f64 * d * d;
        // b+ a2 : |nb, n2> -> |nb+1, n2-1>, which sits at index i-1
        if n2 > 0 {
            let v = p.j * (((nb + 1) * n2) as f64).sqrt();
            h.set_symmetric(i as usize, i as usize - 1, v);
        }
    }
    Ok(h)
}

pub fn double_well_spectrum(p: &ModelParams) -> Result<Vec<f64>> {
    super::symmetric_eigenvalues(&double_well_matrix(p)?)
}
