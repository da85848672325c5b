//! Exact diagonalization of the triple-well Hamiltonian.

mod ground;
mod hamiltonian;
mod spectrum;

pub use ground::{
    fidelity, fock_ground_j0, ground_observables, ground_state, GroundObservables, GroundState,
};
pub use hamiltonian::{build_hamiltonian, double_well_matrix, double_well_spectrum, HamiltonianMatrix};
pub use spectrum::{degeneracy_clusters, full_spectrum, symmetric_eigenvalues, SpectrumResult};
