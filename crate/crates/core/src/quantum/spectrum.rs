use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self_adjoint_evd, self_adjoint_evd_scratch, ComputeEigenvectors};
use faer::diag::Diag;
use faer::{Mat, Par};

use super::HamiltonianMatrix;
use crate::error::{Error, Result};

/// All eigenpairs of a symmetric matrix, eigenvalues ascending.
///
/// Each eigenvector has its first non-negligible component positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    dim: usize,
    eigenvalues: Vec<f64>,
    // column-major: eigenvector k occupies [k*dim, (k+1)*dim)
    eigenvectors: Vec<f64>,
}

impl SpectrumResult {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.eigenvectors[k * self.dim..(k + 1) * self.dim]
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn clusters(&self, cluster_tol: f64) -> Vec<usize> {
        degeneracy_clusters(&self.eigenvalues, cluster_tol)
    }
}

fn to_faer(h: &HamiltonianMatrix) -> Mat<f64> {
    Mat::from_fn(h.dimension(), h.dimension(), |i, j| h.get(i, j))
}

// Sequential on purpose: results must not depend on the thread pool, and the
// scan module already parallelizes across parameter points.
fn evd(h: &HamiltonianMatrix, vectors: bool) -> Result<(Vec<f64>, Option<Mat<f64>>)> {
    let n = h.dimension();
    let a = to_faer(h);
    let mut s = Diag::<f64>::zeros(n);
    let mut u = vectors.then(|| Mat::<f64>::zeros(n, n));
    let compute = if vectors { ComputeEigenvectors::Yes } else { ComputeEigenvectors::No };
    let mut mem =
        MemBuffer::new(self_adjoint_evd_scratch::<f64>(n, compute, Par::Seq, Default::default()));
    self_adjoint_evd(
        a.as_ref(),
        s.as_mut(),
        u.as_mut().map(|u| u.as_mut()),
        Par::Seq,
        MemStack::new(&mut mem),
        Default::default(),
    )
    .map_err(|_| Error::NoConvergence)?;
    let values: Vec<f64> = s.column_vector().iter().copied().collect();
    if values.iter().any(|x| !x.is_finite()) {
        return Err(Error::NoConvergence);
    }
    Ok((values, u))
}

pub fn full_spectrum(h: &HamiltonianMatrix) -> Result<SpectrumResult> {
    let n = h.dimension();
    let (eigenvalues, u) = evd(h, true)?;
    let u = u.expect("eigenvectors requested");
    let mut eigenvectors = Vec::with_capacity(n * n);
    for k in 0..n {
        let col = u.col(k);
        let start = eigenvectors.len();
        eigenvectors.extend(col.iter().copied());
        let v = &mut eigenvectors[start..];
        let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * scale).copied() {
            if first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    Ok(SpectrumResult { dim: n, eigenvalues, eigenvectors })
}

/// Eigenvalues only, ascending.
pub fn symmetric_eigenvalues(h: &HamiltonianMatrix) -> Result<Vec<f64>> {
    evd(h, false).map(|(v, _)| v)
}

/// Sizes of the maximal runs of an ascending spectrum whose consecutive gaps
/// are below `cluster_tol`, in energy order.
pub fn degeneracy_clusters(eigenvalues: &[f64], cluster_tol: f64) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut run = 0usize;
    for (k, e) in eigenvalues.iter().enumerate() {
        if k > 0 && e - eigenvalues[k - 1] >= cluster_tol {
            sizes.push(run);
            run = 0;
        }
        run += 1;
    }
    if run > 0 {
        sizes.push(run);
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_basis;
    use crate::params::ModelParams;
    use crate::quantum::build_hamiltonian;

    fn spectrum(u: f64, j: f64, e: f64, n: u64) -> (HamiltonianMatrix, SpectrumResult) {
        let p = ModelParams::new(u, j, e, n).unwrap();
        let h = build_hamiltonian(&p, &enumerate_basis(n)).unwrap();
        let s = full_spectrum(&h).unwrap();
        (h, s)
    }

    #[test]
    fn single_particle_free() {
        // characteristic polynomial lambda (eps^2 + J^2 - lambda^2)
        let (_, s) = spectrum(0.0, 1.0, 1.0, 1);
        let r2 = 2f64.sqrt();
        for (got, want) in s.eigenvalues().iter().zip([-r2, 0.0, r2]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_when_no_tunneling() {
        let p = ModelParams::new(0.6, 0.0, 0.35, 5).unwrap();
        let b = enumerate_basis(5);
        let h = build_hamiltonian(&p, &b).unwrap();
        let s = full_spectrum(&h).unwrap();
        let mut diag: Vec<f64> = (0..b.dimension()).map(|i| h.get(i, i)).collect();
        diag.sort_by(f64::total_cmp);
        for (a, b) in s.eigenvalues().iter().zip(&diag) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn residuals_and_orthonormality() {
        let (h, s) = spectrum(-0.8, 1.0, 0.3, 12);
        let norm = h.frobenius_norm();
        let d = s.dimension();
        for k in 0..d {
            let v = s.eigenvector(k);
            let hv = h.mul_vec(v);
            let res: f64 = hv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - s.eigenvalues()[k] * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-10 * norm, "residual {res}");
            for l in 0..=k {
                let dot: f64 = v.iter().zip(s.eigenvector(l)).map(|(a, b)| a * b).sum();
                let want = if l == k { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-10);
            }
        }
        assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn phase_convention() {
        let (_, s) = spectrum(1.0, 1.0, 0.2, 6);
        for k in 0..s.dimension() {
            let v = s.eigenvector(k);
            let first = v.iter().find(|x| x.abs() > 1e-10).unwrap();
            assert!(*first > 0.0);
        }
    }

    #[test]
    fn interaction_sign_mirrors_spectrum() {
        let (_, a) = spectrum(2.0, 1.0, 0.0, 6);
        let (_, b) = spectrum(-2.0, 1.0, 0.0, 6);
        let mirrored: Vec<f64> = b.eigenvalues().iter().rev().map(|x| -x).collect();
        for (x, y) in a.eigenvalues().iter().zip(&mirrored) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn strong_coupling_clusters() {
        let (_, s) = spectrum(1e4, 1.0, 0.0, 6);
        let mut sizes = s.clusters(1.0);
        assert_eq!(sizes.iter().sum::<usize>(), 28);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 8, 8, 8]);
    }

    #[test]
    fn clusters_of_tilt_only_spectrum() {
        // J = U = 0: energies eps (n3 - n1) in {-2, -1, 0, 0, 1, 2}
        let (_, s) = spectrum(0.0, 0.0, 1.0, 2);
        assert_eq!(s.clusters(0.5), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn clusters_edge_cases() {
        assert_eq!(degeneracy_clusters(&[0.0, 1.0, 2.0], 0.5), vec![1, 1, 1]);
        assert_eq!(degeneracy_clusters(&[], 0.5), Vec::<usize>::new());
        assert_eq!(degeneracy_clusters(&[1.0, 1.0], 0.5), vec![2]);
    }
}
