//! Degree-7 polynomial in `y = r2^2` whose roots in `(0, 1)` locate the
//! stationary points when `U`, `J` and `eps` are all nonzero.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{evd_real, evd_scratch, ComputeEigenvectors};
use faer::diag::Diag;
use faer::{Mat, Par};

/// `c[m]` multiplies `y^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialCoeffs {
    pub c: [f64; 8],
}

pub fn polynomial_coefficients(u: f64, j: f64, eps: f64) -> PolynomialCoeffs {
    let (u2, j2, e2) = (u * u, j * j, eps * eps);
    let (u4, j4, e4) = (u2 * u2, j2 * j2, e2 * e2);
    let (j6, e6) = (j4 * j2, e4 * e2);
    PolynomialCoeffs {
        c: [
            -e2 * j4,
            4.0 * e4 * j2 + 5.0 * e2 * j4 + j6 + 64.0 * e2 * j2 * u2,
            -4.0 * e6 - 12.0 * e4 * j2 - 12.0 * e2 * j4 - 4.0 * j6 + 128.0 * e4 * u2
                - 576.0 * e2 * j2 * u2
                - 16.0 * j4 * u2
                - 1024.0 * e2 * u4,
            4.0 * e6 + 12.0 * e4 * j2 + 12.0 * e2 * j4 + 4.0 * j6 - 640.0 * e4 * u2
                + 1856.0 * e2 * j2 * u2
                + 80.0 * j4 * u2
                + 9216.0 * e2 * u4,
            1024.0 * e4 * u2 - 2560.0 * e2 * j2 * u2 - 128.0 * j4 * u2 - 32768.0 * e2 * u4,
            -512.0 * e4 * u2 + 1280.0 * e2 * j2 * u2 + 64.0 * j4 * u2 + 57344.0 * e2 * u4,
            -49152.0 * e2 * u4,
            16384.0 * e2 * u4,
        ],
    }
}

impl PolynomialCoeffs {
    /// Index of the highest nonzero coefficient, ignoring ones below
    /// `1e-14` of the largest.
    pub fn degree(&self) -> usize {
        let big = self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        (0..8).rev().find(|&m| self.c[m].abs() > 1e-14 * big).unwrap_or(0)
    }

    /// Value and derivative at `y` (Horner).
    pub fn eval_with_derivative(&self, y: f64) -> (f64, f64) {
        let mut v = 0.0;
        let mut d = 0.0;
        for c in self.c.iter().rev() {
            d = d * y + v;
            v = v * y + c;
        }
        (v, d)
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.eval_with_derivative(y).0
    }

    /// All complex roots as `(re, im)` pairs, from the eigenvalues of the
    /// companion matrix of the monic polynomial.
    pub fn roots(&self) -> Vec<(f64, f64)> {
        let deg = self.degree();
        if deg == 0 {
            return Vec::new();
        }
        let lead = self.c[deg];
        // Frobenius companion: ones on the subdiagonal, -a_i in the last column.
        let companion = Mat::<f64>::from_fn(deg, deg, |i, k| {
            if k == deg - 1 {
                -self.c[i] / lead
            } else if i == k + 1 {
                1.0
            } else {
                0.0
            }
        });
        let mut re = Diag::<f64>::zeros(deg);
        let mut im = Diag::<f64>::zeros(deg);
        let mut mem = MemBuffer::new(evd_scratch::<f64>(
            deg,
            ComputeEigenvectors::No,
            ComputeEigenvectors::No,
            Par::Seq,
            Default::default(),
        ));
        let ok = evd_real(
            companion.as_ref(),
            re.as_mut(),
            im.as_mut(),
            None,
            None,
            Par::Seq,
            MemStack::new(&mut mem),
            Default::default(),
        );
        if ok.is_err() {
            return Vec::new();
        }
        re.column_vector().iter().zip(im.column_vector().iter()).map(|(a, b)| (*a, *b)).collect()
    }

    /// Newton refinement of an approximate real root. Never returns a point
    /// with a larger residual than the start.
    pub fn polish(&self, mut y: f64) -> f64 {
        let mut best = (self.eval(y).abs(), y);
        for _ in 0..50 {
            let (v, d) = self.eval_with_derivative(y);
            if v == 0.0 || d == 0.0 {
                break;
            }
            let step = v / d;
            y -= step;
            let r = self.eval(y).abs();
            if r < best.0 {
                best = (r, y);
            }
            if step.abs() <= 1e-16 * y.abs().max(1.0) {
                break;
            }
        }
        best.1
    }

    /// Distinct real roots, ascending. A companion eigenvalue counts as real
    /// when its imaginary part is below `1e-7` relative to its modulus.
    pub fn real_roots(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .roots()
            .into_iter()
            .filter(|(re, im)| im.abs() <= 1e-7 * re.hypot(*im).max(1.0))
            .map(|(re, _)| self.polish(re))
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
        out
    }
}
