//! Independent reference computations for the semiclassical energy surface.
//! Nothing here calls into the library's solvers.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug)]
pub struct Couplings {
    pub u: f64,
    pub j: f64,
    pub eps: f64,
}

impl Couplings {
    pub fn scale(&self) -> f64 {
        self.u.abs().max(self.j.abs()).max(self.eps.abs())
    }

    /// Energy per particle for signed amplitudes, normalized first.
    pub fn energy(&self, r: [f64; 3]) -> f64 {
        let n2: f64 = r.iter().map(|x| x * x).sum();
        let [a, b, c] = r.map(|x| x / n2.sqrt());
        let s = a * a - b * b + c * c;
        self.u * s * s + self.eps * (c * c - a * a) + std::f64::consts::SQRT_2 * self.j * b * (a + c)
    }

    fn energy_angles(&self, t: f64, p: f64) -> f64 {
        self.energy([t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
    }

    /// Lagrangian gradient with respect to `(r1, r2, r3, lambda)`, written
    /// out from `E - lambda (|r|^2 - 1)` without normalization.
    pub fn residual(&self, z: [f64; 4]) -> [f64; 4] {
        let [a, b, c, l] = z;
        let s = a * a - b * b + c * c;
        let k = std::f64::consts::SQRT_2 * self.j;
        [
            4.0 * self.u * s * a - 2.0 * self.eps * a + k * b - 2.0 * l * a,
            -4.0 * self.u * s * b + k * (a + c) - 2.0 * l * b,
            4.0 * self.u * s * c + 2.0 * self.eps * c + k * b - 2.0 * l * c,
            1.0 - a * a - b * b - c * c,
        ]
    }
}

fn nelder_mead(f: &dyn Fn([f64; 2]) -> f64, start: [f64; 2], step: f64) -> ([f64; 2], f64) {
    let mut s = [start, [start[0] + step, start[1]], [start[0], start[1] + step]];
    let mut v = s.map(f);
    for _ in 0..4000 {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        s = idx.map(|i| s[i]);
        v = idx.map(|i| v[i]);
        if (v[2] - v[0]).abs() < 1e-16 && (s[2][0] - s[0][0]).abs() + (s[2][1] - s[0][1]).abs() < 1e-12 {
            break;
        }
        let c = [(s[0][0] + s[1][0]) / 2.0, (s[0][1] + s[1][1]) / 2.0];
        let at = |t: f64| [c[0] + t * (s[2][0] - c[0]), c[1] + t * (s[2][1] - c[1])];
        let xr = at(-1.0);
        let fr = f(xr);
        if fr < v[0] {
            let xe = at(-2.0);
            let fe = f(xe);
            if fe < fr {
                s[2] = xe;
                v[2] = fe;
            } else {
                s[2] = xr;
                v[2] = fr;
            }
        } else if fr < v[1] {
            s[2] = xr;
            v[2] = fr;
        } else {
            let xc = if fr < v[2] { at(-0.5) } else { at(0.5) };
            let fc = f(xc);
            if fc < v[2].min(fr) {
                s[2] = xc;
                v[2] = fc;
            } else {
                for k in 1..3 {
                    s[k] = [(s[0][0] + s[k][0]) / 2.0, (s[0][1] + s[k][1]) / 2.0];
                    v[k] = f(s[k]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&a, &b| v[a].total_cmp(&v[b])).unwrap();
    (s[best], v[best])
}

/// Global minimum of the energy on the sphere by Nelder-Mead from a grid of
/// starting angles, each run restarted once from its own optimum.
pub fn oracle_minimum(c: &Couplings) -> f64 {
    let f = |x: [f64; 2]| c.energy_angles(x[0], x[1]);
    let mut best = f64::INFINITY;
    for i in 0..6 {
        for k in 0..8 {
            let start = [(i as f64 + 0.5) * std::f64::consts::PI / 6.0, k as f64 * std::f64::consts::PI / 4.0];
            let (x, _) = nelder_mead(&f, start, 0.3);
            let (_, v) = nelder_mead(&f, x, 1e-3);
            best = best.min(v);
        }
    }
    best
}

fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let m = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= m * a[col][k];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Newton iteration with a central-difference Jacobian. Returns the point
/// when the residual falls below `1e-12 * max(1, scale)`.
pub fn newton(c: &Couplings, mut z: [f64; 4]) -> Option<[f64; 4]> {
    let tol = 1e-12 * c.scale().max(1.0);
    for _ in 0..80 {
        let f = c.residual(z);
        if norm(&f) < tol {
            return Some(z);
        }
        let mut jac = [[0.0; 4]; 4];
        for k in 0..4 {
            let h = 1e-6 * z[k].abs().max(1.0);
            let (mut zp, mut zm) = (z, z);
            zp[k] += h;
            zm[k] -= h;
            let (fp, fm) = (c.residual(zp), c.residual(zm));
            for i in 0..4 {
                jac[i][k] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let dz = solve4(jac, f.map(|x| -x))?;
        for k in 0..4 {
            z[k] += dz[k];
        }
        if norm(&z) > 1e6 {
            return None;
        }
    }
    (norm(&c.residual(z)) < tol).then_some(z)
}

/// Occupations of every stationary point reached from `starts` random
/// initial amplitudes, with duplicates closer than `1e-9` merged.
pub fn newton_point_set(c: &Couplings, rng: &mut ChaCha8Rng, starts: usize) -> Vec<[f64; 3]> {
    let mut found: Vec<[f64; 3]> = Vec::new();
    for _ in 0..starts {
        let mut r: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let n = norm(&r);
        if n < 1e-3 {
            continue;
        }
        r = r.map(|x| x / n);
        // Multiplier that best fits the first three equations at r.
        let f0 = c.residual([r[0], r[1], r[2], 0.0]);
        let lambda = (f0[0] * r[0] + f0[1] * r[1] + f0[2] * r[2]) / 2.0;
        if let Some(z) = newton(c, [r[0], r[1], r[2], lambda]) {
            let occ = [z[0] * z[0], z[1] * z[1], z[2] * z[2]];
            if !found.iter().any(|q| dist(q, &occ) < 1e-9) {
                found.push(occ);
            }
        }
    }
    found
}

pub fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance (max norm) between two point sets.
pub fn hausdorff(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    let one_way = |x: &[[f64; 3]], y: &[[f64; 3]]| {
        x.iter()
            .map(|p| y.iter().map(|q| dist(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
