//! Cyclic Jacobi eigenvalue iteration for small dense Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm at which iteration stops.
pub const JACOBI_TOL: f64 = 1e-12;
/// Sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| (self.get(r, c) - self.get(c, r).conj()).norm() <= tol))
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    s += self.get(r, c).norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// Principal submatrix on the given rows/columns.
    pub fn restrict(&self, keep: &[usize]) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(keep.len());
        for (i, &r) in keep.iter().enumerate() {
            for (j, &c) in keep.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    if m.data.iter().all(|z| z.im == 0.0) {
        let a: Vec<f64> = m.data.iter().map(|z| z.re).collect();
        return real_symmetric_eigenvalues(a, m.dim);
    }
    let n = m.dim;
    let mut a = m.clone();
    for sweep in 0..=MAX_SWEEPS {
        if a.off_diagonal_norm() <= JACOBI_TOL {
            let mut ev: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
            ev.sort_by(f64::total_cmp);
            return Ok(ev);
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // A' = J† A J with J = diag(1, ū)·[[c, s], [−s, c]] on the (p, q) block
                let u = apq / mag;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let ubar = u.conj();
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * c - akq * ubar * s);
                    a.set(k, q, akp * s + akq * ubar * c);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, apk * c - aqk * u * s);
                    a.set(q, k, apk * s + aqk * u * c);
                }
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                let dp = a.get(p, p).re;
                let dq = a.get(q, q).re;
                a.set(p, p, Complex64::new(dp, 0.0));
                a.set(q, q, Complex64::new(dq, 0.0));
            }
        }
    }
    Err(Error::EigenNoConvergence(MAX_SWEEPS))
}

fn real_symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a[r * n + c] * a[r * n + c];
                }
            }
        }
        s.sqrt()
    };
    for sweep in 0..=MAX_SWEEPS {
        if off(&a) <= JACOBI_TOL {
            let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            ev.sort_by(f64::total_cmp);
            return Ok(ev);
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    Err(Error::EigenNoConvergence(MAX_SWEEPS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
        let n = a.dim;
        let mut out = DenseMatrix::zeros(n);
        for r in 0..n {
            for col in 0..n {
                let v = (0..n).map(|k| a.get(r, k) * b.get(k, col)).sum();
                out.set(r, col, v);
            }
        }
        out
    }

    #[test]
    fn pauli_y_has_plus_minus_one() {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, c(0.0, -1.0));
        m.set(1, 0, c(0.0, 1.0));
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_by_two_closed_form() {
        let (a, d, b) = (0.3, 0.7, c(0.1, -0.25));
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 0, c(a, 0.0));
        m.set(1, 1, c(d, 0.0));
        m.set(0, 1, b);
        m.set(1, 0, b.conj());
        let ev = hermitian_eigenvalues(&m).unwrap();
        let mid = (a + d) / 2.0;
        let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        assert!((ev[0] - (mid - rad)).abs() < 1e-14);
        assert!((ev[1] - (mid + rad)).abs() < 1e-14);
    }

    fn hermitian(n: usize) -> impl Strategy<Value = DenseMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            let mut m = DenseMatrix::zeros(n);
            for r in 0..n {
                for col in r..n {
                    let (re, im) = v[r * n + col];
                    if r == col {
                        m.set(r, r, c(re, 0.0));
                    } else {
                        m.set(r, col, c(re, im));
                        m.set(col, r, c(re, -im));
                    }
                }
            }
            m
        })
    }

    proptest! {
        // power sums tr(A^k) = Σ λ^k pin the spectrum
        #[test]
        fn spectrum_matches_power_traces(m in hermitian(5)) {
            let ev = hermitian_eigenvalues(&m).unwrap();
            let mut p = m.clone();
            for k in 1..=5 {
                let tr = p.trace().re;
                let s: f64 = ev.iter().map(|l| l.powi(k)).sum();
                prop_assert!((tr - s).abs() < 1e-9 * (1.0 + tr.abs()), "k={} {} vs {}", k, tr, s);
                p = matmul(&p, &m);
            }
        }

        #[test]
        fn real_path_agrees_with_complex_path(m in hermitian(4)) {
            let mut real = m.clone();
            for z in real.data.iter_mut() { z.im = 0.0; }
            let mut nudged = real.clone();
            // a tiny symmetric imaginary part forces the complex code path
            nudged.set(0, 1, nudged.get(0, 1) + c(0.0, 1e-300));
            nudged.set(1, 0, nudged.get(1, 0) - c(0.0, 1e-300));
            let a = hermitian_eigenvalues(&real).unwrap();
            let b = hermitian_eigenvalues(&nudged).unwrap();
            for (x, y) in a.iter().zip(&b) { prop_assert!((x - y).abs() < 1e-12); }
        }
    }
}
