//! Cyclic Jacobi eigendecomposition of complex Hermitian matrices and the
//! positive semidefinite square root built on it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Relative off-diagonal threshold for convergence.
pub const JACOBI_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues in `[-PSD_TOL, 0)` are treated as zero.
pub const PSD_TOL: f64 = 1e-10;

/// Eigenvalues (ascending) and the unitary whose columns are the matching
/// eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.values.len()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `V f(D) V^dagger`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = fv
                    .iter()
                    .enumerate()
                    .map(|(k, &f)| self.vectors[(i, k)] * f * self.vectors[(j, k)].conj())
                    .sum();
            }
        }
        out
    }
}

/// Diagonalizes a Hermitian matrix with cyclic Jacobi sweeps.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary and then applies the classical real Jacobi rotation, so the pair
/// acts as a single unitary `J` with `A <- J^dagger A J`. Iteration stops once
/// the off-diagonal Frobenius norm falls to `JACOBI_TOL * ||A||_F` or after
/// `JACOBI_MAX_SWEEPS` sweeps. Only the Hermitian part of the input is seen.
pub fn eigh(m: &ComplexMatrix) -> HermitianEigen {
    let n = m.dim();
    let mut a = m.clone();
    // Work on the exactly Hermitian part.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * a.hs_norm();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if a.off_diagonal_norm() <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)];
        }
    }
    HermitianEigen { values, vectors }
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Phase that makes the pivot real and positive: e^{-i phi} a_pq = |a_pq|.
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.dim();

    // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane:
    // J_pp = c, J_pq = s, J_qp = -s conj(phase), J_qq = c conj(phase).
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
    }
    // A <- J^dagger A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }
}

/// Hermitian positive semidefinite square root `S` with `S^2 = rho`.
///
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero; anything more negative
/// is rejected.
pub fn psd_sqrt(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eigh(rho);
    if let Some(&lowest) = eig.values.first() {
        if lowest < -PSD_TOL {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
    }
    Ok(eig.reconstruct_with(|l| l.max(0.0).sqrt()))
}
