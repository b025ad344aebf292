//! Matrices regarded as vectors under the Hilbert-Schmidt inner product
//! `<A, B> = Tr(A^dagger B)`.

use crate::eigen::psd_sqrt;
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::moments::expectation;
use crate::observable::{Observable, QuantumState};

/// A general (not necessarily Hermitian) matrix used as a Hilbert-Schmidt vector.
#[derive(Debug, Clone, PartialEq)]
pub struct HsVector(pub ComplexMatrix);

impl HsVector {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn zeros(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim))
    }
}

impl From<ComplexMatrix> for HsVector {
    fn from(m: ComplexMatrix) -> Self {
        Self(m)
    }
}

pub fn hs_norm(v: &HsVector) -> f64 {
    v.0.hs_norm()
}

pub fn hs_add(v: &HsVector, w: &HsVector) -> Result<HsVector> {
    Ok(HsVector(v.0.checked_add(&w.0)?))
}

/// Square root of the state's density matrix. For a pure state this is the
/// projector `|psi><psi|` itself.
pub fn state_sqrt(state: &QuantumState) -> Result<ComplexMatrix> {
    match state {
        QuantumState::Pure(psi) => Ok(ComplexMatrix::outer(psi, psi)),
        QuantumState::Mixed(rho) => psd_sqrt(rho),
    }
}

/// `(A - <A>) S` with `S = sqrt(rho)`; its Hilbert-Schmidt norm is the
/// standard deviation of `A`.
pub fn centered_vector(a: &Observable, state: &QuantumState, sqrt_rho: &ComplexMatrix) -> Result<HsVector> {
    let mean = expectation(a, state)?;
    let centered = a.matrix().shift_diagonal(-mean);
    Ok(HsVector(centered.checked_mul(sqrt_rho)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{pauli, Pauli};
    use crate::moments::stddev;

    #[test]
    fn norms_and_sums() {
        let i2 = HsVector(ComplexMatrix::identity(2));
        assert!((hs_norm(&i2) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(hs_norm(&HsVector::zeros(2)), 0.0);
        let twice = hs_add(&i2, &i2).unwrap();
        assert!((hs_norm(&twice) - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!(hs_add(&i2, &HsVector::zeros(3)).is_err());
    }

    #[test]
    fn centered_vector_norm_is_stddev_for_mixed_qubit() {
        let rho = ComplexMatrix::from_real_rows(&[&[0.7, 0.2], &[0.2, 0.3]]).unwrap();
        let state = QuantumState::density(rho).unwrap();
        let s = state_sqrt(&state).unwrap();
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let a = pauli(p);
            let v = centered_vector(&a, &state, &s).unwrap();
            assert!((hs_norm(&v) - stddev(&a, &state).unwrap()).abs() < 1e-12);
        }
    }
}
