//! Validated observables and quantum states.
//!
//! Validation never repairs its input: a matrix that is almost Hermitian or a
//! vector that is almost normalized is rejected rather than symmetrized or
//! rescaled.

use num_complex::Complex64;

use crate::eigen::eigh;
use crate::error::{Error, Result};
use crate::matrix::{vector_norm, ComplexMatrix};

/// Relative Hermiticity tolerance for observables.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Tolerance on state normalization, density trace and negativity.
pub const STATE_TOL: f64 = 1e-10;

/// A Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable(ComplexMatrix);

impl Observable {
    /// Accepts `matrix` unchanged if `max |M - M^dagger| <= 1e-10 * max(1, max |M|)`.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOL * matrix.max_abs().max(1.0) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self(matrix))
    }

    #[cfg(test)]
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self(matrix)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    // Sums, differences and real multiples of Hermitian matrices stay
    // Hermitian, so these skip revalidation.

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.checked_add(&other.0)?))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.checked_sub(&other.0)?))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.scale_real(factor))
    }

    /// `A + shift * I`.
    pub fn shifted(&self, shift: f64) -> Self {
        Self(self.0.shift_diagonal(shift))
    }

    /// Sum of a non-empty list of observables.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Observable>) -> Result<Self> {
        let mut iter = items.into_iter();
        let first = iter
            .next()
            .ok_or(Error::NTooSmall { min: 1, got: 0 })?
            .clone();
        iter.try_fold(first, |acc, o| acc.try_add(o))
    }
}

/// Validates a Hermitian matrix as an observable.
pub fn validate_observable(matrix: ComplexMatrix) -> Result<Observable> {
    Observable::new(matrix)
}

/// A pure state vector or a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(Vec<Complex64>),
    Mixed(ComplexMatrix),
}

/// Unvalidated state input.
#[derive(Debug, Clone, PartialEq)]
pub enum RawState {
    Vector(Vec<Complex64>),
    Density(ComplexMatrix),
}

impl QuantumState {
    /// Pure state from a unit vector.
    pub fn pure(vector: Vec<Complex64>) -> Result<Self> {
        if vector.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if vector.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            let k = vector.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()).unwrap();
            return Err(Error::NonFinite { row: k, col: 0 });
        }
        let norm = vector_norm(&vector);
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self::Pure(vector))
    }

    /// Mixed state from a density matrix: Hermitian, unit trace, no
    /// eigenvalue below `-1e-10`.
    pub fn density(rho: ComplexMatrix) -> Result<Self> {
        let deviation = rho.hermitian_deviation();
        if deviation > STATE_TOL {
            return Err(Error::DensityNotHermitian { deviation });
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let lowest = eigh(&rho).values[0];
        if lowest < -STATE_TOL {
            return Err(Error::NegativeEigenvalue { eigenvalue: lowest });
        }
        Ok(Self::Mixed(rho))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Pure(v) => v.len(),
            Self::Mixed(rho) => rho.dim(),
        }
    }

    pub fn is_pure_kind(&self) -> bool {
        matches!(self, Self::Pure(_))
    }

    /// Density matrix of the state (`|psi><psi|` for pure states).
    pub fn density_matrix(&self) -> ComplexMatrix {
        match self {
            Self::Pure(v) => ComplexMatrix::outer(v, v),
            Self::Mixed(rho) => rho.clone(),
        }
    }

    /// Purity `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        match self {
            Self::Pure(v) => vector_norm(v).powi(4),
            Self::Mixed(rho) => rho.hs_norm().powi(2),
        }
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { left: dim, right: self.dim() });
        }
        Ok(())
    }
}

/// Validates raw input as a state without renormalizing or reprojecting.
pub fn validate_state(raw: RawState) -> Result<QuantumState> {
    match raw {
        RawState::Vector(v) => QuantumState::pure(v),
        RawState::Density(rho) => QuantumState::density(rho),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepts_pauli_x() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let obs = validate_observable(x.clone()).unwrap();
        assert_eq!(obs.matrix(), &x);
    }

    #[test]
    fn rejects_nilpotent() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(validate_observable(m), Err(Error::NotHermitian { deviation: 1.0 }));
    }

    #[test]
    fn accepts_spin1_jy() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = c(0.0, 0.0);
        let jy = ComplexMatrix::from_rows(&[
            vec![z, c(0.0, -h), z],
            vec![c(0.0, h), z, c(0.0, -h)],
            vec![z, c(0.0, h), z],
        ])
        .unwrap();
        assert!(validate_observable(jy).is_ok());
    }

    #[test]
    fn hermiticity_tolerance_is_relative() {
        // deviation 1e-9 on a matrix of scale 100 is within 1e-10 * 100.
        let m = ComplexMatrix::from_rows(&[
            vec![c(100.0, 0.0), c(1.0, 1e-9)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(validate_observable(m.clone()).is_ok());
        let small = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.1, 1e-9)],
            vec![c(0.1, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(validate_observable(small).is_err());
    }

    #[test]
    fn state_validation() {
        let s = validate_state(RawState::Vector(vec![c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        assert!(s.is_pure_kind());
        assert_eq!(s.dim(), 2);

        let mixed = validate_state(RawState::Density(ComplexMatrix::identity(2).scale_real(0.5))).unwrap();
        assert!(!mixed.is_pure_kind());
        assert!((mixed.purity() - 0.5).abs() < 1e-15);

        let err = validate_state(RawState::Vector(vec![c(1.0, 0.0), c(1.0, 0.0)])).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { norm } if (norm - 2f64.sqrt()).abs() < 1e-15));
    }

    #[test]
    fn density_failures_are_distinguished() {
        let trace2 = ComplexMatrix::identity(2);
        assert!(matches!(QuantumState::density(trace2), Err(Error::TraceNotOne { .. })));

        let non_herm = ComplexMatrix::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(QuantumState::density(non_herm), Err(Error::DensityNotHermitian { .. })));

        let negative = ComplexMatrix::diagonal(&[1.2, -0.2]);
        assert!(matches!(QuantumState::density(negative), Err(Error::NegativeEigenvalue { .. })));
    }
}
