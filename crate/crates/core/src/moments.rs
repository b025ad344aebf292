//! Expectation values, variances and commutator expectations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{vector_inner, ComplexMatrix};
use crate::observable::{Observable, QuantumState};

/// Limit on the imaginary residue of an expectation, relative to `max(1, max |A|)`.
pub const IMAG_TOL: f64 = 1e-10;
/// Variances in `[-VARIANCE_TOL, 0)` are clamped to zero.
pub const VARIANCE_TOL: f64 = 1e-10;

/// `<psi|M|psi>` or `Tr(rho M)` for an arbitrary square matrix.
pub fn raw_expectation(m: &ComplexMatrix, state: &QuantumState) -> Result<Complex64> {
    state.check_dim(m.dim())?;
    match state {
        QuantumState::Pure(psi) => Ok(vector_inner(psi, &m.apply(psi)?)),
        QuantumState::Mixed(rho) => Ok(trace_of_product(rho, m)),
    }
}

fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let n = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Expectation value of an observable; the imaginary residue is checked and
/// then discarded.
pub fn expectation(a: &Observable, state: &QuantumState) -> Result<f64> {
    let z = raw_expectation(a.matrix(), state)?;
    if z.im.abs() > IMAG_TOL * a.matrix().max_abs().max(1.0) {
        return Err(Error::ComplexExpectation { imag: z.im });
    }
    Ok(z.re)
}

/// Variance `<A^2> - <A>^2` before clamping.
///
/// Evaluated in centered form, `||(A - <A>)psi||^2` for pure states and
/// `Tr(rho (A - <A>)^2)` for mixed ones, which avoids the cancellation of the
/// raw difference when the state is close to an eigenstate.
pub fn raw_variance(a: &Observable, state: &QuantumState) -> Result<f64> {
    let mean = expectation(a, state)?;
    let centered = a.matrix().shift_diagonal(-mean);
    match state {
        QuantumState::Pure(psi) => {
            let w = centered.apply(psi)?;
            Ok(w.iter().map(|z| z.norm_sqr()).sum())
        }
        QuantumState::Mixed(rho) => {
            let sq = centered.checked_mul(&centered)?;
            Ok(trace_of_product(rho, &sq).re)
        }
    }
}

/// Variance with values in `[-1e-10, 0)` clamped to zero.
pub fn variance(a: &Observable, state: &QuantumState) -> Result<f64> {
    let v = raw_variance(a, state)?;
    if v < -VARIANCE_TOL {
        return Err(Error::NegativeVariance { value: v });
    }
    Ok(v.max(0.0))
}

/// Standard deviation, the square root of the clamped variance.
pub fn stddev(a: &Observable, state: &QuantumState) -> Result<f64> {
    variance(a, state).map(f64::sqrt)
}

/// `|<[A, B]>|`, the modulus of the (generally imaginary) commutator
/// expectation.
pub fn commutator_expectation(a: &Observable, b: &Observable, state: &QuantumState) -> Result<f64> {
    let comm = a.matrix().commutator(b.matrix())?;
    Ok(raw_expectation(&comm, state)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{pauli, qutrit_family, spin1_ops, Pauli};
    use crate::observable::RawState;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket0() -> QuantumState {
        QuantumState::pure(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap()
    }

    fn ket_plus() -> QuantumState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        QuantumState::pure(vec![c(h, 0.0), c(h, 0.0)]).unwrap()
    }

    fn maximally_mixed() -> QuantumState {
        crate::observable::validate_state(RawState::Density(ComplexMatrix::identity(2).scale_real(0.5))).unwrap()
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(expectation(&pauli(Pauli::Z), &ket0()).unwrap(), 1.0);
        assert_eq!(expectation(&pauli(Pauli::X), &maximally_mixed()).unwrap(), 0.0);
    }

    #[test]
    fn jz_on_qutrit_family_is_cos_theta() {
        let (_, _, jz) = spin1_ops();
        for k in 0..50 {
            let theta = k as f64 * 0.13;
            let e = expectation(&jz, &qutrit_family(theta)).unwrap();
            assert!((e - theta.cos()).abs() < 1e-14, "theta {theta}");
        }
    }

    #[test]
    fn variance_examples() {
        assert_eq!(variance(&pauli(Pauli::Z), &ket0()).unwrap(), 0.0);
        assert!((variance(&pauli(Pauli::X), &maximally_mixed()).unwrap() - 1.0).abs() < 1e-15);
        let (jx, _, _) = spin1_ops();
        for k in 0..50 {
            let theta = k as f64 * 0.127;
            let v = variance(&jx, &qutrit_family(theta)).unwrap();
            assert!((v - 0.5 * (1.0 + theta.sin())).abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let (jx, _, _) = spin1_ops();
        assert!(matches!(expectation(&jx, &ket0()), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(variance(&jx, &ket0()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn commutator_examples() {
        let x = pauli(Pauli::X);
        let y = pauli(Pauli::Y);
        assert!((commutator_expectation(&x, &y, &ket0()).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(commutator_expectation(&x, &x, &ket_plus()).unwrap(), 0.0);
        let (jx, jy, _) = spin1_ops();
        assert!((commutator_expectation(&jx, &jy, &qutrit_family(0.0)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_expectation_is_rejected() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let bogus = Observable::from_matrix_unchecked(m);
        assert!(matches!(expectation(&bogus, &ket0()), Err(Error::ComplexExpectation { .. })));
    }
}
