//! Named operators, the two one-parameter state families, and seeded random
//! instances for the verification harness.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::eigen::eigh;
use crate::error::{Error, Result};
use crate::matrix::{vector_norm, ComplexMatrix};
use crate::observable::{Observable, QuantumState, STATE_TOL};
use crate::rng::SplitMix64;

const Z0: Complex64 = Complex64::new(0.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

pub fn pauli(which: Pauli) -> Observable {
    let rows = match which {
        Pauli::X => [[Z0, re(1.0)], [re(1.0), Z0]],
        Pauli::Y => [[Z0, im(-1.0)], [im(1.0), Z0]],
        Pauli::Z => [[re(1.0), Z0], [Z0, re(-1.0)]],
    };
    let m = ComplexMatrix::from_row_major(2, rows.concat()).expect("2x2 literal");
    Observable::new(m).expect("Pauli matrices are Hermitian")
}

/// Spin-1 angular momentum operators `(J_x, J_y, J_z)` with hbar = 1.
pub fn spin1_ops() -> (Observable, Observable, Observable) {
    let h = FRAC_1_SQRT_2;
    let jx = [Z0, re(h), Z0, re(h), Z0, re(h), Z0, re(h), Z0];
    let jy = [Z0, im(-h), Z0, im(h), Z0, im(-h), Z0, im(h), Z0];
    let build = |data: &[Complex64]| {
        Observable::new(ComplexMatrix::from_row_major(3, data.to_vec()).expect("3x3 literal"))
            .expect("spin-1 operators are Hermitian")
    };
    let jz = Observable::new(ComplexMatrix::diagonal(&[1.0, 0.0, -1.0])).expect("diagonal");
    (build(&jx), build(&jy), jz)
}

/// Qubit state with Bloch vector `r`, i.e. density matrix `(I + r . sigma) / 2`.
///
/// Vectors of unit length (within 1e-10) yield a pure state vector whose
/// projector is that density matrix; shorter ones yield a mixed state.
pub fn bloch_state(r: [f64; 3]) -> Result<QuantumState> {
    let length = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if length > 1.0 + STATE_TOL {
        return Err(Error::BlochVectorTooLong { length });
    }
    let [x, y, z] = r;
    if (length - 1.0).abs() <= STATE_TOL {
        // Branch on the hemisphere to keep the normalizing denominator away
        // from zero.
        let psi = if z >= 0.0 {
            let d = (2.0 * (1.0 + z)).sqrt();
            vec![re((1.0 + z) / d), Complex64::new(x, y) / d]
        } else {
            let d = (2.0 * (1.0 - z)).sqrt();
            vec![Complex64::new(x, -y) / d, re((1.0 - z) / d)]
        };
        return Ok(QuantumState::Pure(psi));
    }
    let rho = ComplexMatrix::from_row_major(
        2,
        vec![re(0.5 * (1.0 + z)), Complex64::new(0.5 * x, -0.5 * y), Complex64::new(0.5 * x, 0.5 * y), re(0.5 * (1.0 - z))],
    )?;
    Ok(QuantumState::Mixed(rho))
}

/// Pure qubit state with Bloch vector `(cos t / sqrt 2, cos t / sqrt 2, sin t)`.
pub fn qubit_family(theta: f64) -> QuantumState {
    let (s, c) = theta.sin_cos();
    bloch_state([c * FRAC_1_SQRT_2, c * FRAC_1_SQRT_2, s]).expect("unit Bloch vector")
}

/// Pure qutrit state `cos(t/2)|0> + sin(t/2)|2>`.
pub fn qutrit_family(theta: f64) -> QuantumState {
    let (s, c) = (0.5 * theta).sin_cos();
    QuantumState::Pure(vec![re(c), Z0, re(s)])
}

/// The two parameterized examples: Pauli triple on the qubit family and the
/// spin-1 triple on the qutrit family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyName {
    #[serde(rename = "qubit-paper")]
    QubitPaper,
    #[serde(rename = "qutrit-paper")]
    QutritPaper,
}

impl FamilyName {
    pub fn state(self, theta: f64) -> QuantumState {
        match self {
            Self::QubitPaper => qubit_family(theta),
            Self::QutritPaper => qutrit_family(theta),
        }
    }

    pub fn observables(self) -> Vec<Observable> {
        match self {
            Self::QubitPaper => vec![pauli(Pauli::X), pauli(Pauli::Y), pauli(Pauli::Z)],
            Self::QutritPaper => {
                let (jx, jy, jz) = spin1_ops();
                vec![jx, jy, jz]
            }
        }
    }

    pub fn labels(self) -> [&'static str; 3] {
        match self {
            Self::QubitPaper => ["X", "Y", "Z"],
            Self::QutritPaper => ["Jx", "Jy", "Jz"],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::QubitPaper => "qubit-paper",
            Self::QutritPaper => "qutrit-paper",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qubit-paper" => Ok(Self::QubitPaper),
            "qutrit-paper" => Ok(Self::QutritPaper),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

fn gaussian_matrix(dim: usize, rng: &mut SplitMix64) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| rng.complex_gaussian()).collect();
    ComplexMatrix::from_row_major(dim, data).expect("finite gaussian entries")
}

/// Normalized complex Gaussian vector.
pub fn random_pure(dim: usize, seed: u64) -> QuantumState {
    let mut rng = SplitMix64::new(seed);
    let v: Vec<Complex64> = (0..dim).map(|_| rng.complex_gaussian()).collect();
    let norm = vector_norm(&v);
    QuantumState::Pure(v.into_iter().map(|z| z / norm).collect())
}

/// `G G^dagger / Tr(G G^dagger)` for a complex Gaussian `G`.
pub fn random_density(dim: usize, seed: u64) -> QuantumState {
    let mut rng = SplitMix64::new(seed);
    let g = gaussian_matrix(dim, &mut rng);
    let ggd = &g * &g.adjoint();
    let mut rho = ggd.scale_real(1.0 / ggd.trace().re);
    // G G^dagger is Hermitian in exact arithmetic; pin the diagonal to reals.
    for i in 0..dim {
        rho[(i, i)] = re(rho[(i, i)].re);
    }
    QuantumState::Mixed(rho)
}

/// `scale * (G + G^dagger) / 2` for a complex Gaussian `G`.
pub fn random_hermitian(dim: usize, seed: u64, scale: f64) -> Observable {
    let mut rng = SplitMix64::new(seed);
    let g = gaussian_matrix(dim, &mut rng);
    let h = (&g + &g.adjoint()).scale_real(0.5 * scale);
    Observable::new(h).expect("symmetrized matrix is Hermitian")
}

/// General complex Gaussian matrix, used as a random Hilbert-Schmidt vector.
pub fn random_matrix(dim: usize, seed: u64) -> ComplexMatrix {
    gaussian_matrix(dim, &mut SplitMix64::new(seed))
}

/// Unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    eigh(random_hermitian(dim, seed, 1.0).matrix()).vectors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{expectation, variance};

    #[test]
    fn pauli_matrices() {
        let x = pauli(Pauli::X);
        assert_eq!(x.matrix(), &ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap());
        assert_eq!(pauli(Pauli::Z).matrix(), &ComplexMatrix::diagonal(&[1.0, -1.0]));
        let y = pauli(Pauli::Y);
        assert_eq!(&(y.matrix() * y.matrix()), &ComplexMatrix::identity(2));
    }

    #[test]
    fn spin1_matrices() {
        let (jx, jy, jz) = spin1_ops();
        assert_eq!(jz.matrix(), &ComplexMatrix::diagonal(&[1.0, 0.0, -1.0]));
        assert_eq!(jx.matrix()[(0, 1)], re(FRAC_1_SQRT_2));
        assert_eq!(jx.matrix()[(1, 0)], re(FRAC_1_SQRT_2));
        let comm = jx.matrix().commutator(jy.matrix()).unwrap();
        let expected = jz.matrix().scale(im(1.0));
        assert!((&comm - &expected).hs_norm() < 1e-15);
    }

    #[test]
    fn bloch_examples() {
        let up = bloch_state([0.0, 0.0, 1.0]).unwrap();
        assert_eq!(up, QuantumState::Pure(vec![re(1.0), Z0]));

        let mixed = bloch_state([0.0, 0.0, 0.0]).unwrap();
        assert_eq!(mixed, QuantumState::Mixed(ComplexMatrix::identity(2).scale_real(0.5)));

        let h = FRAC_1_SQRT_2;
        let s = bloch_state([h, h, 0.0]).unwrap();
        assert!(s.is_pure_kind());
        assert!((expectation(&pauli(Pauli::X), &s).unwrap() - h).abs() < 1e-15);
        assert!((expectation(&pauli(Pauli::Y), &s).unwrap() - h).abs() < 1e-15);

        assert!(matches!(bloch_state([1.0, 1.0, 0.0]), Err(Error::BlochVectorTooLong { .. })));
    }

    #[test]
    fn bloch_projector_matches_density_formula() {
        for k in 0..40 {
            let t = k as f64 * 0.31;
            let p = 1.7 * k as f64;
            let r = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
            let rho = bloch_state(r).unwrap().density_matrix();
            let [x, y, z] = [pauli(Pauli::X), pauli(Pauli::Y), pauli(Pauli::Z)];
            let expected = &(&(&ComplexMatrix::identity(2) + &x.matrix().scale_real(r[0]))
                + &y.matrix().scale_real(r[1]))
                + &z.matrix().scale_real(r[2]);
            assert!((&rho - &expected.scale_real(0.5)).hs_norm() < 1e-14);
        }
    }

    #[test]
    fn qubit_family_examples() {
        let up = qubit_family(std::f64::consts::FRAC_PI_2).density_matrix();
        assert!((&up - &ComplexMatrix::diagonal(&[1.0, 0.0])).hs_norm() < 1e-15);
        let s = qubit_family(0.0);
        let total: f64 = [Pauli::X, Pauli::Y, Pauli::Z].iter().map(|&p| variance(&pauli(p), &s).unwrap()).sum();
        assert!((total - 2.0).abs() < 1e-14);
        let xy = pauli(Pauli::X).try_add(&pauli(Pauli::Y)).unwrap();
        assert!(variance(&xy, &s).unwrap() < 1e-15);
    }

    #[test]
    fn qutrit_family_examples() {
        assert_eq!(qutrit_family(0.0), QuantumState::Pure(vec![re(1.0), Z0, Z0]));
        match qutrit_family(std::f64::consts::PI) {
            QuantumState::Pure(v) => {
                assert!(v[0].norm() < 1e-16 && (v[2].re - 1.0).abs() < 1e-16);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("qubit-paper".parse::<FamilyName>().unwrap(), FamilyName::QubitPaper);
        assert_eq!("qutrit-paper".parse::<FamilyName>().unwrap(), FamilyName::QutritPaper);
        assert!(matches!("ququart".parse::<FamilyName>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn random_generators_satisfy_construction() {
        for seed in 0..20u64 {
            match random_pure(4, seed) {
                QuantumState::Pure(v) => assert!((vector_norm(&v) - 1.0).abs() < 1e-12),
                _ => unreachable!(),
            }
            let rho = random_density(3, seed);
            let m = rho.density_matrix();
            assert!((m.trace().re - 1.0).abs() < 1e-12);
            assert!(eigh(&m).values[0] >= -1e-12);
            assert!(QuantumState::density(m).is_ok());
            let h = random_hermitian(2, seed, 1.0);
            assert!(crate::observable::validate_observable(h.into_matrix()).is_ok());
        }
    }

    #[test]
    fn random_generators_are_reproducible() {
        assert_eq!(random_pure(5, 99), random_pure(5, 99));
        assert_eq!(random_density(4, 99), random_density(4, 99));
        assert_eq!(random_hermitian(3, 99, 2.0), random_hermitian(3, 99, 2.0));
        assert_ne!(random_pure(5, 99), random_pure(5, 100));
    }
}
