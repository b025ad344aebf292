//! Sum uncertainty relations for `N` quantum observables.
//!
//! The crate evaluates variance- and standard-deviation-based lower bounds on
//! `sum (Delta A_i)^2` and `sum Delta A_i` for arbitrary finite sets of
//! Hermitian observables, together with the weaker pairwise and triangle
//! bounds they dominate, the Robertson product bound, and the two
//! Hilbert-space facts behind them (a norm identity and the generalized
//! Hlawka inequality).
//!
//! Modules, bottom up:
//!
//! * [`matrix`], [`eigen`], [`observable`], [`moments`], [`hs`]: dense complex
//!   linear algebra, validation, expectations and variances.
//! * [`families`], [`rng`]: canonical operators, the qubit and qutrit state
//!   families, and seeded random instances.
//! * [`bounds`]: every bound and a per-instance [`bounds::BoundReport`].
//! * [`sweep`], [`verify`]: parameter sweeps, saturation search and the
//!   randomized verification campaign.

pub mod bounds;
pub mod eigen;
pub mod error;
pub mod families;
pub mod hs;
pub mod matrix;
pub mod moments;
pub mod observable;
pub mod rng;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use observable::{Observable, QuantumState, RawState};
