//! Randomized falsification campaign for every inequality in [`crate::bounds`].
//!
//! Each trial derives its own generator from `seed ^ trial_index`, so a trial
//! can be replayed in isolation and the summary does not depend on how trials
//! are scheduled across threads.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    bound_pair_stddev, bound_robertson, hlawka_slack, identity_sides, methods_vectors, pair_stddevs, ObservableSet,
    SLACK_TOL,
};
use crate::error::{Error, Result};
use crate::families::{random_density, random_hermitian, random_pure, random_unitary};
use crate::hs::hs_norm;
use crate::matrix::ComplexMatrix;
use crate::moments::{stddev, variance};
use crate::observable::{Observable, QuantumState};
use crate::rng::SplitMix64;

/// Bounds at or below this count as zero for the zero-forcing checks.
pub const ZERO_BOUND: f64 = 1e-9;
/// Pair deviations must fall below this when a bound is zero.
pub const FORCED_DEVIATION: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub trials: usize,
    pub dims: Vec<usize>,
    /// Inclusive range of observable counts.
    pub n_range: (usize, usize),
    pub seed: u64,
    pub tolerance: f64,
    /// Fraction of trials drawn with a mixed state.
    pub state_mix: f64,
    /// Fraction of trials built around a common eigenstate of all observables.
    pub eigen_frac: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 10_000,
            dims: vec![2, 3, 4, 8],
            n_range: (2, 6),
            seed: 42,
            tolerance: SLACK_TOL,
            state_mix: 0.3,
            eigen_frac: 0.0,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| !(2..=64).contains(&d)) {
            return bad(format!("dims must be a non-empty subset of [2, 64], got {:?}", self.dims));
        }
        let (lo, hi) = self.n_range;
        if lo < 2 || hi < lo {
            return bad(format!("observable range {lo}..{hi} must satisfy 2 <= lo <= hi"));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return bad(format!("tolerance must be a finite non-negative number, got {}", self.tolerance));
        }
        for (name, frac) in [("state_mix", self.state_mix), ("eigen_frac", self.eigen_frac)] {
            if !(0.0..=1.0).contains(&frac) {
                return bad(format!("{name} must lie in [0, 1], got {frac}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Pure,
    Mixed,
    CommonEigenstate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InstanceInfo {
    pub trial: usize,
    pub seed: u64,
    pub dim: usize,
    pub n: usize,
    pub state: InstanceKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub property: &'static str,
    pub instance: InstanceInfo,
    pub slack: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropertyStats {
    pub checks: u64,
    pub min_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub trials_run: usize,
    pub violations: Vec<Violation>,
    pub properties: BTreeMap<&'static str, PropertyStats>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Slack of every applicable property on one instance; negative slack means
/// the inequality failed. Properties that do not apply are omitted.
pub fn check_instance(set: &ObservableSet, state: &QuantumState) -> Result<Vec<(&'static str, f64)>> {
    let obs = set.observables();
    let n = obs.len();
    let vars: Vec<f64> = obs.iter().map(|a| variance(a, state)).collect::<Result<_>>()?;
    let sds: Vec<f64> = vars.iter().map(|v| v.sqrt()).collect();
    let lhs_var: f64 = vars.iter().sum();
    let lhs_sd: f64 = sds.iter().sum();
    let pairs = pair_stddevs(set, state)?;
    let total_sd = stddev(&set.total(), state)?;

    let sum_sq: f64 = pairs.iter().map(|x| x * x).sum();
    let sum: f64 = pairs.iter().sum();
    let tb1 = sum_sq / (2 * (n - 1)) as f64;
    let tb2 = total_sd;

    let mut out = vec![("variance_tb1", lhs_var - tb1), ("stddev_tb2", lhs_sd - tb2)];

    if n >= 3 {
        // Independent re-evaluation of cb1/cb3 from the pair deviations.
        let m = (n - 1) as f64;
        let cb1 = (sum_sq - sum * sum / (m * m)) / (n - 2) as f64;
        let cb3 = (sum - total_sd) / (n - 2) as f64;
        out.push(("variance_cb1", lhs_var - cb1));
        out.push(("stddev_cb3", lhs_sd - cb3));
        out.push(("order_cb1_tb1", cb1 - tb1));
        out.push(("order_cb3_tb2", cb3 - tb2));
        if cb1 <= ZERO_BOUND {
            let max_pair = pairs.iter().copied().fold(0.0, f64::max);
            out.push(("zero_forcing_variance", FORCED_DEVIATION - max_pair));
        }
        if cb3 <= ZERO_BOUND {
            out.push(("zero_forcing_stddev", FORCED_DEVIATION - total_sd.max(sum)));
        }
    }

    let mut pair_var = f64::INFINITY;
    let mut pair_sd = f64::INFINITY;
    let mut robertson = f64::INFINITY;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            pair_var = pair_var.min(vars[i] + vars[j] - 0.5 * pairs[k] * pairs[k]);
            pair_sd = pair_sd.min(sds[i] + sds[j] - bound_pair_stddev(&obs[i], &obs[j], state)?);
            robertson = robertson.min(sds[i] * sds[j] - bound_robertson(&obs[i], &obs[j], state)?);
            k += 1;
        }
    }
    out.push(("pair_variance", pair_var));
    out.push(("pair_stddev", pair_sd));
    out.push(("robertson", robertson));

    let tuple = methods_vectors(set, state)?;
    let (lhs, rhs) = identity_sides(&tuple);
    out.push(("identity", -(lhs - rhs).abs() / rhs.max(1.0)));
    out.push(("hlawka", hlawka_slack(&tuple)));
    let hs_gap = tuple
        .vectors()
        .iter()
        .zip(&sds)
        .map(|(v, sd)| (hs_norm(v) - sd).abs())
        .fold(0.0, f64::max);
    out.push(("hs_stddev", -hs_gap));
    Ok(out)
}

/// Observables diagonal in a shared random basis, and one basis vector as the
/// state: every bound vanishes on such an instance.
pub fn common_eigenstate_instance(dim: usize, n: usize, rng: &mut SplitMix64) -> (ObservableSet, QuantumState) {
    let u = random_unitary(dim, rng.next_u64());
    let ud = u.adjoint();
    let observables = (0..n)
        .map(|_| {
            let diag: Vec<f64> = (0..dim).map(|_| rng.gaussian_pair().0).collect();
            let m = &(&u * &ComplexMatrix::diagonal(&diag)) * &ud;
            hermitian_part(m)
        })
        .collect();
    let k = rng.below(dim);
    let psi = (0..dim).map(|i| u[(i, k)]).collect();
    (ObservableSet::new(observables).expect("equal dimensions"), QuantumState::Pure(psi))
}

fn hermitian_part(m: ComplexMatrix) -> Observable {
    let h = (&m + &m.adjoint()).scale_real(0.5);
    Observable::new(h).expect("symmetrized matrix is Hermitian")
}

fn draw_instance(cfg: &VerifyConfig, trial: usize) -> (InstanceInfo, ObservableSet, QuantumState) {
    let seed = cfg.seed ^ trial as u64;
    let mut rng = SplitMix64::new(seed);
    let dim = cfg.dims[rng.below(cfg.dims.len())];
    let (lo, hi) = cfg.n_range;
    let n = lo + rng.below(hi - lo + 1);
    let eigen = rng.next_f64() <= cfg.eigen_frac;
    let mixed = rng.next_f64() <= cfg.state_mix;

    let (kind, set, state) = if eigen {
        let (set, state) = common_eigenstate_instance(dim, n, &mut rng);
        (InstanceKind::CommonEigenstate, set, state)
    } else {
        let observables = (0..n).map(|_| random_hermitian(dim, rng.next_u64(), 1.0)).collect();
        let set = ObservableSet::new(observables).expect("equal dimensions");
        let state_seed = rng.next_u64();
        if mixed {
            (InstanceKind::Mixed, set, random_density(dim, state_seed))
        } else {
            (InstanceKind::Pure, set, random_pure(dim, state_seed))
        }
    };
    (InstanceInfo { trial, seed, dim, n, state: kind }, set, state)
}

/// Runs `cfg.trials` random instances through [`check_instance`].
pub fn random_verify(cfg: &VerifyConfig) -> Result<VerifySummary> {
    cfg.validate()?;
    let start = Instant::now();
    let outcomes: Vec<(InstanceInfo, Vec<(&'static str, f64)>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let (info, set, state) = draw_instance(cfg, trial);
            let checks = check_instance(&set, &state).unwrap_or_else(|_| vec![("evaluation", f64::NEG_INFINITY)]);
            (info, checks)
        })
        .collect();

    let mut properties: BTreeMap<&'static str, PropertyStats> = BTreeMap::new();
    let mut violations = Vec::new();
    for (info, checks) in outcomes {
        for (property, slack) in checks {
            let entry = properties.entry(property).or_insert(PropertyStats { checks: 0, min_slack: f64::INFINITY });
            entry.checks += 1;
            if slack < entry.min_slack {
                entry.min_slack = slack;
            }
            if slack < -cfg.tolerance {
                violations.push(Violation { property, instance: info, slack });
            }
        }
    }
    Ok(VerifySummary { trials_run: cfg.trials, violations, properties, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> VerifyConfig {
        VerifyConfig { trials, ..VerifyConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(VerifyConfig::default().validate().is_ok());
        assert!(VerifyConfig { trials: 0, ..Default::default() }.validate().is_err());
        assert!(VerifyConfig { dims: vec![1], ..Default::default() }.validate().is_err());
        assert!(VerifyConfig { dims: vec![65], ..Default::default() }.validate().is_err());
        assert!(VerifyConfig { n_range: (1, 3), ..Default::default() }.validate().is_err());
        assert!(VerifyConfig { state_mix: 1.5, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn small_campaign_is_clean_and_reproducible() {
        let a = random_verify(&small(300)).unwrap();
        assert!(a.passed(), "{:?}", a.violations.first());
        assert_eq!(a.trials_run, 300);
        let b = random_verify(&small(300)).unwrap();
        assert_eq!(a.properties, b.properties);
        for name in ["variance_cb1", "stddev_cb3", "robertson", "identity", "hlawka", "hs_stddev"] {
            assert!(a.properties[name].checks > 0, "{name}");
        }
    }

    #[test]
    fn injected_common_eigenstate_exercises_zero_forcing() {
        let cfg = VerifyConfig { trials: 1, n_range: (3, 3), eigen_frac: 1.0, ..VerifyConfig::default() };
        let s = random_verify(&cfg).unwrap();
        assert!(s.passed(), "{:?}", s.violations);
        assert_eq!(s.properties["zero_forcing_variance"].checks, 1);
        assert_eq!(s.properties["zero_forcing_stddev"].checks, 1);
    }

    #[test]
    fn tiny_tolerance_exposes_rounding() {
        let cfg = VerifyConfig { trials: 50, tolerance: 1e-30, ..VerifyConfig::default() };
        let s = random_verify(&cfg).unwrap();
        assert!(!s.passed());
        assert!(s.violations.iter().all(|v| v.slack < -1e-30));
    }
}
