//! Sum uncertainty bounds for `N` observables and the Hilbert-space facts
//! they rest on.
//!
//! With `Delta_ij = Delta(A_i + A_j)` over the `N(N-1)/2` pairs `i < j`:
//!
//! | name | bounds            | value                                                           |
//! |------|-------------------|-----------------------------------------------------------------|
//! | cb1  | `sum (Delta A_i)^2` | `[sum Delta_ij^2 - (sum Delta_ij)^2 / (N-1)^2] / (N-2)`        |
//! | tb1  | `sum (Delta A_i)^2` | `sum Delta_ij^2 / (2(N-1))`                                    |
//! | cb3  | `sum Delta A_i`     | `[sum Delta_ij - Delta(sum A_i)] / (N-2)`                       |
//! | tb2  | `sum Delta A_i`     | `Delta(sum A_i)`                                               |
//!
//! `cb1 >= tb1` and `cb3 >= tb2` always hold. For two observables the report
//! falls back to the pair bounds and the Robertson product bound.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hs::{centered_vector, hs_add, hs_norm, state_sqrt, HsVector};
use crate::moments::{commutator_expectation, stddev, variance};
use crate::observable::{Observable, QuantumState};

/// Absolute slack allowed on every inequality check.
pub const SLACK_TOL: f64 = 1e-9;

/// An ordered list of `N >= 2` observables of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSet {
    observables: Vec<Observable>,
}

impl ObservableSet {
    pub fn new(observables: Vec<Observable>) -> Result<Self> {
        if observables.len() < 2 {
            return Err(Error::NTooSmall { min: 2, got: observables.len() });
        }
        let dim = observables[0].dim();
        if let Some(o) = observables.iter().find(|o| o.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: o.dim() });
        }
        Ok(Self { observables })
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.observables[0].dim()
    }

    pub fn observables(&self) -> &[Observable] {
        &self.observables
    }

    /// `A_i + A_j` for every pair `i < j`, in lexicographic order.
    pub fn pair_sums(&self) -> Vec<Observable> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.observables[i].try_add(&self.observables[j]).expect("equal dimensions"));
            }
        }
        out
    }

    pub fn total(&self) -> Observable {
        Observable::sum(&self.observables).expect("non-empty set of equal dimensions")
    }

    fn check_state(&self, state: &QuantumState) -> Result<()> {
        state.check_dim(self.dim())
    }

    fn require(&self, min: usize) -> Result<()> {
        if self.len() < min {
            return Err(Error::NTooSmall { min, got: self.len() });
        }
        Ok(())
    }
}

/// `Delta(A_i + A_j)` for all pairs `i < j`, each from the summed observable.
pub fn pair_stddevs(set: &ObservableSet, state: &QuantumState) -> Result<Vec<f64>> {
    set.check_state(state)?;
    set.pair_sums().iter().map(|o| stddev(o, state)).collect()
}

/// `sum_i (Delta A_i)^2`.
pub fn lhs_variance_sum(set: &ObservableSet, state: &QuantumState) -> Result<f64> {
    set.check_state(state)?;
    set.observables.iter().map(|a| variance(a, state)).sum()
}

/// `sum_i Delta A_i`.
pub fn lhs_stddev_sum(set: &ObservableSet, state: &QuantumState) -> Result<f64> {
    set.check_state(state)?;
    set.observables.iter().map(|a| stddev(a, state)).sum()
}

fn cb1_from_pairs(n: usize, pairs: &[f64]) -> f64 {
    let sum_sq: f64 = pairs.iter().map(|x| x * x).sum();
    let sum: f64 = pairs.iter().sum();
    let m = (n - 1) as f64;
    (sum_sq - sum * sum / (m * m)) / (n - 2) as f64
}

fn tb1_from_pairs(n: usize, pairs: &[f64]) -> f64 {
    pairs.iter().map(|x| x * x).sum::<f64>() / (2 * (n - 1)) as f64
}

fn cb3_from_pairs(n: usize, pairs: &[f64], total_stddev: f64) -> f64 {
    (pairs.iter().sum::<f64>() - total_stddev) / (n - 2) as f64
}

/// Variance-based sum bound; needs `N >= 3`.
pub fn bound_cb1(set: &ObservableSet, state: &QuantumState) -> Result<f64> {
    set.require(3)?;
    Ok(cb1_from_pairs(set.len(), &pair_stddevs(set, state)?))
}

/// Pairwise-lifted variance bound.
pub fn bound_tb1(set: &ObservableSet, state: &QuantumState) -> Result<f64> {
    Ok(tb1_from_pairs(set.len(), &pair_stddevs(set, state)?))
}

/// Standard-deviation-based sum bound; needs `N >= 3`.
pub fn bound_cb3(set: &ObservableSet, state: &QuantumState) -> Result<f64> {
    set.require(3)?;
    let pairs = pair_stddevs(set, state)?;
    Ok(cb3_from_pairs(set.len(), &pairs, stddev(&set.total(), state)?))
}

/// Triangle-inequality bound `Delta(sum A_i)`.
pub fn bound_tb2(set: &ObservableSet, state: &QuantumState) -> Result<f64> {
    set.check_state(state)?;
    stddev(&set.total(), state)
}

/// `(Delta(A + B))^2 / 2`, a lower bound on `(Delta A)^2 + (Delta B)^2`.
pub fn bound_pair_variance(a: &Observable, b: &Observable, state: &QuantumState) -> Result<f64> {
    Ok(0.5 * variance(&a.try_add(b)?, state)?)
}

/// `max(Delta(A + B), Delta(A - B))`, a lower bound on `Delta A + Delta B`.
pub fn bound_pair_stddev(a: &Observable, b: &Observable, state: &QuantumState) -> Result<f64> {
    let plus = stddev(&a.try_add(b)?, state)?;
    let minus = stddev(&a.try_sub(b)?, state)?;
    Ok(plus.max(minus))
}

/// `|<[A, B]>| / 2`, a lower bound on the product `Delta A * Delta B`.
pub fn bound_robertson(a: &Observable, b: &Observable, state: &QuantumState) -> Result<f64> {
    Ok(0.5 * commutator_expectation(a, b, state)?)
}

/// Which uncertainty sum a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Variance,
    Stddev,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Variance => "variance",
            Self::Stddev => "stddev",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "variance" => Ok(Self::Variance),
            "stddev" => Ok(Self::Stddev),
            other => Err(Error::InvalidConfig(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Cb1,
    Tb1,
    Cb3,
    Tb2,
}

impl BoundKind {
    pub fn relation(self) -> Relation {
        match self {
            Self::Cb1 | Self::Tb1 => Relation::Variance,
            Self::Cb3 | Self::Tb2 => Relation::Stddev,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Cb1 => "cb1",
            Self::Tb1 => "tb1",
            Self::Cb3 => "cb3",
            Self::Tb2 => "tb2",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cb1" => Ok(Self::Cb1),
            "tb1" => Ok(Self::Tb1),
            "cb3" => Ok(Self::Cb3),
            "tb2" => Ok(Self::Tb2),
            other => Err(Error::InvalidConfig(format!("unknown bound `{other}`"))),
        }
    }
}

/// Uncertainty sum and its two bounds for one relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationValues {
    pub lhs: f64,
    /// cb1 or cb3 (requires `N >= 3`).
    pub cb: f64,
    /// tb1 or tb2.
    pub tb: f64,
}

impl RelationValues {
    pub fn bound(&self, kind: BoundKind) -> f64 {
        match kind {
            BoundKind::Cb1 | BoundKind::Cb3 => self.cb,
            BoundKind::Tb1 | BoundKind::Tb2 => self.tb,
        }
    }
}

/// Evaluates one relation with a single pass over the pair deviations.
pub fn evaluate_relation(set: &ObservableSet, state: &QuantumState, relation: Relation) -> Result<RelationValues> {
    set.require(3)?;
    let n = set.len();
    let pairs = pair_stddevs(set, state)?;
    Ok(match relation {
        Relation::Variance => RelationValues {
            lhs: lhs_variance_sum(set, state)?,
            cb: cb1_from_pairs(n, &pairs),
            tb: tb1_from_pairs(n, &pairs),
        },
        Relation::Stddev => {
            let total = stddev(&set.total(), state)?;
            RelationValues { lhs: lhs_stddev_sum(set, state)?, cb: cb3_from_pairs(n, &pairs, total), tb: total }
        }
    })
}

/// Ordered list of `N >= 2` Hilbert-Schmidt vectors of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorTuple {
    vectors: Vec<HsVector>,
}

impl VectorTuple {
    pub fn new(vectors: Vec<HsVector>) -> Result<Self> {
        if vectors.len() < 2 {
            return Err(Error::NTooSmall { min: 2, got: vectors.len() });
        }
        let dim = vectors[0].dim();
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
        }
        Ok(Self { vectors })
    }

    pub fn vectors(&self) -> &[HsVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn total(&self) -> HsVector {
        let mut acc = HsVector::zeros(self.vectors[0].dim());
        for v in &self.vectors {
            acc = hs_add(&acc, v).expect("equal dimensions");
        }
        acc
    }

    fn pair_norms(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(hs_norm(&hs_add(&self.vectors[i], &self.vectors[j]).expect("equal dimensions")));
            }
        }
        out
    }
}

/// Both sides of `||sum a_i||^2 + (N-2) sum ||a_i||^2 = sum_{i<j} ||a_i + a_j||^2`.
pub fn identity_sides(t: &VectorTuple) -> (f64, f64) {
    let n = t.len() as f64;
    let total = hs_norm(&t.total()).powi(2);
    let singles: f64 = t.vectors.iter().map(|v| hs_norm(v).powi(2)).sum();
    let rhs: f64 = t.pair_norms().iter().map(|x| x * x).sum();
    (total + (n - 2.0) * singles, rhs)
}

/// Absolute residual of the norm identity. The identity is exact algebra, so
/// a residual above `1e-9 * max(1, rhs)` is an error.
pub fn identity_residual(t: &VectorTuple) -> Result<f64> {
    let (lhs, rhs) = identity_sides(t);
    let residual = (lhs - rhs).abs();
    if residual > SLACK_TOL * rhs.max(1.0) {
        return Err(Error::IdentityViolated { residual });
    }
    Ok(residual)
}

/// `||sum a_i|| + (N-2) sum ||a_i|| - sum_{i<j} ||a_i + a_j||`, non-negative by
/// the generalized Hlawka inequality.
pub fn hlawka_slack(t: &VectorTuple) -> f64 {
    let n = t.len() as f64;
    let singles: f64 = t.vectors.iter().map(hs_norm).sum();
    let pairs: f64 = t.pair_norms().iter().sum();
    hs_norm(&t.total()) + (n - 2.0) * singles - pairs
}

/// The vectors `a_i = (A_i - <A_i>) sqrt(rho)` whose norms are `Delta A_i`.
pub fn methods_vectors(set: &ObservableSet, state: &QuantumState) -> Result<VectorTuple> {
    set.check_state(state)?;
    let s = state_sqrt(state)?;
    let vectors = set
        .observables
        .iter()
        .map(|a| centered_vector(a, state, &s))
        .collect::<Result<Vec<_>>>()?;
    VectorTuple::new(vectors)
}

/// Ordering flags; `None` where the bound pair does not apply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderingFlags {
    pub cb1_ge_tb1: Option<bool>,
    pub cb3_ge_tb2: Option<bool>,
}

/// Every applicable bound for one (set, state) instance.
///
/// For `N >= 3` the report carries cb1, tb1, cb3 and tb2. For `N = 2` the
/// `N - 2` denominators are undefined, so cb1 and cb3 are absent and the pair
/// bounds together with the Robertson product bound take their place.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub dim: usize,
    pub lhs_variance: f64,
    pub lhs_stddev: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_product: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cb1: Option<f64>,
    pub tb1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cb3: Option<f64>,
    pub tb2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_variance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_stddev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub robertson: Option<f64>,
    /// Left-hand side minus bound, keyed by bound name.
    pub gaps: BTreeMap<&'static str, f64>,
    /// Every gap is at least `-1e-9`.
    pub gaps_ok: bool,
    pub ordering: OrderingFlags,
}

pub fn bound_report(set: &ObservableSet, state: &QuantumState) -> Result<BoundReport> {
    set.check_state(state)?;
    let n = set.len();
    let pairs = pair_stddevs(set, state)?;
    let stddevs: Vec<f64> = set.observables.iter().map(|a| stddev(a, state)).collect::<Result<_>>()?;
    let lhs_variance: f64 = set.observables.iter().map(|a| variance(a, state)).sum::<Result<f64>>()?;
    let lhs_stddev: f64 = stddevs.iter().sum();
    let tb1 = tb1_from_pairs(n, &pairs);
    let tb2 = bound_tb2(set, state)?;

    let mut gaps = BTreeMap::new();
    gaps.insert("tb1", lhs_variance - tb1);
    gaps.insert("tb2", lhs_stddev - tb2);

    let mut report = BoundReport {
        n,
        dim: set.dim(),
        lhs_variance,
        lhs_stddev,
        lhs_product: None,
        cb1: None,
        tb1,
        cb3: None,
        tb2,
        pair_variance: None,
        pair_stddev: None,
        robertson: None,
        gaps: BTreeMap::new(),
        gaps_ok: true,
        ordering: OrderingFlags { cb1_ge_tb1: None, cb3_ge_tb2: None },
    };

    if n >= 3 {
        let cb1 = cb1_from_pairs(n, &pairs);
        let cb3 = cb3_from_pairs(n, &pairs, tb2);
        gaps.insert("cb1", lhs_variance - cb1);
        gaps.insert("cb3", lhs_stddev - cb3);
        report.cb1 = Some(cb1);
        report.cb3 = Some(cb3);
        report.ordering = OrderingFlags {
            cb1_ge_tb1: Some(cb1 >= tb1 - SLACK_TOL),
            cb3_ge_tb2: Some(cb3 >= tb2 - SLACK_TOL),
        };
    } else {
        let [a, b] = [&set.observables[0], &set.observables[1]];
        let product = stddevs[0] * stddevs[1];
        let pv = bound_pair_variance(a, b, state)?;
        let ps = bound_pair_stddev(a, b, state)?;
        let rob = bound_robertson(a, b, state)?;
        gaps.insert("pair_variance", lhs_variance - pv);
        gaps.insert("pair_stddev", lhs_stddev - ps);
        gaps.insert("robertson", product - rob);
        report.lhs_product = Some(product);
        report.pair_variance = Some(pv);
        report.pair_stddev = Some(ps);
        report.robertson = Some(rob);
    }
    report.gaps_ok = gaps.values().all(|&g| g >= -SLACK_TOL);
    report.gaps = gaps;
    Ok(report)
}
