//! One-parameter sweeps over the qubit and qutrit families, and the search
//! for angles where an uncertainty sum meets its bound.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{evaluate_relation, BoundKind, ObservableSet, Relation, RelationValues};
use crate::error::{Error, Result};
use crate::families::FamilyName;

pub const DEFAULT_SWEEP_POINTS: usize = 1000;
pub const SCAN_POINTS: usize = 10_000;
/// A refined gap at or below this counts as saturation.
pub const SATURATION_GAP: f64 = 1e-7;
/// Golden-section stopping width in theta.
pub const THETA_TOL: f64 = 1e-9;
/// Saturation angles closer than this are merged.
pub const DEDUP_TOL: f64 = 1e-6;

/// Half-open angle interval `[lo, hi)` in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaRange {
    pub lo: f64,
    pub hi: f64,
}

impl ThetaRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidConfig(format!("invalid theta range [{lo}, {hi})")));
        }
        Ok(Self { lo, hi })
    }

    /// `[0, 2 pi)`.
    pub fn full() -> Self {
        Self { lo: 0.0, hi: TAU }
    }

    /// `lo + k (hi - lo) / points` for `k` in `0..points`.
    pub fn grid(&self, points: usize) -> Vec<f64> {
        let step = (self.hi - self.lo) / points as f64;
        (0..points).map(|k| self.lo + k as f64 * step).collect()
    }
}

impl Default for ThetaRange {
    fn default() -> Self {
        Self::full()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: FamilyName,
    pub kind: Relation,
    pub points: usize,
    pub range: ThetaRange,
}

impl SweepSpec {
    pub fn new(family: FamilyName, kind: Relation) -> Self {
        Self { family, kind, points: DEFAULT_SWEEP_POINTS, range: ThetaRange::full() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub lhs: f64,
    pub cb_bound: f64,
    pub tb_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub family: FamilyName,
    pub kind: Relation,
    pub labels: Vec<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Row with the largest value of `column`; ties go to the earliest row.
    pub fn argmax(&self, column: impl Fn(&SweepRow) -> f64) -> &SweepRow {
        let mut best = &self.rows[0];
        for row in &self.rows[1..] {
            if column(row) > column(best) {
                best = row;
            }
        }
        best
    }
}

fn family_set(family: FamilyName) -> ObservableSet {
    ObservableSet::new(family.observables()).expect("family observables share a dimension")
}

fn evaluate(family: FamilyName, set: &ObservableSet, kind: Relation, theta: f64) -> RelationValues {
    evaluate_relation(set, &family.state(theta), kind).expect("family states match their observables")
}

/// Evaluates the uncertainty sum and both bounds on an even grid.
///
/// Points are evaluated in parallel and collected in grid order, so the
/// result does not depend on the thread count.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.points < 2 {
        return Err(Error::InvalidConfig(format!("sweep needs at least 2 points, got {}", spec.points)));
    }
    let range = ThetaRange::new(spec.range.lo, spec.range.hi)?;
    let set = family_set(spec.family);
    let rows = range
        .grid(spec.points)
        .into_par_iter()
        .map(|theta| {
            let v = evaluate(spec.family, &set, spec.kind, theta);
            SweepRow { theta, lhs: v.lhs, cb_bound: v.cb, tb_bound: v.tb }
        })
        .collect();
    Ok(SweepResult {
        family: spec.family,
        kind: spec.kind,
        labels: spec.family.labels().iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `tol`. Assumes `f` is unimodal on the bracket;
/// kinks are fine.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Angles in `range` where `lhs - bound <= 1e-7`.
///
/// A 10,000-point scan brackets every local minimum of the gap, each bracket
/// is refined by golden-section search to a width of 1e-9, and minima whose
/// refined gap clears the threshold are returned sorted with near-duplicates
/// (within 1e-6) merged.
pub fn find_saturation(family: FamilyName, kind: Relation, bound: BoundKind, range: ThetaRange) -> Result<Vec<f64>> {
    find_saturation_with(family, kind, bound, range, SCAN_POINTS)
}

pub fn find_saturation_with(
    family: FamilyName,
    kind: Relation,
    bound: BoundKind,
    range: ThetaRange,
    scan_points: usize,
) -> Result<Vec<f64>> {
    if bound.relation() != kind {
        return Err(Error::IncompatibleBound { bound: bound.to_string(), kind: kind.to_string() });
    }
    if scan_points < 3 {
        return Err(Error::InvalidConfig("saturation scan needs at least 3 points".into()));
    }
    let range = ThetaRange::new(range.lo, range.hi)?;
    let set = family_set(family);
    let gap = |theta: f64| {
        let v = evaluate(family, &set, kind, theta);
        v.lhs - v.bound(bound)
    };

    let grid = range.grid(scan_points);
    let values: Vec<f64> = grid.par_iter().map(|&t| gap(t)).collect();
    let last = grid.len() - 1;

    let brackets: Vec<(f64, f64)> = (0..=last)
        .filter(|&k| {
            let left_ok = k == 0 || values[k] < values[k - 1];
            let right_ok = k == last || values[k] <= values[k + 1];
            left_ok && right_ok
        })
        .map(|k| (grid[k.saturating_sub(1)], grid[(k + 1).min(last)]))
        .collect();

    let mut found: Vec<(f64, f64)> = brackets
        .into_par_iter()
        .map(|(a, b)| {
            let x = golden_section_min(gap, a, b, THETA_TOL);
            [x, a, b]
                .into_iter()
                .map(|t| (t, gap(t)))
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .expect("three candidates")
        })
        .filter(|&(_, g)| g <= SATURATION_GAP)
        .collect();

    found.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut out: Vec<f64> = Vec::with_capacity(found.len());
    for (theta, _) in found {
        match out.last() {
            Some(&prev) if theta - prev <= DEDUP_TOL => {}
            _ => out.push(theta),
        }
    }
    Ok(out)
}

/// Which column of a sweep to maximize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    Lhs,
    Cb,
    Tb,
}

/// Maximum of one curve over `range`: grid scan, then golden-section
/// refinement around the best grid point. Returns `(theta, value)`.
pub fn curve_maximum(family: FamilyName, kind: Relation, curve: Curve, range: ThetaRange, points: usize) -> Result<(f64, f64)> {
    if points < 3 {
        return Err(Error::InvalidConfig("maximum search needs at least 3 points".into()));
    }
    let range = ThetaRange::new(range.lo, range.hi)?;
    let set = family_set(family);
    let value = |theta: f64| {
        let v = evaluate(family, &set, kind, theta);
        match curve {
            Curve::Lhs => v.lhs,
            Curve::Cb => v.cb,
            Curve::Tb => v.tb,
        }
    };
    let grid = range.grid(points);
    let values: Vec<f64> = grid.par_iter().map(|&t| value(t)).collect();
    let k = (0..values.len()).fold(0, |best, i| if values[i] > values[best] { i } else { best });
    let last = grid.len() - 1;
    let (a, b) = (grid[k.saturating_sub(1)], grid[(k + 1).min(last)]);
    let x = golden_section_min(|t| -value(t), a, b, THETA_TOL);
    let (theta, v) = [x, grid[k]]
        .into_iter()
        .map(|t| (t, value(t)))
        .max_by(|p, q| p.1.total_cmp(&q.1))
        .expect("two candidates");
    Ok((theta, v))
}
