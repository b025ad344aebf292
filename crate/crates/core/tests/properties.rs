use proptest::prelude::*;
use sumbound::bounds::{
    bound_cb1, bound_cb3, bound_pair_stddev, bound_pair_variance, bound_report, bound_robertson, bound_tb1, bound_tb2,
    hlawka_slack, identity_residual, lhs_stddev_sum, lhs_variance_sum, methods_vectors, ObservableSet, VectorTuple,
};
use sumbound::families::{random_density, random_hermitian, random_matrix, random_pure};
use sumbound::hs::{hs_norm, HsVector};
use sumbound::moments::{expectation, raw_variance, stddev, variance};
use sumbound::{Observable, QuantumState};

const TOL: f64 = 1e-9;

fn state(dim: usize, seed: u64, mixed: bool) -> QuantumState {
    if mixed {
        random_density(dim, seed)
    } else {
        random_pure(dim, seed)
    }
}

fn set(dim: usize, n: usize, seed: u64) -> ObservableSet {
    let obs = (0..n as u64).map(|i| random_hermitian(dim, seed.wrapping_mul(31).wrapping_add(i), 1.0)).collect();
    ObservableSet::new(obs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn variance_is_nonnegative_and_paths_agree(dim in 2usize..9, seed: u64, os: u64) {
        let a = random_hermitian(dim, os, 2.0);
        let pure = random_pure(dim, seed);
        let as_density = QuantumState::Mixed(pure.density_matrix());
        prop_assert!(raw_variance(&a, &pure).unwrap() >= -1e-10);
        prop_assert!(raw_variance(&a, &random_density(dim, seed)).unwrap() >= -1e-10);
        prop_assert!((variance(&a, &pure).unwrap() - variance(&a, &as_density).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn expectation_is_linear(dim in 2usize..9, seed: u64, alpha in -3.0f64..3.0, beta in -3.0f64..3.0, mixed: bool) {
        let a = random_hermitian(dim, seed, 1.0);
        let b = random_hermitian(dim, seed ^ 0xABCD, 1.0);
        let s = state(dim, seed.rotate_left(7), mixed);
        let combo = a.scale(alpha).try_add(&b.scale(beta)).unwrap();
        let lhs = expectation(&combo, &s).unwrap();
        let rhs = alpha * expectation(&a, &s).unwrap() + beta * expectation(&b, &s).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn hs_construction_gives_stddev(dim in prop::sample::select(vec![2usize, 3, 4, 8]), seed: u64, mixed: bool) {
        let obs = set(dim, 3, seed);
        let s = state(dim, seed ^ 1, mixed);
        let tuple = methods_vectors(&obs, &s).unwrap();
        for (v, a) in tuple.vectors().iter().zip(obs.observables()) {
            prop_assert!((hs_norm(v) - stddev(a, &s).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn sum_bounds_and_orderings_hold(dim in 2usize..6, n in 3usize..7, seed: u64, mixed: bool) {
        let obs = set(dim, n, seed);
        let s = state(dim, seed ^ 2, mixed);
        let lv = lhs_variance_sum(&obs, &s).unwrap();
        let ls = lhs_stddev_sum(&obs, &s).unwrap();
        let cb1 = bound_cb1(&obs, &s).unwrap();
        let tb1 = bound_tb1(&obs, &s).unwrap();
        let cb3 = bound_cb3(&obs, &s).unwrap();
        let tb2 = bound_tb2(&obs, &s).unwrap();
        prop_assert!(lv >= cb1 - TOL);
        prop_assert!(ls >= cb3 - TOL);
        prop_assert!(cb1 >= tb1 - TOL);
        prop_assert!(cb3 >= tb2 - TOL);
        prop_assert!(lv >= tb1 - TOL);
        prop_assert!(ls >= tb2 - TOL);
        let report = bound_report(&obs, &s).unwrap();
        prop_assert!(report.gaps_ok);
    }

    #[test]
    fn pair_relations_hold(dim in 2usize..6, seed: u64, mixed: bool) {
        let a = random_hermitian(dim, seed, 1.0);
        let b = random_hermitian(dim, !seed, 1.0);
        let s = state(dim, seed ^ 3, mixed);
        let (va, vb) = (variance(&a, &s).unwrap(), variance(&b, &s).unwrap());
        prop_assert!(va + vb >= bound_pair_variance(&a, &b, &s).unwrap() - TOL);
        prop_assert!(va.sqrt() + vb.sqrt() >= bound_pair_stddev(&a, &b, &s).unwrap() - TOL);
        prop_assert!(va.sqrt() * vb.sqrt() >= bound_robertson(&a, &b, &s).unwrap() - TOL);
    }

    #[test]
    fn shift_invariance(dim in 2usize..6, n in 3usize..6, seed: u64, shifts in prop::collection::vec(-5.0f64..5.0, 6), mixed: bool) {
        let obs = set(dim, n, seed);
        let shifted: Vec<Observable> = obs.observables().iter().zip(&shifts).map(|(a, &c)| a.shifted(c)).collect();
        let shifted = ObservableSet::new(shifted).unwrap();
        let s = state(dim, seed ^ 4, mixed);
        let r1 = bound_report(&obs, &s).unwrap();
        let r2 = bound_report(&shifted, &s).unwrap();
        let pairs = [
            (r1.lhs_variance, r2.lhs_variance),
            (r1.lhs_stddev, r2.lhs_stddev),
            (r1.cb1.unwrap(), r2.cb1.unwrap()),
            (r1.tb1, r2.tb1),
            (r1.cb3.unwrap(), r2.cb3.unwrap()),
            (r1.tb2, r2.tb2),
        ];
        for (x, y) in pairs {
            prop_assert!((x - y).abs() < 1e-9, "{} vs {}", x, y);
        }
    }

    #[test]
    fn pure_and_density_paths_agree(dim in 2usize..6, n in 2usize..6, seed: u64) {
        let obs = set(dim, n, seed);
        let pure = random_pure(dim, seed ^ 5);
        let rho = QuantumState::density(pure.density_matrix()).unwrap();
        let a = bound_report(&obs, &pure).unwrap();
        let b = bound_report(&obs, &rho).unwrap();
        for (key, gap) in &a.gaps {
            prop_assert!((gap - b.gaps[key]).abs() < 1e-9, "{}", key);
        }
        prop_assert!((a.tb2 - b.tb2).abs() < 1e-9);
        prop_assert!((a.tb1 - b.tb1).abs() < 1e-9);
    }

    #[test]
    fn random_tuples_satisfy_identity_and_hlawka(dim in 1usize..5, n in 2usize..7, seed: u64) {
        let vectors = (0..n as u64).map(|i| HsVector(random_matrix(dim, seed.wrapping_add(i)))).collect();
        let t = VectorTuple::new(vectors).unwrap();
        prop_assert!(identity_residual(&t).is_ok());
        prop_assert!(hlawka_slack(&t) >= -1e-9);
    }
}
