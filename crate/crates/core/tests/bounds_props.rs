//! Property tests for the structure pipeline and the bounds on random codes
//! over several fields, lengths and twists.

mod common;

use common::brute_force_distance;
use proptest::prelude::*;
use qtcodes::bounds::{
    bch_records, exact_record, ht_records, optimize_spectral, optimize_spectral_exhaustive, record_pool, roos_records, Analysis, BoundRecord,
    Caps, Families, RoosShape, TieMode,
};
use qtcodes::exponents::ExponentSet;
use qtcodes::galois::{Elem, FiniteField, RootSetup};
use qtcodes::linalg::Distance;
use qtcodes::qtstruct::{random_qtcode, QtCode};

/// `(p, e, m, lambda index)`.
const SHAPES: [(u64, u32, usize, u32); 10] = [
    (3, 1, 4, 2),
    (3, 1, 4, 1),
    (3, 1, 5, 2),
    (3, 1, 8, 2),
    (2, 1, 3, 1),
    (2, 1, 5, 1),
    (2, 1, 7, 1),
    (2, 2, 3, 2),
    (5, 1, 4, 2),
    (5, 1, 6, 4),
];

fn random_code(shape: usize, ell: usize, r: usize, seed: u64) -> QtCode {
    let (p, e, m, lam) = SHAPES[shape];
    let fd = FiniteField::new(p, e).unwrap();
    random_qtcode(&fd, m, ell, Elem::from_index(lam), r, seed).unwrap()
}

fn all_records(a: &Analysis, caps: &Caps) -> Vec<BoundRecord> {
    let u = a.spectrum.eigenvalue_set();
    let m = a.code.m();
    let mut v = bch_records(u, m).records;
    v.extend(ht_records(u, m, caps.record_cap).records);
    v.extend(roos_records(u, m, RoosShape::Any, caps.record_cap).records);
    v.extend(u.nonempty_subsets().map(|p| exact_record(p, &a.setup, caps).unwrap()));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn structure_pipeline(shape in 0usize..10, ell in 1usize..=3, r in 1usize..=3, seed in any::<u64>()) {
        let code = random_code(shape, ell, r.min(ell), seed);
        let a = Analysis::new(&code).unwrap();
        let scalar = code.scalar_generator_matrix();
        prop_assert!(a.groebner.check_conditions().is_ok());
        prop_assert!(a.groebner.scalar_generator_matrix().row_space_eq(&scalar).unwrap());
        prop_assert_eq!(a.groebner.dimension(), scalar.rank());
        prop_assert_eq!(a.spectrum.total_multiplicity(), code.length() - a.groebner.dimension());
        prop_assert_eq!(a.spectrum.parity_check().rank(), code.length() - a.groebner.dimension());
    }

    #[test]
    fn bounds_are_sound_and_monotone(shape in 0usize..10, ell in 1usize..=3, r in 1usize..=2, seed in any::<u64>()) {
        let code = random_code(shape, ell, r.min(ell), seed);
        let caps = Caps::default();
        let a = Analysis::new(&code).unwrap();
        let truth = a.true_distance(&caps).unwrap();
        if code.field().degree() == 1 && a.groebner.dimension() <= 9 {
            prop_assert_eq!(truth, brute_force_distance(&code.scalar_generator_matrix().independent_rows()));
        }
        let jensen = a.jensen(&caps, TieMode::Exhaustive).unwrap();
        prop_assert!(jensen <= truth, "jensen {} > d {}", jensen, truth);
        prop_assert!(a.jensen(&caps, TieMode::AscendingIndex).unwrap() <= jensen);
        let pool = a.pool(&Families::all(), &caps).unwrap();
        let mut prev = Distance::Finite(0);
        for s in 1..=3 {
            let v = a.spectral(&pool, s, &caps).unwrap().value;
            prop_assert!(v <= truth, "s={} bound {} > d {}", s, v, truth);
            prop_assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn best_per_set_pool_loses_nothing(shape in prop::sample::select(vec![0usize, 1, 2, 4, 5, 7, 8]),
                                       ell in 1usize..=2, seed in any::<u64>()) {
        let code = random_code(shape, ell, 1, seed);
        let caps = Caps::default();
        let a = Analysis::new(&code).unwrap();
        let raw = all_records(&a, &caps);
        let pool = record_pool(a.spectrum.eigenvalue_set(), &a.setup, &Families::all(), &caps).unwrap();
        for s in 1..=2 {
            let full = optimize_spectral(&a.spectrum, &raw, s, caps.oracle_budget).unwrap();
            let reduced = optimize_spectral(&a.spectrum, &pool.records, s, caps.oracle_budget).unwrap();
            prop_assert_eq!(full.value, reduced.value);
        }
    }

    #[test]
    fn pruned_search_matches_exhaustive(shape in prop::sample::select(vec![0usize, 1, 2, 4, 5, 7, 8, 9]),
                                        ell in 1usize..=3, r in 1usize..=2, seed in any::<u64>()) {
        let code = random_code(shape, ell, r.min(ell), seed);
        let caps = Caps::default();
        let a = Analysis::new(&code).unwrap();
        let pool = a.pool(&Families::all(), &caps).unwrap();
        if pool.records.is_empty() {
            return Ok(());
        }
        for s in 1..=3 {
            let fast = optimize_spectral(&a.spectrum, &pool.records, s, caps.oracle_budget).unwrap();
            let slow = optimize_spectral_exhaustive(&a.spectrum, &pool.records, s, caps.oracle_budget).unwrap();
            prop_assert_eq!(fast.value, slow);
            prop_assert!(!fast.witness.is_empty() && fast.witness.len() <= s);
            let again = qtcodes::bounds::generalized_spectral_bound(&a.spectrum, &fast.witness, caps.oracle_budget).unwrap();
            prop_assert_eq!(again, fast.value);
        }
    }
}

#[test]
fn records_are_sound_beyond_m4() {
    for (p, m, lam) in [(3u64, 5usize, 2u64), (3, 7, 1), (3, 8, 2), (2, 7, 1), (2, 9, 1), (5, 6, 2)] {
        let fd = FiniteField::prime(p).unwrap();
        let setup = RootSetup::new(&fd, m, fd.from_int(lam)).unwrap();
        let full = ExponentSet::full(m);
        let mut recs = bch_records(full, m).records;
        recs.extend(ht_records(full, m, 1 << 22).records);
        recs.extend(roos_records(full, m, RoosShape::Any, 1 << 22).records);
        recs.extend(roos_records(full, m, RoosShape::Maximal, 1 << 22).records);
        for rec in recs {
            let exact = exact_record(rec.set, &setup, &Caps::default()).unwrap();
            assert!(rec.d <= exact.d, "q={p} m={m}: {:?} {} {} > {}", rec.kind, rec.set, rec.d, exact.d);
        }
    }
}

#[test]
fn subset_bits_cap_and_restricted_fallback() {
    let fd = FiniteField::prime(2).unwrap();
    let code = QtCode::new(&fd, 15, 1, Elem::ONE, vec![]).unwrap();
    let a = Analysis::new(&code).unwrap();
    let tight = Caps { max_subset_bits: 4, ..Caps::default() };
    assert!(a.pool(&Families::all(), &tight).unwrap_err().is_budget());
    let restricted = Caps { restricted: true, ..tight };
    let pool = a.pool(&Families::all(), &restricted).unwrap();
    assert!(pool.records.iter().any(|r| r.set == ExponentSet::full(15) && r.d == Distance::Infinite));
}
