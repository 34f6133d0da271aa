//! Property tests for matrices, column independence numbers and distance oracles.

mod common;

use common::{brute_force_distance, brute_n_a, f, random_matrix};
use proptest::prelude::*;
use qtcodes::linalg::{
    column_independence_number, kronecker, linear_code_distance, min_distance_from_generator,
    min_distance_from_parity, Matrix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, p: u64, rows: usize, cols: usize) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix(&mut rng, &f(p), rows, cols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parity_and_generator_routes_agree(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3]),
                                        rows in 1usize..=5, cols in 1usize..=5) {
        let h = instance(seed, p, rows, cols);
        let g = h.right_kernel();
        let via_parity = min_distance_from_parity(&h, 1 << 20).unwrap();
        prop_assert_eq!(via_parity, min_distance_from_generator(&g, 1 << 20).unwrap());
        prop_assert_eq!(via_parity, brute_force_distance(&g));
        prop_assert_eq!(h.rank() + g.rows(), cols);
        prop_assert!(h.mul(&g.transpose()).unwrap().is_zero());
        prop_assert_eq!(column_independence_number(&h, 1 << 20).unwrap(), brute_n_a(&h));
    }

    #[test]
    fn both_distance_routes_agree(seed in any::<u64>(), rows in 1usize..=6, cols in 1usize..=8) {
        let g = instance(seed, 3, rows, cols);
        let enumerated = linear_code_distance(&g, 1 << 20, 1 << 20).unwrap();
        // A budget of 1 forces the parity-check route.
        let via_parity = linear_code_distance(&g, 1, 1 << 20).unwrap();
        prop_assert_eq!(enumerated, via_parity);
    }

    #[test]
    fn rref_preserves_row_space(seed in any::<u64>(), rows in 1usize..=5, cols in 1usize..=6) {
        let a = instance(seed, 3, rows, cols);
        let (r, pivots) = a.rref();
        prop_assert_eq!(r.rows(), pivots.len());
        prop_assert!(a.row_space_eq(&r).unwrap());
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn kronecker_rank_is_multiplicative(seed in any::<u64>(), ra in 1usize..=3, ca in 1usize..=3,
                                       rb in 1usize..=3, cb in 1usize..=3) {
        let a = instance(seed, 3, ra, ca);
        let b = instance(seed ^ 0x9e37, 3, rb, cb);
        let k = kronecker(&a, &b).unwrap();
        prop_assert_eq!((k.rows(), k.cols()), (ra * rb, ca * cb));
        prop_assert_eq!(k.rank(), a.rank() * b.rank());
    }
}

#[test]
fn subset_cap_is_reported() {
    let h = Matrix::identity(&f(2), 20);
    assert!(column_independence_number(&h, 100).unwrap_err().is_budget());
}
