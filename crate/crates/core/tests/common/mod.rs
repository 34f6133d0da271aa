//! Shared fixtures and independent brute-force oracles for prime fields.
#![allow(dead_code)]

use qtcodes::galois::{Elem, FiniteField};
use qtcodes::linalg::{Distance, Matrix};
use qtcodes::polyring::Polynomial;
use qtcodes::qtstruct::QtCode;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn f(p: u64) -> FiniteField {
    FiniteField::prime(p).unwrap()
}

pub fn poly(field: &FiniteField, c: &[u64]) -> Polynomial {
    Polynomial::from_ints(field, c)
}

pub fn example_one() -> QtCode {
    let f3 = f(3);
    let g = vec![vec![poly(&f3, &[1, 2, 0, 2]), poly(&f3, &[2, 1, 0, 1])]];
    QtCode::new(&f3, 4, 2, f3.from_int(2), g).unwrap()
}

pub fn example_two() -> QtCode {
    let f3 = f(3);
    let g = vec![
        vec![poly(&f3, &[1, 0, 1, 1]), poly(&f3, &[1, 1, 2]), poly(&f3, &[0, 1, 2, 1]), poly(&f3, &[2, 1, 2, 2])],
        vec![poly(&f3, &[1, 2, 0, 1]), poly(&f3, &[2, 1, 1, 2]), poly(&f3, &[1, 1, 1]), poly(&f3, &[0, 2, 2, 2])],
    ];
    QtCode::new(&f3, 4, 4, f3.from_int(2), g).unwrap()
}

fn to_ints(m: &Matrix) -> Vec<Vec<u64>> {
    assert_eq!(m.field().degree(), 1, "oracles work over prime fields");
    (0..m.rows()).map(|r| m.row(r).iter().map(|e| e.index() as u64).collect()).collect()
}

/// Rank modulo a prime by plain Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][c].is_multiple_of(p)) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| a[rank][c] * x % p == 1).unwrap();
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let factor = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] + p * p - factor * a[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Minimum weight over all nonzero combinations of the rows (every message,
/// no projective reduction, no row reduction).
pub fn brute_force_distance(g: &Matrix) -> Distance {
    let p = g.field().characteristic() as u64;
    let rows = to_ints(g);
    let n = g.cols();
    let k = rows.len();
    let mut best: Option<u32> = None;
    let mut msg = vec![0u64; k];
    loop {
        let mut i = 0;
        while i < k {
            msg[i] += 1;
            if msg[i] < p {
                break;
            }
            msg[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        let mut w = 0;
        for c in 0..n {
            let s: u64 = (0..k).map(|r| msg[r] * rows[r][c]).sum::<u64>() % p;
            w += u32::from(s != 0);
        }
        if w > 0 {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    best.map_or(Distance::Infinite, Distance::Finite)
}

/// Largest `j` such that every `j` columns are independent, by direct subset scan.
pub fn brute_n_a(a: &Matrix) -> usize {
    let p = a.field().characteristic() as u64;
    let rows = to_ints(a);
    let n = a.cols();
    let mut best = 0;
    'size: for j in 1..=n {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != j {
                continue;
            }
            let sub: Vec<Vec<u64>> =
                rows.iter().map(|r| (0..n).filter(|c| mask >> c & 1 == 1).map(|c| r[c]).collect()).collect();
            if rank_mod_p(&sub, p) < j {
                break 'size;
            }
        }
        best = j;
    }
    best
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: &FiniteField, rows: usize, cols: usize) -> Matrix {
    let p = field.order();
    let data = (0..rows).map(|_| (0..cols).map(|_| Elem::from_index(rng.random_range(0..p))).collect()).collect();
    Matrix::from_rows(field, cols, data).unwrap()
}
