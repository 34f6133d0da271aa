//! The Jensen bound from the concatenated structure of a QT code.

use crate::error::{Error, Result};
use crate::galois::RootSetup;
use crate::linalg::{linear_code_distance, Distance};
use crate::polyring::Factorization;
use crate::qtstruct::{constituents, QtCode};

use super::Caps;

/// How ties between constituents of equal distance are ordered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieMode {
    /// Ascending factor index.
    #[default]
    AscendingIndex,
    /// Every tie order is evaluated and the largest bound is returned.
    Exhaustive,
}

/// Cap on the number of tie orders tried in [`TieMode::Exhaustive`].
pub const MAX_TIE_ORDERS: u64 = 40_320;

/// `min_r d(C_{i_r}) * d(<theta_{i_1}> + ... + <theta_{i_r}>)` over the nonzero
/// constituents sorted by ascending distance; infinity for the zero code.
pub fn jensen_bound(
    code: &QtCode,
    fact: &Factorization,
    setup: &RootSetup,
    caps: &Caps,
    mode: TieMode,
) -> Result<Distance> {
    let mut nonzero = Vec::new();
    for c in constituents(code, fact, setup) {
        if !c.is_zero() {
            let d = c.distance(setup, caps.oracle_budget)?;
            nonzero.push((d, c.index));
        }
    }
    if nonzero.is_empty() {
        return Ok(Distance::Infinite);
    }
    nonzero.sort();
    match mode {
        TieMode::AscendingIndex => evaluate_order(&nonzero, code, fact, caps),
        TieMode::Exhaustive => {
            let orders: u64 = tie_groups(&nonzero).iter().map(|g| factorial(g.len() as u64)).product();
            if orders > MAX_TIE_ORDERS {
                return Err(Error::SubsetCap { cap: MAX_TIE_ORDERS });
            }
            let mut best = evaluate_order(&nonzero, code, fact, caps)?;
            let mut order = nonzero.clone();
            while next_tie_permutation(&mut order) {
                best = best.max(evaluate_order(&order, code, fact, caps)?);
            }
            Ok(best)
        }
    }
}

fn evaluate_order(
    order: &[(Distance, usize)],
    code: &QtCode,
    fact: &Factorization,
    caps: &Caps,
) -> Result<Distance> {
    let ring = code.ring();
    let mut chosen = vec![false; fact.len()];
    let mut best = Distance::Infinite;
    for &(d, i) in order {
        chosen[i] = true;
        let generator = fact.product((0..fact.len()).filter(|&j| !chosen[j]));
        let inner = ring.shift_matrix(&generator);
        let d_inner = linear_code_distance(&inner, caps.oracle_budget, caps.subset_cap)?;
        best = best.min(d.times(d_inner));
    }
    Ok(best)
}

fn tie_groups(order: &[(Distance, usize)]) -> Vec<&[(Distance, usize)]> {
    order.chunk_by(|a, b| a.0 == b.0).collect()
}

fn factorial(n: u64) -> u64 {
    (1..=n).fold(1u64, |a, b| a.saturating_mul(b))
}

/// Advances to the next order that permutes indices only within groups of
/// equal distance; returns false after the last one.
fn next_tie_permutation(order: &mut [(Distance, usize)]) -> bool {
    let mut bounds = Vec::new();
    let mut start = 0;
    for g in order.chunk_by(|a, b| a.0 == b.0) {
        bounds.push((start, start + g.len()));
        start += g.len();
    }
    for &(a, b) in bounds.iter().rev() {
        if next_permutation(&mut order[a..b]) {
            return true;
        }
        // Wrapped around to sorted; carry into the previous group.
    }
    false
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tie_permutations_count() {
        let mut order = vec![
            (Distance::Finite(1), 0),
            (Distance::Finite(2), 1),
            (Distance::Finite(2), 2),
            (Distance::Finite(2), 3),
            (Distance::Finite(3), 4),
        ];
        let mut count = 1;
        while next_tie_permutation(&mut order) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(order[1..4].iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}
