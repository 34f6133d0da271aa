//! Subsets of `{0, ..., m-1}` naming subsets `{alpha * xi^k}` of the roots of
//! `x^m - lambda`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// Largest block length representable by an [`ExponentSet`].
pub const MAX_M: usize = 64;

/// A set of exponents `k < m <= 64`, stored as a bitmask.
///
/// Ordering is lexicographic on the ascending element lists, so `{0,1} <
/// {0,1,2} < {0,2} < {1}`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExponentSet(u64);

impl ExponentSet {
    pub const EMPTY: ExponentSet = ExponentSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ExponentSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, ..., m-1}`.
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            ExponentSet(u64::MAX)
        } else {
            ExponentSet((1u64 << m) - 1)
        }
    }

    pub fn contains(self, k: usize) -> bool {
        k < 64 && self.0 >> k & 1 == 1
    }

    pub fn insert(&mut self, k: usize) {
        debug_assert!(k < MAX_M);
        self.0 |= 1 << k;
    }

    pub fn with(mut self, k: usize) -> Self {
        self.insert(k);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ExponentSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ExponentSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `{k + shift mod m}`.
    pub fn translate(self, shift: usize, m: usize) -> Self {
        self.iter().map(|k| (k + shift) % m).collect()
    }

    /// All nonempty subsets, in increasing bitmask order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = ExponentSet> {
        let full = self.0;
        // Enumerate submasks upward: next = (cur - full) & full.
        let mut cur: u64 = 0;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            cur = cur.wrapping_sub(full) & full;
            if cur == full {
                done = true;
            }
            Some(ExponentSet(cur))
        })
    }
}

impl FromIterator<usize> for ExponentSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ExponentSet::EMPTY;
        for k in iter {
            s.insert(k);
        }
        s
    }
}

impl Ord for ExponentSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ExponentSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ExponentSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
