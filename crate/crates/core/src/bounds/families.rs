//! Defining-set bound families: BCH, Hartmann-Tzeng, Roos and exact.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::exponents::ExponentSet;
use crate::galois::{gcd, RootSetup};
use crate::linalg::{parity_code_distance, Distance, Matrix};

use super::{BoundKind, Caps};

/// Parameters certifying a record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Witness {
    /// `{e + z n : 0 <= z < delta - 1}`.
    Bch { e: usize, n: usize, delta: u32 },
    /// `{e + z n1 + y n2 : 0 <= z <= delta - 2, 0 <= y <= s}`.
    Ht { e: usize, n1: usize, n2: usize, delta: u32, s: u32 },
    /// `MN = {a + b : a in M, b in N}` with `N` and `M'` consecutive, `M` in `M'`.
    Roos { m: ExponentSet, n: ExponentSet, m_prime: ExponentSet },
    Exact,
}

/// A defining-set bound `(P, d_P)`: the constacyclic code over the splitting
/// field with zero set `{alpha xi^k : k in P}` has distance at least `d_P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRecord {
    pub kind: BoundKind,
    pub set: ExponentSet,
    pub d: Distance,
    pub witness: Witness,
}

/// Records of one family, deduplicated by set.
#[derive(Clone, Debug, Default)]
pub struct RecordList {
    pub records: Vec<BoundRecord>,
    /// Whether the parameter enumeration stopped at its cap.
    pub capped: bool,
}

/// Keeps, per set, the record with the largest `d` (first found on ties).
#[derive(Default)]
struct Dedup {
    best: HashMap<ExponentSet, BoundRecord>,
}

impl Dedup {
    fn offer(&mut self, rec: BoundRecord) {
        match self.best.get(&rec.set) {
            Some(old) if old.d >= rec.d => {}
            _ => {
                self.best.insert(rec.set, rec);
            }
        }
    }

    fn finish(self, capped: bool) -> RecordList {
        let mut records: Vec<BoundRecord> = self.best.into_values().collect();
        records.sort_by_key(|a| a.set);
        RecordList { records, capped }
    }
}

/// A consecutive set `{e + z n mod m : z < len}` with `gcd(m, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Consecutive {
    pub set: ExponentSet,
    pub e: usize,
    pub n: usize,
}

fn steps(m: usize) -> Vec<usize> {
    if m == 1 {
        return vec![1];
    }
    (1..m).filter(|&n| gcd(m as u64, n as u64) == 1).collect()
}

fn progression(e: usize, n: usize, len: usize, m: usize) -> ExponentSet {
    (0..len).map(|z| (e + z * n) % m).collect()
}

/// All distinct consecutive subsets of `{0..m-1}`, each with its first
/// parameter pair in `(len, e, n)` order.
pub fn consecutive_sets(m: usize) -> Vec<Consecutive> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for len in 1..=m {
        for e in 0..m {
            for &n in &steps(m) {
                let set = progression(e, n, len, m);
                if seen.insert(set, ()).is_none() {
                    out.push(Consecutive { set, e, n });
                }
            }
        }
    }
    out
}

/// BCH records `(E, |E| + 1)` for every consecutive `E` inside `universe`.
pub fn bch_records(universe: ExponentSet, m: usize) -> RecordList {
    let mut dd = Dedup::default();
    for c in consecutive_sets(m) {
        if c.set.is_subset(universe) {
            let delta = c.set.len() as u32 + 1;
            dd.offer(BoundRecord {
                kind: BoundKind::Bch,
                set: c.set,
                d: Distance::Finite(delta),
                witness: Witness::Bch { e: c.e, n: c.n, delta },
            });
        }
    }
    dd.finish(false)
}

/// HT records `(D, delta + s)` with `gcd(m, n1) = 1`, `gcd(m, n2) < delta`,
/// `s >= 1`, restricted to grids whose `(delta - 1)(s + 1)` points are distinct.
pub fn ht_records(universe: ExponentSet, m: usize, cap: u64) -> RecordList {
    let mut dd = Dedup::default();
    let mut visited: u64 = 0;
    let mut capped = false;
    'outer: for e in universe.iter() {
        for &n1 in &steps(m) {
            for n2 in 1..m {
                let g = gcd(m as u64, n2 as u64) as usize;
                for delta in 2..=m as u32 + 1 {
                    if g >= delta as usize {
                        continue;
                    }
                    let cols = delta as usize - 1;
                    for s in 1..m as u32 {
                        let size = cols * (s as usize + 1);
                        if size > m {
                            break;
                        }
                        visited += 1;
                        if visited > cap {
                            capped = true;
                            break 'outer;
                        }
                        let set: ExponentSet = (0..cols)
                            .flat_map(|z| (0..=s as usize).map(move |y| (e + z * n1 + y * n2) % m))
                            .collect();
                        if set.len() == size && set.is_subset(universe) {
                            dd.offer(BoundRecord {
                                kind: BoundKind::Ht,
                                set,
                                d: Distance::Finite(delta + s),
                                witness: Witness::Ht { e, n1, n2, delta, s },
                            });
                        }
                    }
                }
            }
        }
    }
    dd.finish(capped)
}

/// Which choices of `M` the Roos enumeration admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoosShape {
    /// Any `M` inside a consecutive `M'` with `|M'| <= |M| + |N| - 1`.
    Any,
    /// `M = M' = {a}`.
    SingletonM,
    /// `M = M'` consecutive.
    MEqualsMPrime,
    /// `M` is the largest admissible subset of each `M'`, so only one `M`
    /// is tried per pair `(N, M')`.
    Maximal,
}

fn sumset(a: ExponentSet, b: ExponentSet, m: usize) -> ExponentSet {
    a.iter().flat_map(|x| b.iter().map(move |y| (x + y) % m)).collect()
}

/// Roos records `(MN, |M| + |N|)` with consecutive `N` (so `d_N = |N| + 1`)
/// and `MN` inside `universe`.
pub fn roos_records(universe: ExponentSet, m: usize, shape: RoosShape, cap: u64) -> RecordList {
    let mut dd = Dedup::default();
    let cons = consecutive_sets(m);
    let mut visited: u64 = 0;
    let mut capped = false;
    'outer: for n in &cons {
        // Shifts a with N + a inside the universe.
        let shifts: ExponentSet = (0..m).filter(|&a| n.set.translate(a, m).is_subset(universe)).collect();
        if shifts.is_empty() {
            continue;
        }
        let nl = n.set.len();
        for mp in &cons {
            let cand = mp.set.intersection(shifts);
            let lo = (mp.set.len() + 1).saturating_sub(nl).max(1);
            if cand.len() < lo {
                continue;
            }
            let choices: Box<dyn Iterator<Item = ExponentSet>> = match shape {
                RoosShape::SingletonM if mp.set.len() == 1 => Box::new(std::iter::once(mp.set)),
                RoosShape::SingletonM => continue,
                RoosShape::MEqualsMPrime if cand == mp.set => Box::new(std::iter::once(mp.set)),
                RoosShape::MEqualsMPrime => continue,
                RoosShape::Maximal => Box::new(std::iter::once(cand)),
                RoosShape::Any => Box::new(cand.nonempty_subsets().filter(move |s| s.len() >= lo)),
            };
            for mset in choices {
                visited += 1;
                if visited > cap {
                    capped = true;
                    break 'outer;
                }
                let set = sumset(mset, n.set, m);
                debug_assert!(set.is_subset(universe));
                dd.offer(BoundRecord {
                    kind: BoundKind::Roos,
                    set,
                    d: Distance::Finite((mset.len() + nl) as u32),
                    witness: Witness::Roos { m: mset, n: n.set, m_prime: mp.set },
                });
            }
        }
    }
    dd.finish(capped)
}

/// `(P, d(D_P))`, where `D_P` has parity-check rows `(w^j)_{j<m}` for `w` in `P`.
pub fn exact_record(set: ExponentSet, setup: &RootSetup, caps: &Caps) -> Result<BoundRecord> {
    let big = setup.field();
    let m = setup.m();
    let rows = set
        .iter()
        .map(|k| (0..m as u64).map(|j| big.pow(setup.root(k), j)).collect())
        .collect();
    let h = Matrix::from_rows(big, m, rows)?;
    let d = parity_code_distance(&h, caps.oracle_budget, caps.subset_cap)?;
    Ok(BoundRecord { kind: BoundKind::Exact, set, d, witness: Witness::Exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FiniteField;

    fn set(v: &[usize]) -> ExponentSet {
        v.iter().copied().collect()
    }

    fn setup() -> RootSetup {
        let f = FiniteField::prime(3).unwrap();
        RootSetup::new(&f, 4, f.from_int(2)).unwrap()
    }

    #[test]
    fn consecutive_sets_m4() {
        let cs = consecutive_sets(4);
        // 4 singletons, 4 pairs {k,k+1}, 4 triples, the full set.
        assert_eq!(cs.len(), 13);
        assert!(!cs.iter().any(|c| c.set == set(&[0, 2])));
    }

    #[test]
    fn bch_examples() {
        let r = bch_records(set(&[2]), 4);
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].d, Distance::Finite(2));
        let r = bch_records(set(&[0, 1, 2]), 4);
        assert!(r.records.iter().any(|x| x.set == set(&[0, 1, 2]) && x.d == Distance::Finite(4)));
        assert!(bch_records(ExponentSet::EMPTY, 4).records.is_empty());
    }

    #[test]
    fn ht_and_roos_empty() {
        assert!(ht_records(ExponentSet::EMPTY, 4, 1000).records.is_empty());
        assert!(roos_records(ExponentSet::EMPTY, 4, RoosShape::Any, 1000).records.is_empty());
    }

    #[test]
    fn ht_grid_on_full_universe() {
        let r = ht_records(ExponentSet::full(4), 4, 1 << 20);
        // {0,1} + {0,1}: delta = 2 needs gcd(4, n2) < 2, so n2 = 1 gives the grid {0,1}.
        assert!(r.records.iter().any(|x| x.set == set(&[0, 1]) && x.d == Distance::Finite(3)));
        assert!(!r.capped);
    }

    #[test]
    fn exact_conventions() {
        let s = setup();
        assert_eq!(exact_record(ExponentSet::EMPTY, &s, &Caps::default()).unwrap().d, Distance::Finite(1));
        assert_eq!(exact_record(ExponentSet::full(4), &s, &Caps::default()).unwrap().d, Distance::Infinite);
        for k in 0..4 {
            let p: ExponentSet = (0..4).filter(|&j| j != k).collect();
            assert_eq!(exact_record(p, &s, &Caps::default()).unwrap().d, Distance::Finite(4));
        }
    }

    #[test]
    fn records_are_sound_on_m4() {
        let s = setup();
        for u in ExponentSet::full(4).nonempty_subsets() {
            let mut all = bch_records(u, 4).records;
            all.extend(ht_records(u, 4, 1 << 20).records);
            all.extend(roos_records(u, 4, RoosShape::Any, 1 << 20).records);
            for r in all {
                assert!(r.set.is_subset(u));
                let exact = exact_record(r.set, &s, &Caps::default()).unwrap();
                assert!(r.d <= exact.d, "{r:?} exceeds {exact:?}");
            }
        }
    }
}
