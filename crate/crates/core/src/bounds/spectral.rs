//! The spectral bound and its generalization to several defining-set bounds.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::galois::FiniteField;
use crate::linalg::{Distance, Matrix};
use crate::qtstruct::{Spectrum, MAX_EIGENCODE_ELL};

use super::families::BoundRecord;
use crate::linalg::min_distance_from_generator;

/// `min{d_P, d(C_P)}`; `1` when the code has no eigenvalues.
pub fn spectral_bound(spectrum: &Spectrum, set: ExponentSet, d: Distance, budget: u64) -> Result<Distance> {
    if spectrum.eigenvalue_set().is_empty() {
        return Ok(Distance::Finite(1));
    }
    let code = spectrum.eigencode(set, budget)?;
    Ok(d.min(code.distance))
}

/// Evaluates tuples of records against one spectrum, caching eigencode
/// distances by the reduced constraint matrix of the intersection.
pub struct SpectralEvaluator<'a> {
    spectrum: &'a Spectrum,
    budget: u64,
    constraints: HashMap<ExponentSet, Matrix>,
    distances: HashMap<Vec<u32>, Distance>,
}

impl<'a> SpectralEvaluator<'a> {
    pub fn new(spectrum: &'a Spectrum, budget: u64) -> Result<Self> {
        if spectrum.ell() > MAX_EIGENCODE_ELL {
            return Err(Error::InvalidSpec(format!(
                "eigencode distances need ell <= {MAX_EIGENCODE_ELL}"
            )));
        }
        Ok(SpectralEvaluator { spectrum, budget, constraints: HashMap::new(), distances: HashMap::new() })
    }

    fn q_field(&self) -> &FiniteField {
        self.spectrum.setup().q_field()
    }

    fn constraints(&mut self, set: ExponentSet) -> Result<Matrix> {
        if let Some(c) = self.constraints.get(&set) {
            return Ok(c.clone());
        }
        let c = self.spectrum.constraints(set)?;
        self.constraints.insert(set, c.clone());
        Ok(c)
    }

    /// `d` of the `F_q`-code cut out by `constraints`.
    fn distance(&mut self, constraints: &Matrix) -> Result<Distance> {
        let key: Vec<u32> =
            (0..constraints.rows()).flat_map(|r| constraints.row(r).iter().map(|e| e.index())).collect();
        if let Some(&d) = self.distances.get(&key) {
            return Ok(d);
        }
        let basis = constraints.right_kernel();
        let d = min_distance_from_generator(&basis, self.budget)?;
        self.distances.insert(key, d);
        Ok(d)
    }

    /// The generalized bound for `records`, sorted internally by descending
    /// `d_P` (ties by ascending set):
    /// `min{d_1, d_2 d(C_1), ..., d_s d(C_1 & ... & C_{s-1}), d(C_1 & ... & C_s)}`.
    pub fn evaluate(&mut self, records: &[&BoundRecord]) -> Result<Distance> {
        if records.is_empty() {
            return Err(Error::InvalidSpec("at least one record is required".into()));
        }
        let omega_bar = self.spectrum.eigenvalue_set();
        if omega_bar.is_empty() {
            return Ok(Distance::Finite(1));
        }
        if records.iter().any(|r| !r.set.is_subset(omega_bar)) {
            return Err(Error::RecordOutsideEigenvalues);
        }
        let mut sorted: Vec<&BoundRecord> = records.to_vec();
        sorted.sort_by(|a, b| b.d.cmp(&a.d).then(a.set.cmp(&b.set)));
        let ell = self.spectrum.ell();
        let mut acc = Matrix::zeros(self.q_field(), 0, ell);
        let mut prefix_distance = Distance::Finite(1);
        let mut best = Distance::Infinite;
        for r in sorted {
            best = best.min(r.d.times(prefix_distance));
            let c = self.constraints(r.set)?;
            acc = Matrix::vstack(self.q_field(), ell, &[&acc, &c])?.rref().0;
            prefix_distance = self.distance(&acc)?;
        }
        Ok(best.min(prefix_distance))
    }
}

/// The generalized spectral bound of a fixed list of records.
pub fn generalized_spectral_bound(spectrum: &Spectrum, records: &[BoundRecord], budget: u64) -> Result<Distance> {
    let refs: Vec<&BoundRecord> = records.iter().collect();
    SpectralEvaluator::new(spectrum, budget)?.evaluate(&refs)
}

/// The optimized value over repetition-free tuples of size `1..=s`.
///
/// Records are put in canonical order (descending `d`, then ascending set,
/// then family) and the witness is the lexicographically least maximizing
/// tuple of canonical positions, listed in that order.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralOptimum {
    pub value: Distance,
    pub witness: Vec<BoundRecord>,
    /// Number of tuples evaluated; pruned tuples are not counted.
    pub tuples: u64,
}

/// Sorts records into the order used by the generalized bound.
pub fn canonical_order(records: &mut [BoundRecord]) {
    records.sort_by(|a, b| b.d.cmp(&a.d).then(a.set.cmp(&b.set)).then(a.kind.cmp(&b.kind)));
}

struct Search<'e, 'a> {
    eval: &'e mut SpectralEvaluator<'a>,
    pool: &'e [BoundRecord],
    s: usize,
    best: Option<(Distance, Vec<usize>)>,
    path: Vec<usize>,
    tuples: u64,
}

impl Search<'_, '_> {
    /// Extends the current prefix, whose terms have minimum `prefix` and whose
    /// intersection has constraints `acc` and distance `d_prev`.
    ///
    /// Later terms only lower the value, and a later candidate `j` gives a
    /// term at most that of an earlier one, so once the prefix value cannot
    /// beat the incumbent the remaining siblings are skipped. Ties are not
    /// explored because later tuples are lexicographically greater.
    fn extend(&mut self, start: usize, acc: &Matrix, prefix: Distance, d_prev: Distance) -> Result<()> {
        let ell = self.eval.spectrum.ell();
        for j in start..self.pool.len() {
            let bound = prefix.min(self.pool[j].d.times(d_prev));
            if self.best.as_ref().is_some_and(|(v, _)| bound <= *v) {
                break;
            }
            let c = self.eval.constraints(self.pool[j].set)?;
            let next = Matrix::vstack(self.eval.q_field(), ell, &[acc, &c])?.rref().0;
            let d_next = self.eval.distance(&next)?;
            let value = bound.min(d_next);
            self.tuples += 1;
            self.path.push(j);
            if self.best.as_ref().is_none_or(|(v, _)| value > *v) {
                self.best = Some((value, self.path.clone()));
            }
            if self.path.len() < self.s {
                self.extend(j + 1, &next, bound, d_next)?;
            }
            self.path.pop();
        }
        Ok(())
    }
}

/// Maximizes the generalized bound over all tuples drawn from `pool`.
pub fn optimize_spectral(spectrum: &Spectrum, pool: &[BoundRecord], s: usize, budget: u64) -> Result<SpectralOptimum> {
    if s == 0 {
        return Err(Error::InvalidSpec("s must be at least 1".into()));
    }
    let omega_bar = spectrum.eigenvalue_set();
    if omega_bar.is_empty() {
        return Ok(SpectralOptimum { value: Distance::Finite(1), witness: Vec::new(), tuples: 0 });
    }
    if pool.iter().any(|r| !r.set.is_subset(omega_bar)) {
        return Err(Error::RecordOutsideEigenvalues);
    }
    let mut sorted = pool.to_vec();
    canonical_order(&mut sorted);
    let mut eval = SpectralEvaluator::new(spectrum, budget)?;
    let empty = Matrix::zeros(eval.q_field(), 0, spectrum.ell());
    let mut search = Search { eval: &mut eval, pool: &sorted, s, best: None, path: Vec::new(), tuples: 0 };
    search.extend(0, &empty, Distance::Infinite, Distance::Finite(1))?;
    let tuples = search.tuples;
    match search.best {
        Some((value, idx)) => {
            Ok(SpectralOptimum { value, witness: idx.iter().map(|&i| sorted[i].clone()).collect(), tuples })
        }
        None => Err(Error::InvalidSpec("empty record pool".into())),
    }
}

/// Exhaustive reference for [`optimize_spectral`]: every combination is
/// evaluated independently.
pub fn optimize_spectral_exhaustive(
    spectrum: &Spectrum,
    pool: &[BoundRecord],
    s: usize,
    budget: u64,
) -> Result<Distance> {
    if s == 0 {
        return Err(Error::InvalidSpec("s must be at least 1".into()));
    }
    let mut eval = SpectralEvaluator::new(spectrum, budget)?;
    let mut best: Option<Distance> = None;
    for size in 1..=s.min(pool.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let recs: Vec<&BoundRecord> = idx.iter().map(|&i| &pool[i]).collect();
            let v = eval.evaluate(&recs)?;
            best = Some(best.map_or(v, |b| b.max(v)));
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    best.ok_or_else(|| Error::InvalidSpec("empty record pool".into()))
}

/// Advances `idx` to the next `k`-combination of `0..n` in lex order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
