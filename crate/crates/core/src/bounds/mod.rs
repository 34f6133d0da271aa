//! Minimum-distance lower bounds for QT codes: defining-set bound families,
//! the Jensen bound, the spectral bound and the generalized spectral bound.

mod families;
mod jensen;
mod spectral;

pub use families::{
    bch_records, consecutive_sets, exact_record, ht_records, roos_records, BoundRecord, Consecutive,
    RecordList, RoosShape, Witness,
};
pub use jensen::{jensen_bound, TieMode, MAX_TIE_ORDERS};
pub use spectral::{
    canonical_order, generalized_spectral_bound, optimize_spectral, optimize_spectral_exhaustive, spectral_bound, SpectralEvaluator, SpectralOptimum,
};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::linalg::{linear_code_distance, Distance, DEFAULT_ORACLE_BUDGET, DEFAULT_SUBSET_CAP};
use crate::polyring::factor_xm_minus_lambda;
use crate::qtstruct::{groebner_matrix, spectrum, QtCode, Spectrum};

/// Bound family. The order is used to break ties between equal records.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Bch,
    Ht,
    Roos,
    Exact,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [BoundKind::Bch, BoundKind::Ht, BoundKind::Roos, BoundKind::Exact];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Bch => "bch",
            BoundKind::Ht => "ht",
            BoundKind::Roos => "roos",
            BoundKind::Exact => "exact",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown bound family {s:?}")))
    }
}

/// A set of bound families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Families(Vec<BoundKind>);

impl Families {
    pub fn all() -> Self {
        Families(BoundKind::ALL.to_vec())
    }

    pub fn new(kinds: impl IntoIterator<Item = BoundKind>) -> Self {
        let mut v: Vec<BoundKind> = kinds.into_iter().collect();
        v.sort();
        v.dedup();
        Families(v)
    }

    pub fn contains(&self, k: BoundKind) -> bool {
        self.0.contains(&k)
    }

    pub fn kinds(&self) -> &[BoundKind] {
        &self.0
    }
}

impl Default for Families {
    fn default() -> Self {
        Self::all()
    }
}

impl FromStr for Families {
    type Err = Error;

    /// Comma-separated family names, e.g. `bch,roos`.
    fn from_str(s: &str) -> Result<Self> {
        let kinds = s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>()?;
        if kinds.is_empty() {
            return Err(Error::Parse("no bound family given".into()));
        }
        Ok(Families::new(kinds))
    }
}

/// Search limits shared by all bound computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest codeword span enumerated by the distance oracles.
    pub oracle_budget: u64,
    /// Largest number of column subsets ranked when computing `n_A`.
    pub subset_cap: u64,
    /// Largest eigenvalue set searched exhaustively over its subsets.
    pub max_subset_bits: u32,
    /// Largest number of parameter tuples visited per record family.
    pub record_cap: u64,
    /// Above `max_subset_bits`, restrict exact records to consecutive subsets
    /// (and the whole eigenvalue set) and Roos records to maximal `M`
    /// instead of failing.
    pub restricted: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            subset_cap: DEFAULT_SUBSET_CAP,
            max_subset_bits: 12,
            record_cap: 2_000_000,
            restricted: false,
        }
    }
}

/// The candidate records for the spectral optimization.
#[derive(Clone, Debug, Default)]
pub struct RecordPool {
    /// One record per set (the largest `d_P`, ties to the lesser family),
    /// sorted by set.
    pub records: Vec<BoundRecord>,
    /// Whether any family enumeration stopped at its cap.
    pub capped: bool,
}

/// Records of the requested families over the eigenvalue set `universe`.
pub fn record_pool(
    universe: ExponentSet,
    spectrum_setup: &crate::galois::RootSetup,
    families: &Families,
    caps: &Caps,
) -> Result<RecordPool> {
    let m = spectrum_setup.m();
    if universe.is_empty() {
        return Ok(RecordPool::default());
    }
    let exhaustive = universe.len() as u32 <= caps.max_subset_bits;
    if !exhaustive && !caps.restricted {
        return Err(Error::SubsetBits { size: universe.len(), cap: caps.max_subset_bits });
    }
    let mut all = Vec::new();
    let mut capped = false;
    if families.contains(BoundKind::Bch) {
        all.extend(bch_records(universe, m).records);
    }
    if families.contains(BoundKind::Ht) {
        let r = ht_records(universe, m, caps.record_cap);
        capped |= r.capped;
        all.extend(r.records);
    }
    if families.contains(BoundKind::Roos) {
        let shape = if exhaustive { RoosShape::Any } else { RoosShape::Maximal };
        let r = roos_records(universe, m, shape, caps.record_cap);
        capped |= r.capped;
        all.extend(r.records);
    }
    if families.contains(BoundKind::Exact) {
        let sets: Vec<ExponentSet> = if exhaustive {
            universe.nonempty_subsets().collect()
        } else {
            let mut v: Vec<ExponentSet> =
                consecutive_sets(m).into_iter().map(|c| c.set).filter(|s| s.is_subset(universe)).collect();
            v.push(universe);
            v
        };
        for p in sets {
            all.push(exact_record(p, spectrum_setup, caps)?);
        }
    }
    Ok(RecordPool { records: best_per_set(all), capped })
}

/// Keeps one record per set: the largest `d`, ties to the lesser family.
pub fn best_per_set(records: Vec<BoundRecord>) -> Vec<BoundRecord> {
    let mut best: HashMap<ExponentSet, BoundRecord> = HashMap::new();
    for r in records {
        match best.get(&r.set) {
            Some(old) if (old.d, std::cmp::Reverse(old.kind)) >= (r.d, std::cmp::Reverse(r.kind)) => {}
            _ => {
                best.insert(r.set, r);
            }
        }
    }
    let mut v: Vec<BoundRecord> = best.into_values().collect();
    v.sort_by_key(|a| a.set);
    v
}

/// A bound value, or the reason it could not be computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub value: Option<Distance>,
    pub error: Option<String>,
    /// True when the failure came from a search or budget cap.
    pub budget: bool,
}

impl BoundValue {
    fn from_result(r: Result<Distance>) -> Self {
        match r {
            Ok(d) => BoundValue { value: Some(d), error: None, budget: false },
            Err(e) => BoundValue { value: None, error: Some(e.to_string()), budget: e.is_budget() },
        }
    }
}

/// The optimized spectral bound with its witness tuple.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralValue {
    pub value: Option<Distance>,
    pub error: Option<String>,
    pub budget: bool,
    pub witness: Vec<BoundRecord>,
}

impl SpectralValue {
    fn from_result(r: Result<SpectralOptimum>) -> Self {
        match r {
            Ok(o) => SpectralValue { value: Some(o.value), error: None, budget: false, witness: o.witness },
            Err(e) => SpectralValue {
                value: None,
                error: Some(e.to_string()),
                budget: e.is_budget(),
                witness: Vec::new(),
            },
        }
    }
}

/// Per-bound flags: `sharp` when equal to the true distance, `best` when at
/// least every other available bound.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundFlags {
    pub jensen: bool,
    pub spec_1: bool,
    pub spec_s: bool,
}

/// The comparison of all bounds on one code.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub q: u32,
    pub m: usize,
    pub ell: usize,
    pub dimension: usize,
    pub eigenvalues: ExponentSet,
    pub s: usize,
    pub families: Vec<BoundKind>,
    pub d_true: Option<BoundValue>,
    pub d_jensen: BoundValue,
    pub d_spec_1: SpectralValue,
    pub d_spec_s: SpectralValue,
    pub pool_size: usize,
    pub records_capped: bool,
    pub sharp: BoundFlags,
    pub best: BoundFlags,
}

impl BoundReport {
    /// Whether a required field failed because of a cap or budget.
    pub fn budget_failure(&self) -> bool {
        self.d_true.as_ref().is_some_and(|d| d.budget)
            || self.d_jensen.budget
            || self.d_spec_1.budget
            || self.d_spec_s.budget
    }
}

/// Options for [`compare_all`].
#[derive(Clone, Debug)]
pub struct BoundOptions {
    pub s: usize,
    pub families: Families,
    pub caps: Caps,
    pub with_oracle: bool,
    pub ties: TieMode,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions { s: 2, families: Families::all(), caps: Caps::default(), with_oracle: true, ties: TieMode::default() }
    }
}

/// Everything derived from a code that the bounds need.
pub struct Analysis {
    pub code: QtCode,
    pub setup: crate::galois::RootSetup,
    pub factorization: crate::polyring::Factorization,
    pub groebner: crate::qtstruct::GroebnerMatrix,
    pub spectrum: Spectrum,
}

impl Analysis {
    pub fn new(code: &QtCode) -> Result<Self> {
        let setup = code.root_setup()?;
        let factorization = factor_xm_minus_lambda(&setup)?;
        let groebner = groebner_matrix(code);
        let spectrum = spectrum(&groebner, &setup)?;
        Ok(Analysis { code: code.clone(), setup, factorization, groebner, spectrum })
    }

    pub fn true_distance(&self, caps: &Caps) -> Result<Distance> {
        linear_code_distance(&self.code.scalar_generator_matrix(), caps.oracle_budget, caps.subset_cap)
    }

    pub fn jensen(&self, caps: &Caps, ties: TieMode) -> Result<Distance> {
        jensen_bound(&self.code, &self.factorization, &self.setup, caps, ties)
    }

    pub fn pool(&self, families: &Families, caps: &Caps) -> Result<RecordPool> {
        record_pool(self.spectrum.eigenvalue_set(), &self.setup, families, caps)
    }

    pub fn spectral(&self, pool: &RecordPool, s: usize, caps: &Caps) -> Result<SpectralOptimum> {
        optimize_spectral(&self.spectrum, &pool.records, s, caps.oracle_budget)
    }
}

/// Computes the true distance (optionally), the Jensen bound, the spectral
/// bound and the generalized spectral bound with `s` terms. Cap and budget
/// failures are recorded per field.
pub fn compare_all(code: &QtCode, opts: &BoundOptions) -> Result<BoundReport> {
    let a = Analysis::new(code)?;
    let caps = &opts.caps;
    let d_true = opts.with_oracle.then(|| BoundValue::from_result(a.true_distance(caps)));
    let d_jensen = BoundValue::from_result(a.jensen(caps, opts.ties));
    let pool = a.pool(&opts.families, caps);
    let (d_spec_1, d_spec_s, pool_size, records_capped) = match &pool {
        Ok(p) => (
            SpectralValue::from_result(a.spectral(p, 1, caps)),
            SpectralValue::from_result(a.spectral(p, opts.s, caps)),
            p.records.len(),
            p.capped,
        ),
        Err(e) => {
            let v = SpectralValue::from_result(Err(e.clone()));
            (v.clone(), v, 0, false)
        }
    };
    let values = [d_jensen.value, d_spec_1.value, d_spec_s.value];
    let truth = d_true.as_ref().and_then(|d| d.value);
    let flag = |f: &dyn Fn(Option<Distance>) -> bool| BoundFlags {
        jensen: f(values[0]),
        spec_1: f(values[1]),
        spec_s: f(values[2]),
    };
    let sharp = flag(&|v| v.is_some() && v == truth);
    let best = flag(&|v| v.is_some_and(|x| values.iter().flatten().all(|&o| x >= o)));
    Ok(BoundReport {
        q: code.field().order(),
        m: code.m(),
        ell: code.ell(),
        dimension: a.groebner.dimension(),
        eigenvalues: a.spectrum.eigenvalue_set(),
        s: opts.s,
        families: opts.families.kinds().to_vec(),
        d_true,
        d_jensen,
        d_spec_1,
        d_spec_s,
        pool_size,
        records_capped,
        sharp,
        best,
    })
}
