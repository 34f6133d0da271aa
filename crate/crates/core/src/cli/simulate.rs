//! Seeded random-code simulation comparing the bounds against the true distance.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{Analysis, Caps, Families};
use crate::error::{Error, Result};
use crate::galois::FiniteField;
use crate::linalg::Distance;
use crate::qtstruct::random_qtcode;

/// Simulation parameters.
#[derive(Clone, Debug)]
pub struct SimulationConfig {
    pub q: u64,
    pub m: usize,
    /// Integer encoding of `lambda` in `F_q`.
    pub lambda: u64,
    pub ell_range: RangeInclusive<usize>,
    /// Generator counts; values above `ell` are skipped.
    pub r_range: RangeInclusive<usize>,
    pub count: usize,
    pub seed: u64,
    /// Term counts of the generalized bound, besides `s = 1`.
    pub s_values: Vec<usize>,
    pub families: Families,
    pub caps: Caps,
    /// Redraws per row while the code is zero or the full space.
    pub max_attempts: u64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            q: 3,
            m: 4,
            lambda: 2,
            ell_range: 2..=4,
            r_range: 1..=4,
            count: 135,
            seed: 0,
            s_values: vec![2, 3, 4],
            families: Families::all(),
            caps: Caps::default(),
            max_attempts: 1000,
        }
    }
}

impl SimulationConfig {
    /// The `(ell, r)` pairs cycled through by the rows.
    pub fn tuples(&self) -> Vec<(usize, usize)> {
        self.ell_range
            .clone()
            .flat_map(|ell| self.r_range.clone().filter(move |&r| r >= 1 && r <= ell).map(move |r| (ell, r)))
            .collect()
    }

    /// Column labels of the compared bounds.
    pub fn bound_labels(&self) -> Vec<String> {
        let mut v = vec!["jensen".to_string(), "spec1".to_string()];
        v.extend(self.s_values.iter().map(|s| format!("spec_s{s}")));
        v
    }
}

/// One simulated code. Bound values follow [`SimulationConfig::bound_labels`];
/// `None` marks a budget or cap failure.
#[derive(Clone, Debug, Serialize)]
pub struct SimulationRow {
    pub q: u64,
    pub m: usize,
    pub ell: usize,
    pub r: usize,
    pub seed: u64,
    pub dim: usize,
    pub d_true: Option<Distance>,
    pub bounds: Vec<Option<Distance>>,
    pub sharp: Vec<bool>,
    pub best: Vec<bool>,
}

impl SimulationRow {
    /// Neither the zero code nor the full space.
    pub fn nontrivial(&self) -> bool {
        self.dim > 0 && self.dim < self.m * self.ell
    }
}

fn flags(d_true: Option<Distance>, bounds: &[Option<Distance>]) -> (Vec<bool>, Vec<bool>) {
    let sharp = bounds.iter().map(|b| b.is_some() && *b == d_true).collect();
    let best = bounds
        .iter()
        .map(|b| b.is_some_and(|x| bounds.iter().flatten().all(|&o| x >= o)))
        .collect();
    (sharp, best)
}

fn row_seed(base: u64, idx: usize, attempt: u64) -> u64 {
    base.wrapping_add((idx as u64).wrapping_mul(1000)).wrapping_add(attempt)
}

fn simulate_row(cfg: &SimulationConfig, field: &FiniteField, idx: usize, ell: usize, r: usize) -> Result<SimulationRow> {
    let lambda = field.from_int(cfg.lambda);
    let mut chosen = None;
    for attempt in 0..cfg.max_attempts.max(1) {
        let seed = row_seed(cfg.seed, idx, attempt);
        let code = random_qtcode(field, cfg.m, ell, lambda, r, seed)?;
        let a = Analysis::new(&code)?;
        let dim = a.groebner.dimension();
        let keep = dim > 0 && dim < cfg.m * ell;
        chosen = Some((seed, a));
        if keep {
            break;
        }
    }
    let (seed, a) = chosen.expect("at least one attempt");
    let caps = &cfg.caps;
    let d_true = a.true_distance(caps).ok();
    let mut bounds = vec![a.jensen(caps, Default::default()).ok()];
    let pool = a.pool(&cfg.families, caps).ok();
    for s in std::iter::once(1).chain(cfg.s_values.iter().copied()) {
        bounds.push(pool.as_ref().and_then(|p| a.spectral(p, s, caps).ok()).map(|o| o.value));
    }
    let (sharp, best) = flags(d_true, &bounds);
    Ok(SimulationRow {
        q: cfg.q,
        m: cfg.m,
        ell,
        r,
        seed,
        dim: a.groebner.dimension(),
        d_true,
        bounds,
        sharp,
        best,
    })
}

/// Runs the simulation. Rows are computed in parallel and returned in index order.
pub fn simulate(cfg: &SimulationConfig) -> Result<Vec<SimulationRow>> {
    let (p, e) = super::codefile::prime_power(cfg.q).ok_or_else(|| Error::InvalidSpec(format!("q = {} is not a prime power", cfg.q)))?;
    let field = FiniteField::new(p, e)?;
    if cfg.lambda == 0 || cfg.lambda >= cfg.q {
        return Err(Error::InvalidSpec(format!("lambda must encode a nonzero element of F_{}", cfg.q)));
    }
    if cfg.s_values.contains(&0) {
        return Err(Error::InvalidSpec("s must be at least 1".into()));
    }
    let tuples = cfg.tuples();
    if tuples.is_empty() && cfg.count > 0 {
        return Err(Error::InvalidSpec("no (ell, r) pair in the given ranges".into()));
    }
    (0..cfg.count)
        .into_par_iter()
        .map(|idx| {
            let (ell, r) = tuples[idx % tuples.len()];
            simulate_row(cfg, &field, idx, ell, r)
        })
        .collect()
}

fn cell(d: Option<Distance>) -> String {
    d.map(|d| d.to_string()).unwrap_or_default()
}

/// Writes the rows as CSV with a fixed column order.
pub fn write_csv<W: Write>(cfg: &SimulationConfig, rows: &[SimulationRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Internal(format!("csv output: {e}"));
    let labels = cfg.bound_labels();
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["q", "m", "ell", "r", "seed", "dim", "d_true"].map(String::from).to_vec();
    header.extend(labels.iter().map(|l| format!("d_{l}")));
    header.extend(labels.iter().map(|l| format!("sharp_{l}")));
    header.extend(labels.iter().map(|l| format!("best_{l}")));
    w.write_record(&header).map_err(io)?;
    for row in rows {
        let mut rec =
            vec![row.q.to_string(), row.m.to_string(), row.ell.to_string(), row.r.to_string(), row.seed.to_string()];
        rec.push(row.dim.to_string());
        rec.push(cell(row.d_true));
        rec.extend(row.bounds.iter().map(|&b| cell(b)));
        rec.extend(row.sharp.iter().map(|b| b.to_string()));
        rec.extend(row.best.iter().map(|b| b.to_string()));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Internal(format!("csv output: {e}")))?;
    Ok(())
}

/// Sharp and best-performing tallies over the nontrivial rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationSummary {
    pub rows: usize,
    pub nontrivial: usize,
    pub labels: Vec<String>,
    pub sharp: Vec<u64>,
    pub best: Vec<u64>,
}

pub fn summarize(cfg: &SimulationConfig, rows: &[SimulationRow]) -> SimulationSummary {
    let labels = cfg.bound_labels();
    let mut sharp = vec![0u64; labels.len()];
    let mut best = vec![0u64; labels.len()];
    let mut nontrivial = 0;
    for row in rows.iter().filter(|r| r.nontrivial()) {
        nontrivial += 1;
        for i in 0..labels.len() {
            sharp[i] += u64::from(row.sharp[i]);
            best[i] += u64::from(row.best[i]);
        }
    }
    SimulationSummary { rows: rows.len(), nontrivial, labels, sharp, best }
}

impl fmt::Display for SimulationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<16}", "")?;
        for l in &self.labels {
            write!(f, "{l:>10}")?;
        }
        writeln!(f)?;
        for (name, counts) in [("sharp", &self.sharp), ("best-performing", &self.best)] {
            write!(f, "{name:<16}")?;
            for c in counts {
                write!(f, "{c:>10}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "nontrivial codes: {} of {}", self.nontrivial, self.rows)
    }
}
