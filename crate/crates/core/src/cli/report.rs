//! The structural analysis report of a code.

use serde::Serialize;

use crate::bounds::Analysis;
use crate::error::Result;
use crate::exponents::ExponentSet;
use crate::linalg::Distance;

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueReport {
    pub k: usize,
    pub beta: String,
    pub multiplicity: usize,
    pub eigenspace_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigencodeReport {
    pub set: ExponentSet,
    pub dimension: Option<usize>,
    pub distance: Option<Distance>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub q: u32,
    pub m: usize,
    pub ell: usize,
    pub lambda: String,
    pub r: u64,
    pub splitting_field_order: u32,
    pub alpha: String,
    pub xi: String,
    pub groebner: Vec<Vec<String>>,
    pub diagonal: Vec<String>,
    pub determinant: String,
    pub dimension: usize,
    pub eigenvalue_set: ExponentSet,
    pub eigenvalues: Vec<EigenvalueReport>,
    pub eigencodes: Vec<EigencodeReport>,
}

/// Builds the report; eigencodes are listed for `sets`, or for the whole
/// eigenvalue set and each single eigenvalue when `sets` is empty.
pub fn analyze(a: &Analysis, sets: &[ExponentSet], budget: u64) -> Result<AnalysisReport> {
    let q_field = a.code.field();
    let big = a.setup.field();
    let omega_bar = a.spectrum.eigenvalue_set();
    let sets: Vec<ExponentSet> = if sets.is_empty() {
        let mut v: Vec<ExponentSet> = omega_bar.iter().map(|k| ExponentSet::EMPTY.with(k)).collect();
        if omega_bar.len() > 1 {
            v.push(omega_bar);
        }
        v
    } else {
        sets.to_vec()
    };
    let eigencodes = sets
        .into_iter()
        .map(|p| match a.spectrum.eigencode(p, budget) {
            Ok(c) => EigencodeReport { set: p, dimension: Some(c.basis.rows()), distance: Some(c.distance), error: None },
            Err(e) => EigencodeReport { set: p, dimension: None, distance: None, error: Some(e.to_string()) },
        })
        .collect();
    Ok(AnalysisReport {
        q: q_field.order(),
        m: a.code.m(),
        ell: a.code.ell(),
        lambda: q_field.display(a.code.lambda()),
        r: a.setup.r(),
        splitting_field_order: big.order(),
        alpha: big.display(a.setup.alpha()),
        xi: big.display(a.setup.xi()),
        groebner: a.groebner.display_entries(),
        diagonal: a.groebner.diagonal().iter().map(|d| d.display(q_field)).collect(),
        determinant: a.groebner.determinant().display(q_field),
        dimension: a.groebner.dimension(),
        eigenvalue_set: omega_bar,
        eigenvalues: a
            .spectrum
            .eigenvalues()
            .iter()
            .map(|e| EigenvalueReport {
                k: e.k,
                beta: big.display(e.beta),
                multiplicity: e.multiplicity,
                eigenspace_dim: e.eigenspace.rows(),
            })
            .collect(),
        eigencodes,
    })
}
