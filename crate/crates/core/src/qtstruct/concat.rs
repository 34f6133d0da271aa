use crate::error::{Error, Result};
use crate::galois::{Elem, RootSetup};
use crate::linalg::{min_distance_over_subfield, Distance, Matrix};
use crate::polyring::{Factor, Factorization, Polynomial};

use super::{expand_tuple, QtCode};

/// The constituent `C_i`: the `E_i`-span of the generator rows evaluated at
/// `beta_i = alpha * xi^{u_i}`.
#[derive(Clone, Debug)]
pub struct Constituent {
    /// Index of the factor `f_i` in the factorization.
    pub index: usize,
    pub beta: Elem,
    /// `e_i = [E_i : F_q]`.
    pub degree: usize,
    /// Rows `(a_{b,0}(beta_i), ..., a_{b,ell-1}(beta_i))` over the splitting field.
    pub generator: Matrix,
}

impl Constituent {
    pub fn is_zero(&self) -> bool {
        self.generator.is_zero()
    }

    /// `E_i`-dimension of the constituent.
    pub fn dimension(&self) -> usize {
        self.generator.rank()
    }

    /// Minimum distance of the `E_i`-span, by enumeration.
    pub fn distance(&self, setup: &RootSetup, budget: u64) -> Result<Distance> {
        let big = setup.field();
        let ext_basis: Vec<Elem> = (0..self.degree as u64).map(|t| big.pow(self.beta, t)).collect();
        min_distance_over_subfield(&self.generator, setup.tower().base_elements(), &ext_basis, budget)
    }
}

/// One constituent per irreducible factor, in factor order.
pub fn constituents(code: &QtCode, fact: &Factorization, setup: &RootSetup) -> Vec<Constituent> {
    let tower = setup.tower();
    fact.factors()
        .iter()
        .enumerate()
        .map(|(index, factor)| {
            let beta = setup.root(factor.u);
            let rows = code
                .generators()
                .iter()
                .map(|row| row.iter().map(|a| a.eval_in(tower, beta)).collect())
                .collect();
            let generator =
                Matrix::from_rows(setup.field(), code.ell(), rows).expect("rows have ell entries");
            Constituent { index, beta, degree: factor.degree, generator }
        })
        .collect()
}

/// `psi_i(delta) = sum_k a_k x^k` with `a_k = m^{-1} Tr_{E_i/F_q}(delta * beta_i^{-k})`.
pub fn psi(delta: Elem, factor: &Factor, setup: &RootSetup) -> Result<Polynomial> {
    let big = setup.field();
    let tower = setup.tower();
    let m = setup.m();
    let beta = setup.root(factor.u);
    let beta_inv = big.inv(beta)?;
    let m_inv = big.inv(tower.embed(setup.q_field().from_int(m as u64)))?;
    let mut coeffs = Vec::with_capacity(m);
    let mut w = delta;
    for _ in 0..m {
        let tr = tower.relative_trace(w, factor.degree as u32)?;
        let a = tower
            .restrict(big.mul(m_inv, tr))
            .ok_or_else(|| Error::Internal("trace value outside the base field".into()))?;
        coeffs.push(a);
        w = big.mul(w, beta_inv);
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// The concatenation `sum_i <theta_i> [] C_i` as scalar rows over `F_q`:
/// `psi_i` applied coordinatewise to `beta_i^t`-multiples of an independent
/// set of rows of every constituent.
pub fn reassemble(code: &QtCode, fact: &Factorization, setup: &RootSetup) -> Result<Matrix> {
    let big = setup.field();
    let m = code.m();
    let mut out = Matrix::zeros(code.field(), 0, code.length());
    for c in constituents(code, fact, setup) {
        let factor = &fact.factors()[c.index];
        let rows = c.generator.independent_rows();
        for r in 0..rows.rows() {
            for t in 0..c.degree as u64 {
                let scale = big.pow(c.beta, t);
                let tuple = rows
                    .row(r)
                    .iter()
                    .map(|&x| psi(big.mul(scale, x), factor, setup))
                    .collect::<Result<Vec<_>>>()?;
                out.push_row(&expand_tuple(&tuple, m))?;
            }
        }
    }
    Ok(out)
}
