use crate::error::{Error, Result};
use crate::galois::{Elem, FiniteField, Tower};
use crate::linalg::Matrix;
use crate::polyring::{Polynomial, QuotientRing};

use super::{scalar_rows, QtCode};

/// The reduced upper-triangular `ell x ell` polynomial generator matrix of a
/// QT code (its Hermite form over `F_q[x]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerMatrix {
    field: FiniteField,
    m: usize,
    lambda: Elem,
    entries: Vec<Vec<Polynomial>>,
}

/// Triangularizes the generator rows together with `(x^m - lambda) e_j` by
/// column-wise Euclidean elimination, normalizes the diagonal to be monic and
/// reduces every above-diagonal entry modulo its diagonal entry.
pub fn groebner_matrix(code: &QtCode) -> GroebnerMatrix {
    let f = code.field();
    let ell = code.ell();
    let modulus = Polynomial::x_m_minus(code.m(), code.lambda(), f);
    let mut rows: Vec<Vec<Polynomial>> = code.generators().to_vec();
    for j in 0..ell {
        let mut row = vec![Polynomial::zero(); ell];
        row[j] = modulus.clone();
        rows.push(row);
    }

    for col in 0..ell {
        // Euclid on column `col` over rows col.. until one nonzero entry remains.
        loop {
            let live: Vec<usize> = (col..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            let pivot = *live
                .iter()
                .min_by_key(|&&i| (rows[i][col].degree(), i))
                .expect("(x^m - lambda) e_col keeps the column nonzero");
            if live.len() == 1 {
                rows.swap(col, pivot);
                break;
            }
            let prow = rows[pivot].clone();
            for &i in &live {
                if i == pivot {
                    continue;
                }
                let (q, _) = rows[i][col].divmod(&prow[col], f).expect("pivot is nonzero");
                subtract_multiple(&mut rows[i], &prow, &q, f);
            }
        }
        let inv = f.inv(rows[col][col].leading()).expect("pivot is nonzero");
        rows[col] = rows[col].iter().map(|a| a.scale(inv, f)).collect();
    }
    rows.truncate(ell);

    for col in 1..ell {
        let prow = rows[col].clone();
        for i in 0..col {
            let (q, _) = rows[i][col].divmod(&prow[col], f).expect("diagonal is nonzero");
            if !q.is_zero() {
                subtract_multiple(&mut rows[i], &prow, &q, f);
            }
        }
    }

    GroebnerMatrix { field: f.clone(), m: code.m(), lambda: code.lambda(), entries: rows }
}

fn subtract_multiple(row: &mut [Polynomial], other: &[Polynomial], q: &Polynomial, f: &FiniteField) {
    for (a, b) in row.iter_mut().zip(other) {
        if !b.is_zero() {
            *a = a.sub(&q.mul(b, f), f);
        }
    }
}

impl GroebnerMatrix {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.entries.len()
    }

    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<Polynomial> {
        (0..self.ell()).map(|j| self.entries[j][j].clone()).collect()
    }

    /// `det = prod g_jj`.
    pub fn determinant(&self) -> Polynomial {
        self.entries
            .iter()
            .enumerate()
            .fold(Polynomial::one(), |acc, (j, row)| acc.mul(&row[j], &self.field))
    }

    /// `m*ell - sum deg g_jj`.
    pub fn dimension(&self) -> usize {
        let used: usize = (0..self.ell()).map(|j| self.entries[j][j].degree_or_zero()).sum();
        self.m * self.ell() - used
    }

    /// Scalar expansion of the rows and their shifts in `R^ell`.
    pub fn scalar_generator_matrix(&self) -> Matrix {
        let ring = QuotientRing::new(&self.field, self.m, self.lambda).expect("valid ring");
        scalar_rows(&ring, self.ell(), &self.entries)
    }

    /// `G(beta)` over the extension field of `tower`.
    pub fn evaluate(&self, tower: &Tower, beta: Elem) -> Matrix {
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|a| a.eval_in(tower, beta)).collect())
            .collect();
        Matrix::from_rows(tower.ext(), self.ell(), rows).expect("square matrix")
    }

    /// Checks upper triangularity, monic diagonal entries dividing
    /// `x^m - lambda`, and `deg g_ij < deg g_jj` above the diagonal.
    pub fn check_conditions(&self) -> Result<()> {
        let f = &self.field;
        let modulus = Polynomial::x_m_minus(self.m, self.lambda, f);
        for j in 0..self.ell() {
            let d = &self.entries[j][j];
            if !d.is_monic() {
                return Err(Error::Internal(format!("diagonal entry {j} is not monic")));
            }
            if !modulus.rem(d, f)?.is_zero() {
                return Err(Error::Internal(format!("diagonal entry {j} does not divide x^m - lambda")));
            }
            for i in 0..self.ell() {
                let e = &self.entries[i][j];
                if i > j && !e.is_zero() {
                    return Err(Error::Internal(format!("entry ({i},{j}) below the diagonal")));
                }
                if i < j && !e.is_zero() && e.degree() >= d.degree() {
                    return Err(Error::Internal(format!("entry ({i},{j}) is not reduced")));
                }
            }
        }
        Ok(())
    }

    /// Rows of entries rendered as polynomials, e.g. `x^2 + 2x + 2`.
    pub fn display_entries(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|a| a.display(&self.field)).collect())
            .collect()
    }
}
