//! Dense matrices over a [`FiniteField`], exact elimination, the
//! column-independence number `n_A`, and exhaustive minimum-distance oracles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::galois::{Elem, FiniteField};

/// Default cap on enumerated codewords.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 22;
/// Default cap on rank evaluations when computing `n_A`.
pub const DEFAULT_SUBSET_CAP: u64 = 1_000_000;

/// A minimum distance, or infinity for the zero code.
///
/// Finite values order below `Infinite`; products absorb infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn is_infinite(self) -> bool {
        matches!(self, Distance::Infinite)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// Product with infinity absorbing: `inf * x = inf`.
    pub fn times(self, other: Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a.saturating_mul(b)),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Distance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" => Ok(Distance::Infinite),
            t => t
                .parse::<u32>()
                .map(Distance::Finite)
                .map_err(|_| Error::Parse(format!("invalid distance {t:?}"))),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Distance::Finite(n)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&e| self.field.display(e)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows; `cols` is used when `rows` is empty.
    pub fn from_rows(field: &FiniteField, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    /// Convenience constructor from small integers (prime-field coordinates).
    pub fn from_ints(field: &FiniteField, rows: &[&[u64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&c| field.from_int(c)).collect()).collect();
        Self::from_rows(field, cols, rows).expect("rectangular input")
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[Elem]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch("pushed row has wrong length".into()));
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Vertical concatenation of matrices with a common width.
    pub fn vstack(field: &FiniteField, cols: usize, parts: &[&Matrix]) -> Result<Matrix> {
        let mut out = Matrix::zeros(field, 0, cols);
        for p in parts {
            if p.field != *field {
                return Err(Error::FieldMismatch);
            }
            if p.cols != cols {
                return Err(Error::DimensionMismatch("vstack width".into()));
            }
            out.data.extend_from_slice(&p.data);
            out.rows += p.rows;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matrix product".into()));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Entrywise image in another field.
    pub fn map_into(&self, field: &FiniteField, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of `{v : A v^T = 0}`.
    pub fn right_kernel(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Matrix::zeros(f, 0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Elem::ZERO; self.cols];
            v[free] = Elem::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            out.push_row(&v).expect("width matches");
        }
        out
    }

    /// Whether both matrices have the same row space.
    pub fn row_space_eq(&self, other: &Matrix) -> Result<bool> {
        let both = Matrix::vstack(&self.field, self.cols, &[self, other])?;
        let r = both.rank();
        Ok(self.rank() == r && other.rank() == r)
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &Matrix) -> Result<bool> {
        let both = Matrix::vstack(&self.field, self.cols, &[self, other])?;
        Ok(both.rank() == self.rank())
    }

    /// A maximal linearly independent subset of the rows, in original order.
    pub fn independent_rows(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, 0, self.cols);
        let mut rank = 0;
        for r in 0..self.rows {
            let mut trial = out.clone();
            trial.push_row(self.row(r)).expect("width matches");
            let tr = trial.rank();
            if tr > rank {
                rank = tr;
                out = trial;
            }
        }
        out
    }
}

/// Kronecker product `A ⊗ B`: block `(i, j)` is `a_ij * B`.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let mut out = Matrix::zeros(f, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let s = a.get(i, j);
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.set(i * b.rows + k, j * b.cols + l, f.mul(s, b.get(k, l)));
                }
            }
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `n_A`: the largest `j` such that every `j` columns of `A` are linearly
/// independent, by exhaustive subset search of increasing size.
///
/// Fails with [`Error::SubsetCap`] when more than `cap` subsets would need checking.
pub fn column_independence_number(a: &Matrix, cap: u64) -> Result<usize> {
    let rank = a.rank();
    let columns: Vec<Vec<Elem>> = (0..a.cols).map(|c| (0..a.rows).map(|r| a.get(r, c)).collect()).collect();
    let mut evaluated: u128 = 0;
    // Any rank+1 columns are dependent, so n_A <= rank.
    for j in 1..=rank {
        evaluated += binomial(a.cols, j);
        if evaluated > cap as u128 {
            return Err(Error::SubsetCap { cap });
        }
        let mut basis = Vec::with_capacity(j);
        if has_dependent_subset(&a.field, &columns, 0, j, &mut basis) {
            return Ok(j - 1);
        }
    }
    Ok(rank)
}

/// Reduces `v` against an echelon basis of `(pivot, row)` pairs with unit pivots.
fn reduce(field: &FiniteField, basis: &[(usize, Vec<Elem>)], v: &mut [Elem]) {
    for (p, b) in basis {
        let c = v[*p];
        if !c.is_zero() {
            for (x, &y) in v.iter_mut().zip(b) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
    }
}

/// Whether some `left` more columns from `start..` are dependent on each
/// other together with the columns already in `basis`. Assumes every smaller
/// subset is independent.
fn has_dependent_subset(
    field: &FiniteField,
    columns: &[Vec<Elem>],
    start: usize,
    left: usize,
    basis: &mut Vec<(usize, Vec<Elem>)>,
) -> bool {
    for c in start..=columns.len() - left {
        let mut v = columns[c].clone();
        reduce(field, basis, &mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return true;
        };
        if left == 1 {
            continue;
        }
        let inv = field.inv(v[p]).expect("nonzero pivot");
        v.iter_mut().for_each(|x| *x = field.mul(*x, inv));
        basis.push((p, v));
        let found = has_dependent_subset(field, columns, c + 1, left - 1, basis);
        basis.pop();
        if found {
            return true;
        }
    }
    false
}

/// `d = n_H + 1` for the code with parity-check matrix `H`; infinity when the
/// columns of `H` are independent (the code is `{0}`).
pub fn min_distance_from_parity(h: &Matrix, cap: u64) -> Result<Distance> {
    let n = column_independence_number(h, cap)?;
    if n == h.cols {
        Ok(Distance::Infinite)
    } else {
        Ok(Distance::Finite(n as u32 + 1))
    }
}

/// Minimum distance of the code with parity-check matrix `h`, by kernel
/// enumeration or by column subsets, whichever needs less work.
pub fn parity_code_distance(h: &Matrix, budget: u64, cap: u64) -> Result<Distance> {
    let rank = h.rank();
    let k = h.cols - rank;
    if k == 0 {
        return Ok(Distance::Infinite);
    }
    let enum_cost = (h.field.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let subset_cost: u128 = (1..=rank).map(|j| binomial(h.cols, j)).sum();
    if enum_cost <= budget as u128 && (enum_cost <= subset_cost || subset_cost > cap as u128) {
        min_distance_from_generator(&h.right_kernel(), budget)
    } else {
        min_distance_from_parity(h, cap)
    }
}

/// Minimum weight over all nonzero combinations of `rows` with coefficients
/// from `scalars`, which must be a subfield of `field` (as a list of its
/// elements) over which the rows are linearly independent.
///
/// Enumerates one representative per projective point: the last nonzero
/// coefficient is fixed to 1.
pub fn min_weight_of_span(
    field: &FiniteField,
    rows: &[Vec<Elem>],
    scalars: &[Elem],
    budget: u64,
) -> Result<Distance> {
    let k = rows.len();
    if k == 0 {
        return Ok(Distance::Infinite);
    }
    let s = scalars.len();
    let needed = (s as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::OracleBudget { needed, budget });
    }
    let mut sc: Vec<Elem> = scalars.to_vec();
    sc.sort();
    debug_assert!(sc[0].is_zero());
    let n = rows[0].len();
    // steps[i][d] = (sc[d+1] - sc[d]) * rows[i]
    let steps: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|row| {
            (0..s)
                .map(|d| {
                    let delta = field.sub(sc[(d + 1) % s], sc[d]);
                    row.iter().map(|&x| field.mul(delta, x)).collect()
                })
                .collect()
        })
        .collect();
    let weight = |v: &[Elem]| v.iter().filter(|e| !e.is_zero()).count() as u32;
    let mut best = u32::MAX;
    for top in 0..k {
        let mut cur = rows[top].clone();
        let mut digits = vec![0usize; top];
        'odometer: loop {
            let w = weight(&cur);
            if w < best {
                best = w;
                if best <= 1 {
                    return Ok(Distance::Finite(best));
                }
            }
            let mut i = 0;
            loop {
                if i == top {
                    break 'odometer;
                }
                let step = &steps[i][digits[i]];
                for (c, &d) in cur.iter_mut().zip(step) {
                    *c = field.add(*c, d);
                }
                digits[i] = (digits[i] + 1) % s;
                if digits[i] != 0 {
                    break;
                }
                i += 1;
            }
        }
    }
    debug_assert!(best > 0 && n > 0, "independent rows span no zero codeword");
    Ok(Distance::Finite(best))
}

/// Minimum distance of the code spanned (over its own field) by the rows of `g`.
pub fn min_distance_from_generator(g: &Matrix, budget: u64) -> Result<Distance> {
    let (basis, _) = g.rref();
    let scalars: Vec<Elem> = g.field.elements().collect();
    min_weight_of_span(&g.field, &basis.row_vecs(), &scalars, budget)
}

/// Minimum distance of the `E`-span of the rows of `g`, where `E` is an
/// intermediate field described by `ext_basis` (a basis of `E` over the
/// scalar subfield) and `scalars` (all elements of the scalar subfield, as
/// elements of `g`'s field). Row entries must lie in `E`.
pub fn min_distance_over_subfield(
    g: &Matrix,
    scalars: &[Elem],
    ext_basis: &[Elem],
    budget: u64,
) -> Result<Distance> {
    let f = &g.field;
    // Vectors over E are E-independent iff they are F-independent.
    let indep = g.independent_rows();
    let mut rows = Vec::with_capacity(indep.rows * ext_basis.len());
    for r in 0..indep.rows {
        for &b in ext_basis {
            rows.push(indep.row(r).iter().map(|&x| f.mul(b, x)).collect());
        }
    }
    min_weight_of_span(f, &rows, scalars, budget)
}

/// Minimum distance of the row space of `g` over its own field, choosing
/// between codeword enumeration and parity-check column subsets: the span is
/// enumerated when it fits in `budget`, otherwise `n_H` of the dual basis is
/// computed under `cap`.
pub fn linear_code_distance(g: &Matrix, budget: u64, cap: u64) -> Result<Distance> {
    let k = g.rank();
    if k == 0 {
        return Ok(Distance::Infinite);
    }
    let size = (g.field.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size <= budget as u128 {
        return min_distance_from_generator(g, budget);
    }
    let h = g.right_kernel();
    match min_distance_from_parity(&h, cap) {
        Ok(d) => Ok(d),
        Err(Error::SubsetCap { .. }) => Err(Error::OracleBudget { needed: size, budget }),
        Err(e) => Err(e),
    }
}
