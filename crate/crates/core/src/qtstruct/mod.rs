//! The quasi-twisted code model: generators, scalar expansion, the reduced
//! upper-triangular generator matrix, the spectrum and eigencodes, and the
//! CRT constituents with their concatenated reassembly.

mod concat;
mod groebner;
mod spectrum;

pub use concat::{constituents, psi, reassemble, Constituent};
pub use groebner::{groebner_matrix, GroebnerMatrix};
pub use spectrum::{spectrum, Eigencode, Eigenvalue, Spectrum, MAX_EIGENCODE_ELL};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exponents::MAX_M;
use crate::galois::{gcd, Elem, FiniteField, RootSetup};
use crate::linalg::Matrix;
use crate::polyring::{Polynomial, QuotientRing};

/// A lambda-quasi-twisted code of index `ell` and co-index `m` over `F_q`,
/// given by generator rows of `ell` polynomials of degree `< m`.
#[derive(Clone, Debug)]
pub struct QtCode {
    field: FiniteField,
    m: usize,
    ell: usize,
    lambda: Elem,
    generators: Vec<Vec<Polynomial>>,
}

impl QtCode {
    pub fn new(
        field: &FiniteField,
        m: usize,
        ell: usize,
        lambda: Elem,
        generators: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let p = field.characteristic();
        if m == 0 || gcd(m as u64, p as u64) != 1 {
            return Err(Error::MNotCoprime { m, p });
        }
        if m > MAX_M {
            return Err(Error::InvalidSpec(format!("m = {m} exceeds the maximum of {MAX_M}")));
        }
        if ell == 0 {
            return Err(Error::InvalidSpec("index ell must be positive".into()));
        }
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        if !field.contains(lambda) {
            return Err(Error::InvalidSpec("lambda outside the base field".into()));
        }
        for (b, row) in generators.iter().enumerate() {
            if row.len() != ell {
                return Err(Error::InvalidSpec(format!(
                    "generator {b} has {} components, expected {ell}",
                    row.len()
                )));
            }
            for (j, a) in row.iter().enumerate() {
                if a.degree().is_some_and(|d| d >= m) {
                    return Err(Error::InvalidSpec(format!(
                        "generator {b}, component {j} has degree >= m"
                    )));
                }
                if a.coeffs().iter().any(|&c| !field.contains(c)) {
                    return Err(Error::InvalidSpec(format!(
                        "generator {b}, component {j} has a coefficient outside the field"
                    )));
                }
            }
        }
        Ok(QtCode { field: field.clone(), m, ell, lambda, generators })
    }

    /// The full space `F_q^{m ell}`, generated by the unit rows.
    pub fn full_space(field: &FiniteField, m: usize, ell: usize, lambda: Elem) -> Result<Self> {
        let gens = (0..ell)
            .map(|i| {
                (0..ell)
                    .map(|j| if i == j { Polynomial::one() } else { Polynomial::zero() })
                    .collect()
            })
            .collect();
        Self::new(field, m, ell, lambda, gens)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    /// Code length `m * ell`.
    pub fn length(&self) -> usize {
        self.m * self.ell
    }

    pub fn ring(&self) -> QuotientRing {
        QuotientRing::new(&self.field, self.m, self.lambda).expect("validated at construction")
    }

    pub fn root_setup(&self) -> Result<RootSetup> {
        RootSetup::new(&self.field, self.m, self.lambda)
    }

    /// Rows `x^t * g_b` for every generator `b` and `t < m`, with coordinate
    /// `(i, j)` (coefficient of `x^i` in component `j`) at position `i*ell + j`.
    pub fn scalar_generator_matrix(&self) -> Matrix {
        scalar_rows(&self.ring(), self.ell, &self.generators)
    }
}

/// Coordinates of an `ell`-tuple of polynomials (degrees `< m`) in the array layout.
pub fn expand_tuple(tuple: &[Polynomial], m: usize) -> Vec<Elem> {
    let ell = tuple.len();
    let mut v = vec![Elem::ZERO; m * ell];
    for (j, a) in tuple.iter().enumerate() {
        for (i, &c) in a.coeffs().iter().enumerate().take(m) {
            v[i * ell + j] = c;
        }
    }
    v
}

/// The `m` shifts of each row, reduced in `R`, expanded to scalars.
pub(crate) fn scalar_rows(ring: &QuotientRing, ell: usize, rows: &[Vec<Polynomial>]) -> Matrix {
    let m = ring.m();
    let mut out = Matrix::zeros(ring.field(), 0, m * ell);
    for row in rows {
        let mut cur: Vec<Polynomial> = row.iter().map(|a| ring.reduce(a)).collect();
        for _ in 0..m {
            out.push_row(&expand_tuple(&cur, m)).expect("width is m * ell");
            cur = cur.iter().map(|a| ring.shift(a)).collect();
        }
    }
    out
}

/// `r` generator rows of `ell` uniformly random polynomials of degree `< m`,
/// drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_qtcode(
    field: &FiniteField,
    m: usize,
    ell: usize,
    lambda: Elem,
    r: usize,
    seed: u64,
) -> Result<QtCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = field.order();
    let gens = (0..r)
        .map(|_| {
            (0..ell)
                .map(|_| {
                    Polynomial::from_coeffs(
                        (0..m).map(|_| Elem::from_index(rng.random_range(0..order))).collect(),
                    )
                })
                .collect()
        })
        .collect();
    QtCode::new(field, m, ell, lambda, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::prime(3).unwrap()
    }

    #[test]
    fn validation() {
        let f = f3();
        let two = f.from_int(2);
        assert!(matches!(QtCode::new(&f, 3, 2, two, vec![]), Err(Error::MNotCoprime { .. })));
        assert_eq!(QtCode::new(&f, 4, 2, Elem::ZERO, vec![]).unwrap_err(), Error::ZeroLambda);
        let long = vec![vec![Polynomial::monomial(Elem::ONE, 4), Polynomial::zero()]];
        assert!(matches!(QtCode::new(&f, 4, 2, two, long), Err(Error::InvalidSpec(_))));
        let short = vec![vec![Polynomial::one()]];
        assert!(matches!(QtCode::new(&f, 4, 2, two, short), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn example_one_scalar_matrix() {
        let f = f3();
        let g = vec![vec![
            Polynomial::from_ints(&f, &[1, 2, 0, 2]),
            Polynomial::from_ints(&f, &[2, 1, 0, 1]),
        ]];
        let code = QtCode::new(&f, 4, 2, f.from_int(2), g).unwrap();
        let s = code.scalar_generator_matrix();
        assert_eq!((s.rows(), s.cols()), (4, 8));
        assert_eq!(s.rank(), 2);
        // Reference matrix uses component-major columns (j*m + i).
        let reference = Matrix::from_ints(&f, &[&[1, 0, 1, 1, 2, 0, 2, 2], &[0, 1, 1, 2, 0, 2, 2, 1]]);
        let order: Vec<usize> = (0..8).map(|c| (c % 2) * 4 + c / 2).collect();
        assert!(s.row_space_eq(&reference.select_columns(&order)).unwrap());
        assert!(!s.row_space_eq(&reference).unwrap());
    }

    #[test]
    fn zero_generators() {
        let f = f3();
        let code = QtCode::new(&f, 4, 3, f.from_int(2), vec![]).unwrap();
        assert_eq!(code.scalar_generator_matrix().rows(), 0);
        let code = QtCode::new(&f, 4, 2, f.from_int(2), vec![vec![Polynomial::zero(); 2]]).unwrap();
        assert!(code.scalar_generator_matrix().is_zero());
    }

    #[test]
    fn random_codes_are_deterministic() {
        let f = f3();
        let a = random_qtcode(&f, 4, 3, f.from_int(2), 2, 17).unwrap();
        let b = random_qtcode(&f, 4, 3, f.from_int(2), 2, 17).unwrap();
        assert_eq!(a.generators(), b.generators());
        let c = random_qtcode(&f, 4, 3, f.from_int(2), 2, 18).unwrap();
        assert_ne!(a.generators(), c.generators());
        assert!(random_qtcode(&f, 4, 2, f.from_int(2), 0, 1).unwrap().generators().is_empty());
    }
}
