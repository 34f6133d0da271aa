//! Univariate polynomials over a [`FiniteField`], the quotient ring
//! `R = F_q[x]/(x^m - lambda)`, the factorization of `x^m - lambda` through
//! conjugacy orbits of its roots, and the primitive idempotents of `R`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::galois::{Elem, FiniteField, RootSetup, Tower};
use crate::linalg::Matrix;

/// A polynomial with little-endian coefficients and no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<u32> = self.coeffs.iter().map(|e| e.index()).collect();
        write!(f, "Polynomial{c:?}")
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Elem::ONE)
    }

    pub fn x() -> Self {
        Self::monomial(Elem::ONE, 1)
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: Elem, deg: usize) -> Self {
        let mut v = vec![Elem::ZERO; deg + 1];
        v[deg] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Coefficients given as integers reduced into the prime subfield.
    pub fn from_ints(field: &FiniteField, coeffs: &[u64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Coefficients padded or truncated to length `n`.
    pub fn coeff_vec(&self, n: usize) -> Vec<Elem> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn add(&self, other: &Self, f: &FiniteField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self, f: &FiniteField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FiniteField) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem, f: &FiniteField) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg d`.
    pub fn divmod(&self, d: &Self, f: &FiniteField) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![Elem::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, b));
            }
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    pub fn rem(&self, d: &Self, f: &FiniteField) -> Result<Self> {
        Ok(self.divmod(d, f)?.1)
    }

    /// Exact quotient; fails if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self, f: &FiniteField) -> Result<Self> {
        let (q, r) = self.divmod(d, f)?;
        if !r.is_zero() {
            return Err(Error::Internal("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Scales to leading coefficient 1; the zero polynomial is unchanged.
    pub fn monic(&self, f: &FiniteField) -> Self {
        match f.inv(self.leading()) {
            Ok(inv) => self.scale(inv, f),
            Err(_) => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self, f: &FiniteField) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `(g, s, t)` with `g = s*self + t*other` monic (unless both are zero).
    pub fn ext_gcd(&self, other: &Self, f: &FiniteField) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1, f).expect("divisor is nonzero");
            let s = s0.sub(&q.mul(&s1, f), f);
            let t = t0.sub(&q.mul(&t1, f), f);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.leading()) {
            Ok(inv) => (r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f)),
            Err(_) => (r0, s0, t0),
        }
    }

    /// Value at `x` in the coefficient field.
    pub fn eval(&self, f: &FiniteField, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Value at a point `x` of the extension field of `tower`, with the
    /// coefficients read in the base field.
    pub fn eval_in(&self, tower: &Tower, x: Elem) -> Elem {
        let f = tower.ext();
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), tower.embed(c)))
    }

    /// Image under the embedding of the base field into the extension.
    pub fn lift(&self, tower: &Tower) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| tower.embed(c)).collect())
    }

    /// Inverse of [`Polynomial::lift`]; fails when a coefficient lies outside the base field.
    pub fn restrict(&self, tower: &Tower) -> Result<Self> {
        self.coeffs
            .iter()
            .map(|&c| {
                tower
                    .restrict(c)
                    .ok_or_else(|| Error::Internal("coefficient outside the base field".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_coeffs)
    }

    /// `x^m - lambda`.
    pub fn x_m_minus(m: usize, lambda: Elem, f: &FiniteField) -> Self {
        let mut v = vec![Elem::ZERO; m + 1];
        v[0] = f.neg(lambda);
        v[m] = Elem::ONE;
        Self::from_coeffs(v)
    }

    /// Human-readable form such as `x^2 + 2x + 2`.
    pub fn display(&self, f: &FiniteField) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let prime = f.degree() == 1;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.display(c);
            let cs = if prime { cs } else { format!("({cs})") };
            let term = match (i, c == Elem::ONE) {
                (0, _) => cs,
                (1, true) => "x".to_string(),
                (1, false) => format!("{cs}x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{cs}x^{i}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

/// The ring `F_q[x]/(x^m - lambda)`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    field: FiniteField,
    m: usize,
    lambda: Elem,
    modulus: Polynomial,
}

impl QuotientRing {
    pub fn new(field: &FiniteField, m: usize, lambda: Elem) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("block length must be positive".into()));
        }
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(QuotientRing {
            field: field.clone(),
            m,
            lambda,
            modulus: Polynomial::x_m_minus(m, lambda, field),
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    /// `x^m - lambda`.
    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    /// Reduction by `x^m = lambda`.
    pub fn reduce(&self, a: &Polynomial) -> Polynomial {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.m];
        for (i, &c) in a.coeffs().iter().enumerate() {
            let wraps = (i / self.m) as u64;
            let v = f.mul(c, f.pow(self.lambda, wraps));
            out[i % self.m] = f.add(out[i % self.m], v);
        }
        Polynomial::from_coeffs(out)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.mul(b, &self.field))
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.add(b, &self.field))
    }

    /// Multiplication by `x`: the lambda-constashift of the coefficient vector.
    pub fn shift(&self, a: &Polynomial) -> Polynomial {
        self.mul(&Polynomial::x(), a)
    }

    /// The `m x m` matrix whose rows are `x^t * a` for `t < m`.
    pub fn shift_matrix(&self, a: &Polynomial) -> Matrix {
        let mut rows = Vec::with_capacity(self.m);
        let mut cur = self.reduce(a);
        for _ in 0..self.m {
            rows.push(cur.coeff_vec(self.m));
            cur = self.shift(&cur);
        }
        Matrix::from_rows(&self.field, self.m, rows).expect("rows have length m")
    }
}

/// One irreducible factor of `x^m - lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// The monic irreducible factor `f_i` over `F_q`.
    pub poly: Polynomial,
    /// Least exponent of the orbit: `f_i(alpha * xi^u) = 0`.
    pub u: usize,
    /// `e_i = deg f_i`.
    pub degree: usize,
    /// Exponents `k` with `f_i(alpha * xi^k) = 0`.
    pub orbit: ExponentSet,
}

/// `x^m - lambda = f_1 ... f_s`, ordered by ascending `u_i`.
#[derive(Clone, Debug)]
pub struct Factorization {
    ring: QuotientRing,
    factors: Vec<Factor>,
}

/// Orbits of `{0..m-1}` under `k -> (q-1)/r + q*k mod m`, ordered by least element.
pub fn conjugacy_orbits(setup: &RootSetup) -> Vec<ExponentSet> {
    let m = setup.m();
    let mut seen = ExponentSet::EMPTY;
    let mut orbits = Vec::new();
    for start in 0..m {
        if seen.contains(start) {
            continue;
        }
        let mut orbit = ExponentSet::EMPTY;
        let mut k = start;
        while !orbit.contains(k) {
            orbit.insert(k);
            k = setup.conjugate_exponent(k);
        }
        seen = seen.union(orbit);
        orbits.push(orbit);
    }
    orbits
}

/// Factors `x^m - lambda` over `F_q` by multiplying out root orbits in the
/// splitting field.
pub fn factor_xm_minus_lambda(setup: &RootSetup) -> Result<Factorization> {
    let big = setup.field();
    let tower = setup.tower();
    let mut factors = Vec::new();
    for orbit in conjugacy_orbits(setup) {
        let mut p = Polynomial::one();
        for k in orbit.iter() {
            let lin = Polynomial::from_coeffs(vec![big.neg(setup.root(k)), Elem::ONE]);
            p = p.mul(&lin, big);
        }
        let poly = p.restrict(tower)?;
        let u = orbit.iter().next().expect("orbits are nonempty");
        factors.push(Factor { poly, u, degree: orbit.len(), orbit });
    }
    let ring = QuotientRing::new(setup.q_field(), setup.m(), setup.lambda())?;
    Ok(Factorization { ring, factors })
}

impl Factorization {
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Number of irreducible factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// Product of the factors with indices in `indices`.
    pub fn product(&self, indices: impl IntoIterator<Item = usize>) -> Polynomial {
        let f = self.ring.field();
        indices.into_iter().fold(Polynomial::one(), |acc, i| acc.mul(&self.factors[i].poly, f))
    }

    /// `(x^m - lambda) / f_i`, the generator of the minimal code `<theta_i>`.
    pub fn minimal_code_generator(&self, i: usize) -> Polynomial {
        self.product((0..self.len()).filter(|&j| j != i))
    }

    /// `theta_i`, with `theta_i = 1 mod f_i` and `theta_i = 0 mod f_j` for `j != i`.
    pub fn primitive_idempotent(&self, i: usize) -> Polynomial {
        let f = self.ring.field();
        let g = self.minimal_code_generator(i);
        let (_, s, _) = g.ext_gcd(&self.factors[i].poly, f);
        self.ring.mul(&s, &g)
    }
}
