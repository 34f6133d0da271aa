//! Exact arithmetic in finite fields `F_{p^e}`.
//!
//! Every field is realized over its prime field with a canonical modulus: the
//! first monic irreducible polynomial of degree `e` in the ascending encoding
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Elements are stored as that same
//! integer encoding of their coordinate vector, so element order is the
//! encoding order.
//!
//! [`Tower`] relates a base field `F_q` to an extension `F` that contains it;
//! all subfields in between are handled inside `F` by Frobenius fixed points.
//! [`RootSetup`] fixes the roots of `x^m - lambda` used by the rest of the crate.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A field element, stored as the integer encoding of its coordinates.
///
/// Elements carry no reference to their field; every operation goes through
/// the owning [`FiniteField`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub const fn from_index(index: u32) -> Self {
        Elem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `F_{p^e}` with log/antilog tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FiniteField(Arc<Tables>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is canonical, so (p, e) identifies the field.
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.degree == other.0.degree)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.degree)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least `t >= 1` with `base^t = 1 mod n`. Requires `gcd(base, n) = 1`.
pub(crate) fn order_mod(base: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let b = base % n;
    let mut acc = b;
    let mut t = 1;
    while acc != 1 {
        acc = acc * b % n;
        t += 1;
    }
    t
}

/// Dense polynomials over the prime field, used only while choosing moduli.
mod fp {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p) as u64;
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            let shift = top - dm;
            for (i, &mc) in m.iter().enumerate() {
                let sub = c * mc as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }

    /// Ben-Or test: `f` has no factor of degree `k <= deg f / 2`, checked via
    /// `gcd(x^{p^k} - x, f)`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        let x = vec![0u32, 1];
        let mut t = x.clone();
        for _ in 1..=d / 2 {
            t = powmod(&t, p as u64, f, p);
            let mut diff = t.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(&diff, f, p);
            if g.len() > 1 || g.is_empty() {
                return false;
            }
        }
        true
    }
}

fn canonical_modulus(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as u64).pow(degree);
    for code in 0..count {
        let mut f = Vec::with_capacity(degree as usize + 1);
        let mut c = code;
        for _ in 0..degree {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// The field of order `p^degree` under its canonical modulus.
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::InvalidDegree(degree));
        }
        let order = (p as u128).pow(degree);
        if order > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge(order.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let order = order as u32;
        let modulus = canonical_modulus(p, degree);
        let mut tables = Tables { p, degree, order, modulus, exp: Vec::new(), log: Vec::new() };
        tables.build_log_tables();
        Ok(FiniteField(Arc::new(tables)))
    }

    /// The extension of degree `degree` over `self`, realized over the prime
    /// field with its own canonical modulus.
    pub fn extension(&self, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(degree));
        }
        Self::new(self.0.p as u64, self.0.degree * degree)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Coefficients of the defining modulus over `F_p`, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The generator behind the log tables (least primitive element).
    pub fn primitive_element(&self) -> Elem {
        Elem(self.0.exp[if self.0.order == 2 { 0 } else { 1 }])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.0.order).map(Elem)
    }

    /// The element `c * 1` for an integer `c`.
    pub fn from_int(&self, c: u64) -> Elem {
        Elem((c % self.0.p as u64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Elem {
        debug_assert!(coords.len() <= self.0.degree as usize);
        let p = self.0.p;
        Elem(coords.iter().rev().fold(0, |acc, &c| acc * p + c % p))
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut x = a.0;
        (0..self.0.degree)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.0.order
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.0;
        if t.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if t.degree == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= t.p { s - t.p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            let d = (x % t.p + y % t.p) % t.p;
            out += d * place;
            place *= t.p;
            x /= t.p;
            y /= t.p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let t = &*self.0;
        if t.p == 2 || a.0 == 0 {
            return a;
        }
        if t.degree == 1 {
            return Elem(t.p - a.0);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            let d = x % t.p;
            out += ((t.p - d) % t.p) * place;
            place *= t.p;
            x /= t.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let t = &*self.0;
        Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let t = &*self.0;
        let n = t.order - 1;
        Ok(Elem(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let t = &*self.0;
        let n = (t.order - 1) as u64;
        let e = (t.log[a.0 as usize] as u64 * (k % n)) % n;
        Elem(t.exp[e as usize])
    }

    /// `a^k` for a possibly negative exponent; `a` must be nonzero when `k < 0`.
    pub fn pow_signed(&self, a: Elem, k: i64) -> Result<Elem> {
        if k >= 0 {
            Ok(self.pow(a, k as u64))
        } else {
            Ok(self.pow(self.inv(a)?, k.unsigned_abs()))
        }
    }

    /// Least `t >= 1` with `a^t = 1`.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Ok(n / gcd(n, l))
    }

    /// Human-readable element: an integer in prime fields, a coordinate
    /// tuple `[c0,c1,...]` otherwise.
    pub fn display(&self, a: Elem) -> String {
        if self.0.degree == 1 {
            a.0.to_string()
        } else {
            let c: Vec<String> = self.coords(a).iter().map(u32::to_string).collect();
            format!("[{}]", c.join(","))
        }
    }
}

impl Tables {
    fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut prod = fp::mul(a, b, self.p);
        prod = fp::rem(&prod, &self.modulus, self.p);
        prod.resize(self.degree as usize, 0);
        prod
    }

    fn pow_coords(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut result = vec![0u32; self.degree as usize];
        result[0] = 1;
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_coords(&result, &b);
            }
            b = self.mul_coords(&b, &b);
            e >>= 1;
        }
        result
    }

    fn decode(&self, mut x: u32) -> Vec<u32> {
        (0..self.degree)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn build_log_tables(&mut self) {
        let n = (self.order - 1) as u64;
        let factors = prime_factors(n);
        let mut one = vec![0u32; self.degree as usize];
        one[0] = 1;
        let generator = (1..self.order)
            .map(|i| self.decode(i))
            .find(|g| factors.iter().all(|&f| self.pow_coords(g, n / f) != one))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut cur = one;
        for i in 0..n as usize {
            let code = self.encode(&cur);
            exp[i] = code;
            exp[i + n as usize] = code;
            log[code as usize] = i as u32;
            cur = self.mul_coords(&cur, &generator);
        }
        self.exp = exp;
        self.log = log;
    }
}

/// Solve-by-inverse over `F_p`: returns the inverse of a square matrix.
fn invert_mod_p(mut a: Vec<Vec<u32>>, p: u32) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let mut inv: Vec<Vec<u32>> =
        (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    let p64 = p as u64;
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let s = fp::inv(a[col][col], p) as u64;
        for j in 0..n {
            a[col][j] = (a[col][j] as u64 * s % p64) as u32;
            inv[col][j] = (inv[col][j] as u64 * s % p64) as u32;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col] as u64;
                for j in 0..n {
                    a[r][j] = ((a[r][j] as u64 + p64 - f * a[col][j] as u64 % p64) % p64) as u32;
                    inv[r][j] =
                        ((inv[r][j] as u64 + p64 - f * inv[col][j] as u64 % p64) % p64) as u32;
                }
            }
        }
    }
    Some(inv)
}

/// A base field `F_q` embedded in an extension `F`.
///
/// The embedding sends the generator of `F_q` to the least root (in element
/// order) of its modulus inside `F`. Coordinates of `F` over `F_q` are taken
/// in the basis `1, z, ..., z^{e-1}` where `z` is the primitive element of `F`.
#[derive(Clone)]
pub struct Tower {
    base: FiniteField,
    ext: FiniteField,
    rel_degree: u32,
    embed: Arc<Vec<Elem>>,
    coord_inverse: Arc<Vec<Vec<u32>>>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({:?} <= {:?})", self.base, self.ext)
    }
}

impl Tower {
    pub fn new(base: FiniteField, ext: FiniteField) -> Result<Self> {
        if base.characteristic() != ext.characteristic() || !ext.degree().is_multiple_of(base.degree()) {
            return Err(Error::FieldMismatch);
        }
        let a = base.degree() as usize;
        let rel_degree = ext.degree() / base.degree();
        let gamma = if a == 1 {
            Elem::ONE
        } else {
            let m = base.modulus();
            ext.elements()
                .find(|&z| {
                    let mut acc = Elem::ZERO;
                    for &c in m.iter().rev() {
                        acc = ext.add(ext.mul(acc, z), ext.from_int(c as u64));
                    }
                    acc.is_zero()
                })
                .ok_or_else(|| Error::Internal("base modulus has no root in extension".into()))?
        };
        let gamma_pows: Vec<Elem> = (0..a).map(|i| ext.pow(gamma, i as u64)).collect();
        let embed: Vec<Elem> = base
            .elements()
            .map(|x| {
                base.coords(x).iter().zip(&gamma_pows).fold(Elem::ZERO, |acc, (&c, &g)| {
                    ext.add(acc, ext.mul(ext.from_int(c as u64), g))
                })
            })
            .collect();
        let z = ext.primitive_element();
        let dim = ext.degree() as usize;
        // Column j*a + i holds the F_p-coordinates of gamma^i z^j.
        let mut columns = Vec::with_capacity(dim);
        for j in 0..rel_degree as u64 {
            for &g in &gamma_pows {
                columns.push(ext.coords(ext.mul(g, ext.pow(z, j))));
            }
        }
        let matrix: Vec<Vec<u32>> =
            (0..dim).map(|r| (0..dim).map(|c| columns[c][r]).collect()).collect();
        let coord_inverse = invert_mod_p(matrix, ext.characteristic())
            .ok_or_else(|| Error::Internal("tower basis is singular".into()))?;
        Ok(Tower {
            base,
            ext,
            rel_degree,
            embed: Arc::new(embed),
            coord_inverse: Arc::new(coord_inverse),
        })
    }

    /// The trivial tower `F <= F`.
    pub fn identity(field: FiniteField) -> Result<Self> {
        Self::new(field.clone(), field)
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn ext(&self) -> &FiniteField {
        &self.ext
    }

    /// `[F : F_q]`.
    pub fn rel_degree(&self) -> u32 {
        self.rel_degree
    }

    /// `q`, the order of the base field.
    pub fn q(&self) -> u64 {
        self.base.order() as u64
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a.0 as usize]
    }

    /// All base-field elements as elements of the extension, in base order.
    pub fn base_elements(&self) -> &[Elem] {
        &self.embed
    }

    /// Coordinates of `a` over the base field, length `[F : F_q]`.
    pub fn coords_over_base(&self, a: Elem) -> Vec<Elem> {
        let p = self.ext.characteristic() as u64;
        let v = self.ext.coords(a);
        let d: Vec<u32> = self
            .coord_inverse
            .iter()
            .map(|row| {
                (row.iter().zip(&v).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p) as u32
            })
            .collect();
        let a_deg = self.base.degree() as usize;
        d.chunks(a_deg).map(|c| self.base.from_coords(c)).collect()
    }

    /// The base-field element equal to `a`, if `a` lies in the base field.
    pub fn restrict(&self, a: Elem) -> Option<Elem> {
        if self.base.degree() == 1 {
            return (a.0 < self.base.order()).then_some(a);
        }
        let c = self.coords_over_base(a);
        c[1..].iter().all(|x| x.is_zero()).then(|| c[0])
    }

    /// `a -> a^q`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.ext.pow(a, self.q())
    }

    /// Whether `a` lies in the subfield of order `q^sub_degree`.
    pub fn subfield_member(&self, a: Elem, sub_degree: u32) -> bool {
        self.ext.pow(a, self.q().pow(sub_degree)) == a
    }

    /// `Tr_{F_{q^e}/F_q}(a) = sum_{j<e} a^{q^j}`, as an element of the extension.
    pub fn relative_trace(&self, a: Elem, sub_degree: u32) -> Result<Elem> {
        if sub_degree == 0 || !self.subfield_member(a, sub_degree) {
            return Err(Error::NotInSubfield(sub_degree));
        }
        let mut acc = Elem::ZERO;
        let mut t = a;
        for _ in 0..sub_degree {
            acc = self.ext.add(acc, t);
            t = self.frobenius(t);
        }
        Ok(acc)
    }
}

/// The roots of `x^m - lambda`: `alpha` of order `rm` with `alpha^m = lambda`,
/// `xi = alpha^r` and `omega_k = alpha * xi^k`.
#[derive(Clone, Debug)]
pub struct RootSetup {
    tower: Tower,
    m: usize,
    lambda: Elem,
    r: u64,
    alpha: Elem,
    xi: Elem,
    omega: Vec<Elem>,
}

impl RootSetup {
    pub fn new(q_field: &FiniteField, m: usize, lambda: Elem) -> Result<Self> {
        let p = q_field.characteristic();
        if m == 0 || gcd(m as u64, p as u64) != 1 {
            return Err(Error::MNotCoprime { m, p });
        }
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        if !q_field.contains(lambda) {
            return Err(Error::InvalidSpec("lambda outside the base field".into()));
        }
        let q = q_field.order() as u64;
        let r = q_field.multiplicative_order(lambda)?;
        let rm = r * m as u64;
        let e = order_mod(q, rm);
        let big = q_field.extension(e as u32)?;
        let tower = Tower::new(q_field.clone(), big.clone())?;
        let lambda_ext = tower.embed(lambda);
        let alpha = big
            .nonzero_elements()
            .find(|&a| {
                big.multiplicative_order(a).ok() == Some(rm) && big.pow(a, m as u64) == lambda_ext
            })
            .ok_or(Error::NoCompatibleRoot { order: rm })?;
        let xi = big.pow(alpha, r);
        let omega = (0..m as u64).map(|k| big.mul(alpha, big.pow(xi, k))).collect();
        Ok(RootSetup { tower, m, lambda, r, alpha, xi, omega })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// The base field `F_q`.
    pub fn q_field(&self) -> &FiniteField {
        self.tower.base()
    }

    /// The splitting field `F` of `x^m - lambda`.
    pub fn field(&self) -> &FiniteField {
        self.tower.ext()
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    /// Multiplicative order of lambda.
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn xi(&self) -> Elem {
        self.xi
    }

    /// `omega_k = alpha * xi^k` for `k = 0..m`.
    pub fn omega(&self) -> &[Elem] {
        &self.omega
    }

    pub fn root(&self, k: usize) -> Elem {
        self.omega[k % self.m]
    }

    /// Index of `omega_k^q`, i.e. `(q-1)/r + q*k mod m`.
    pub fn conjugate_exponent(&self, k: usize) -> usize {
        let m = self.m as u64;
        (((self.q() - 1) / self.r + self.q() % m * (k as u64 % m)) % m) as usize
    }
}
