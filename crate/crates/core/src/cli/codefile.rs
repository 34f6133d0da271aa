//! JSON code description files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Elem, FiniteField};
use crate::polyring::Polynomial;
use crate::qtstruct::QtCode;

/// A field element: an integer for prime `q`, a little-endian coordinate list
/// over the prime field otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(u64),
    List(Vec<u64>),
}

/// `{q, m, ell, lambda, generators}` with `generators` an `r x ell x m` array
/// of coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    pub q: u64,
    pub m: usize,
    pub ell: usize,
    pub lambda: Coeff,
    pub generators: Vec<Vec<Vec<Coeff>>>,
}

/// Splits `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn context(path: &str, e: Error) -> Error {
    Error::Parse(format!("{path}: {e}"))
}

impl CodeSpecFile {
    /// Parses a JSON document; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// The base field `F_q`.
    pub fn field(&self) -> Result<FiniteField> {
        let (p, e) = prime_power(self.q).ok_or_else(|| Error::Parse(format!("q: {} is not a prime power", self.q)))?;
        FiniteField::new(p, e).map_err(|e| context("q", e))
    }

    fn element(field: &FiniteField, c: &Coeff, path: &str) -> Result<Elem> {
        let p = field.characteristic() as u64;
        let e = field.degree() as usize;
        let coords: Vec<u64> = match c {
            Coeff::Int(v) if e == 1 => vec![*v],
            Coeff::Int(_) => {
                return Err(Error::Parse(format!("{path}: expected a list of {e} coordinates")));
            }
            Coeff::List(v) if v.len() == e => v.clone(),
            Coeff::List(v) => {
                return Err(Error::Parse(format!("{path}: expected {e} coordinates, found {}", v.len())));
            }
        };
        if let Some(bad) = coords.iter().find(|&&x| x >= p) {
            return Err(Error::Parse(format!("{path}: coordinate {bad} not in [0, {p})")));
        }
        let coords: Vec<u32> = coords.iter().map(|&x| x as u32).collect();
        Ok(field.from_coords(&coords))
    }

    /// Validates the file and builds the code.
    pub fn to_code(&self) -> Result<QtCode> {
        let field = self.field()?;
        let lambda = Self::element(&field, &self.lambda, "lambda")?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (b, row) in self.generators.iter().enumerate() {
            if row.len() != self.ell {
                return Err(Error::Parse(format!(
                    "generators[{b}]: expected {} components, found {}",
                    self.ell,
                    row.len()
                )));
            }
            let mut polys = Vec::with_capacity(self.ell);
            for (j, coeffs) in row.iter().enumerate() {
                let path = format!("generators[{b}][{j}]");
                if coeffs.len() != self.m {
                    return Err(Error::Parse(format!(
                        "{path}: expected {} coefficients, found {}",
                        self.m,
                        coeffs.len()
                    )));
                }
                let elems = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| Self::element(&field, c, &format!("{path}[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                polys.push(Polynomial::from_coeffs(elems));
            }
            gens.push(polys);
        }
        QtCode::new(&field, self.m, self.ell, lambda, gens).map_err(|e| context("code", e))
    }

    /// The canonical file of a code: integers for prime `q`, coordinate lists
    /// otherwise, every polynomial padded to `m` coefficients.
    pub fn from_code(code: &QtCode) -> Self {
        let field = code.field();
        let coeff = |a: Elem| {
            if field.degree() == 1 {
                Coeff::Int(a.index() as u64)
            } else {
                Coeff::List(field.coords(a).into_iter().map(u64::from).collect())
            }
        };
        CodeSpecFile {
            q: field.order() as u64,
            m: code.m(),
            ell: code.ell(),
            lambda: coeff(code.lambda()),
            generators: code
                .generators()
                .iter()
                .map(|row| row.iter().map(|a| a.coeff_vec(code.m()).into_iter().map(coeff).collect()).collect())
                .collect(),
        }
    }
}
