use crate::error::{Error, Result};
use crate::exponents::ExponentSet;
use crate::galois::{Elem, RootSetup};
use crate::linalg::{kronecker, min_distance_from_generator, Distance, Matrix};
use crate::polyring::Polynomial;

use super::GroebnerMatrix;

/// Largest index for which eigencode distances are computed.
pub const MAX_EIGENCODE_ELL: usize = 8;

/// One eigenvalue `beta = alpha * xi^k` of a QT code.
#[derive(Clone, Debug)]
pub struct Eigenvalue {
    pub k: usize,
    pub beta: Elem,
    /// Multiplicity of `x - beta` in `det G(x)`.
    pub multiplicity: usize,
    /// Basis (as rows over the splitting field) of the null space of `G(beta)`.
    pub eigenspace: Matrix,
    evaluation: Matrix,
}

/// The eigenvalues of a QT code, ordered by exponent `k`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    setup: RootSetup,
    ell: usize,
    eigen: Vec<Eigenvalue>,
}

/// An eigencode: the `F_q`-vectors orthogonal to a common eigenspace.
#[derive(Clone, Debug)]
pub struct Eigencode {
    /// Basis rows over `F_q` (empty for the zero code).
    pub basis: Matrix,
    pub distance: Distance,
}

/// Eigenvalues, multiplicities (by repeated division of the determinant) and
/// eigenspaces; fails if a multiplicity differs from the eigenspace dimension.
pub fn spectrum(g: &GroebnerMatrix, setup: &RootSetup) -> Result<Spectrum> {
    if g.field() != setup.q_field() || g.m() != setup.m() || g.lambda() != setup.lambda() {
        return Err(Error::FieldMismatch);
    }
    let tower = setup.tower();
    let big = setup.field();
    let det = g.determinant().lift(tower);
    let mut eigen = Vec::new();
    for (k, &beta) in setup.omega().iter().enumerate() {
        let linear = Polynomial::from_coeffs(vec![big.neg(beta), Elem::ONE]);
        let mut rest = det.clone();
        let mut multiplicity = 0;
        while !rest.is_zero() && rest.eval(big, beta).is_zero() {
            rest = rest.exact_div(&linear, big)?;
            multiplicity += 1;
        }
        if multiplicity == 0 {
            continue;
        }
        let evaluation = g.evaluate(tower, beta);
        let eigenspace = evaluation.right_kernel();
        if eigenspace.rows() != multiplicity {
            return Err(Error::Internal(format!(
                "eigenvalue {k}: multiplicity {multiplicity} but eigenspace dimension {}",
                eigenspace.rows()
            )));
        }
        eigen.push(Eigenvalue { k, beta, multiplicity, eigenspace, evaluation });
    }
    Ok(Spectrum { setup: setup.clone(), ell: g.ell(), eigen })
}

impl Spectrum {
    pub fn setup(&self) -> &RootSetup {
        &self.setup
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.setup.m()
    }

    pub fn eigenvalues(&self) -> &[Eigenvalue] {
        &self.eigen
    }

    /// The exponents `k` of the eigenvalues.
    pub fn eigenvalue_set(&self) -> ExponentSet {
        self.eigen.iter().map(|e| e.k).collect()
    }

    pub fn get(&self, k: usize) -> Option<&Eigenvalue> {
        self.eigen.iter().find(|e| e.k == k)
    }

    /// `sum of multiplicities`, equal to `sum deg g_jj`.
    pub fn total_multiplicity(&self) -> usize {
        self.eigen.iter().map(|e| e.multiplicity).sum()
    }

    fn check_subset(&self, p: ExponentSet) -> Result<()> {
        if p.is_subset(self.eigenvalue_set()) {
            Ok(())
        } else {
            Err(Error::RecordOutsideEigenvalues)
        }
    }

    /// Basis of the common eigenspace `V_P`, the null space of all `G(beta)`
    /// for `beta` in `P`. For empty `P` this is the zero space.
    pub fn common_eigenspace(&self, p: ExponentSet) -> Result<Matrix> {
        self.check_subset(p)?;
        let big = self.setup.field();
        if p.is_empty() {
            return Ok(Matrix::zeros(big, 0, self.ell));
        }
        let parts: Vec<&Matrix> =
            p.iter().map(|k| &self.get(k).expect("checked subset").evaluation).collect();
        Ok(Matrix::vstack(big, self.ell, &parts)?.right_kernel())
    }

    /// `F_q`-linear constraints equivalent to orthogonality with `V_P`: each
    /// basis vector contributes one row per `F_q`-coordinate.
    pub fn constraints(&self, p: ExponentSet) -> Result<Matrix> {
        let v = self.common_eigenspace(p)?;
        let tower = self.setup.tower();
        let e = tower.rel_degree() as usize;
        let mut rows = Vec::with_capacity(v.rows() * e);
        for r in 0..v.rows() {
            let coords: Vec<Vec<Elem>> = v.row(r).iter().map(|&x| tower.coords_over_base(x)).collect();
            for c in 0..e {
                rows.push(coords.iter().map(|cs| cs[c]).collect());
            }
        }
        let m = Matrix::from_rows(self.setup.q_field(), self.ell, rows)?;
        Ok(m.rref().0)
    }

    /// The eigencode `C_P`; `C_P = F_q^ell` for empty `P`.
    pub fn eigencode(&self, p: ExponentSet, budget: u64) -> Result<Eigencode> {
        let constraints = self.constraints(p)?;
        eigencode_from_constraints(&constraints, budget)
    }

    /// The intersection of the eigencodes of all sets in `sets`.
    pub fn eigencode_intersection(&self, sets: &[ExponentSet], budget: u64) -> Result<Eigencode> {
        let parts = sets.iter().map(|&p| self.constraints(p)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Matrix> = parts.iter().collect();
        let stacked = Matrix::vstack(self.setup.q_field(), self.ell, &refs)?;
        eigencode_from_constraints(&stacked, budget)
    }

    /// The stack of `(1, beta, ..., beta^{m-1}) (x) V_beta` over all
    /// eigenvalues in ascending `k`; a single zero row when there are none.
    pub fn parity_check(&self) -> Matrix {
        let big = self.setup.field();
        let m = self.m();
        let width = m * self.ell;
        if self.eigen.is_empty() {
            return Matrix::zeros(big, 1, width);
        }
        let mut out = Matrix::zeros(big, 0, width);
        for e in &self.eigen {
            let powers = (0..m as u64).map(|t| big.pow(e.beta, t)).collect();
            let vander = Matrix::from_rows(big, m, vec![powers]).expect("one row");
            let block = kronecker(&vander, &e.eigenspace).expect("same field");
            out = Matrix::vstack(big, width, &[&out, &block]).expect("same width");
        }
        out
    }
}

/// The code `{u in F_q^ell : W u^T = 0}` and its minimum distance.
pub fn eigencode_from_constraints(constraints: &Matrix, budget: u64) -> Result<Eigencode> {
    if constraints.cols() > MAX_EIGENCODE_ELL {
        return Err(Error::InvalidSpec(format!(
            "eigencode distances need ell <= {MAX_EIGENCODE_ELL}"
        )));
    }
    let basis = constraints.right_kernel();
    let distance = min_distance_from_generator(&basis, budget)?;
    Ok(Eigencode { basis, distance })
}
