//! Subspaces of `k^n` in canonical form.
//!
//! The basis of a subspace is stored as the columns of the transposed reduced row
//! echelon form of any spanning set. Each basis column has a 1 in its pivot row and
//! zeros in the other pivot rows, so equal subspaces have identical bases and the
//! coordinates of a member vector are simply its entries at the pivot rows.

use crate::error::{Error, Result};
use crate::matrix::{kernel, rref, Matrix, Vector};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    field: FieldSpec,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            field,
            basis: Matrix::zeros(field, n, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            field,
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    /// Span of arbitrary vectors of length `n`.
    pub fn span(field: FieldSpec, n: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(field, n);
        }
        let mut rows = Matrix::zeros(field, vectors.len(), n);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), n, "vector length does not match ambient dimension");
            for (j, x) in v.iter().enumerate() {
                rows.set(i, j, x.clone());
            }
        }
        let (r, rank, pivots) = rref(&rows);
        let basis = r.block(0, rank, 0, n).transpose();
        Subspace {
            ambient_dim: n,
            field,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// `ambient_dim x dim` matrix whose columns are the canonical basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.columns()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Coordinates of `v` with respect to the canonical basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(
            v.len(),
            self.ambient_dim,
            "vector length does not match ambient dimension"
        );
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.basis.apply(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of every column of `m`; fails with `NotContained` if some column lies outside.
    pub fn coords_matrix(&self, m: &Matrix) -> Result<Matrix> {
        let cols = m
            .columns()
            .iter()
            .map(|c| self.coords(c).ok_or(Error::NotContained))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.field, self.dim(), &cols))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.vectors().iter().all(|v| other.contains(v))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Ok(Subspace::span(self.field, self.ambient_dim, &vs))
    }

    /// Intersection via the kernel of `[A | -B]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = self.basis.hstack(&other.basis.scale(&-&self.field.one()));
        let k = kernel(&stacked);
        let a = self.dim();
        let vs: Vec<Vector> = k
            .vectors()
            .iter()
            .map(|w| self.basis.apply(&w[..a]))
            .collect();
        Ok(Subspace::span(self.field, self.ambient_dim, &vs))
    }

    /// Row vectors spanning the annihilator `{y | y^T s = 0}`.
    fn annihilator_rows(&self) -> Matrix {
        let ann = kernel(&self.basis.transpose());
        ann.basis().transpose()
    }

    /// `{v | m v ∈ s}`.
    pub fn preimage(m: &Matrix, s: &Subspace) -> Result<Subspace> {
        if m.rows() != s.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "map has {} rows but subspace lives in dimension {}",
                m.rows(),
                s.ambient_dim
            )));
        }
        let constraints = s.annihilator_rows();
        Ok(kernel(&(&constraints * m)))
    }

    /// Image of this subspace under `m`.
    pub fn map(&self, m: &Matrix) -> Subspace {
        let img = m * &self.basis;
        img.image()
    }

    /// Vectors extending a basis of `self` to a basis of `within`.
    ///
    /// Greedy: unit vectors first, then the canonical basis of `within`.
    pub fn complement_basis(&self, within: &Subspace) -> Result<Vec<Vector>> {
        self.check_compatible(within)?;
        if !self.is_subspace_of(within) {
            return Err(Error::NotContained);
        }
        let n = self.ambient_dim;
        let mut acc = self.clone();
        let mut out = Vec::new();
        let units = (0..n).map(|i| {
            let mut u = vec![self.field.zero(); n];
            u[i] = self.field.one();
            u
        });
        for v in units.chain(within.vectors()) {
            if acc.dim() == within.dim() {
                break;
            }
            if within.contains(&v) && !acc.contains(&v) {
                acc = Subspace::span(self.field, n, &[acc.vectors(), vec![v.clone()]].concat());
                out.push(v);
            }
        }
        debug_assert_eq!(acc.dim(), within.dim());
        Ok(out)
    }

    /// Direct sum `self ⊕ other` inside `k^(n+m)`.
    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim + other.ambient_dim;
        let zero_tail = vec![self.field.zero(); other.ambient_dim];
        let zero_head = vec![self.field.zero(); self.ambient_dim];
        let mut vs: Vec<Vector> = self
            .vectors()
            .into_iter()
            .map(|v| [v, zero_tail.clone()].concat())
            .collect();
        vs.extend(
            other
                .vectors()
                .into_iter()
                .map(|v| [zero_head.clone(), v].concat()),
        );
        Subspace::span(self.field, n, &vs)
    }
}
