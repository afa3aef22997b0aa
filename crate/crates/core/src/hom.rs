//! Intertwiner spaces `Hom(M, N)` and affine lifting problems inside them.

use crate::algebra::{ModuleMap, Representation};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::subspace::Subspace;

/// Linear equations in the entries of an `n.dim x m.dim` matrix `H`, unknown `(r, c)` at
/// index `r * m.dim + c`, expressing `H m(g) = n(g) H` for every generator `g`.
pub fn intertwining_equations(m: &Representation, n: &Representation) -> Result<Matrix> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let (dm, dn) = (m.dim(), n.dim());
    let field = m.field();
    let unknowns = dm * dn;
    let gens = m.mats().len();
    let mut eq = Matrix::zeros(field, gens * unknowns, unknowns);
    for (g, (a, b)) in m.mats().iter().zip(n.mats()).enumerate() {
        for r in 0..dn {
            for c in 0..dm {
                let row = g * unknowns + r * dm + c;
                // (H a)[r][c] = sum_k H[r][k] a[k][c]
                for k in 0..dm {
                    let x = a.get(k, c);
                    if !x.is_zero() {
                        let idx = r * dm + k;
                        eq.set(row, idx, eq.get(row, idx) + x);
                    }
                }
                // (b H)[r][c] = sum_k b[r][k] H[k][c]
                for k in 0..dn {
                    let x = b.get(r, k);
                    if !x.is_zero() {
                        let idx = k * dm + c;
                        eq.set(row, idx, eq.get(row, idx) - x);
                    }
                }
            }
        }
    }
    Ok(eq)
}

pub(crate) fn unvec(
    field: crate::scalar::FieldSpec,
    rows: usize,
    cols: usize,
    v: &[crate::scalar::Scalar],
) -> Matrix {
    let mut h = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            h.set(r, c, v[r * cols + c].clone());
        }
    }
    h
}

/// Canonical basis of `Hom(m, n)` as matrices.
pub fn hom_matrices(m: &Representation, n: &Representation) -> Result<Vec<Matrix>> {
    let eq = intertwining_equations(m, n)?;
    let space = eq.kernel();
    Ok(space
        .vectors()
        .iter()
        .map(|v| unvec(m.field(), n.dim(), m.dim(), v))
        .collect())
}

/// Canonical basis of `Hom(m, n)`; its length is `[M, N]`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<ModuleMap>> {
    Ok(hom_matrices(m, n)?
        .into_iter()
        .map(|h| ModuleMap::new_unchecked(m.clone(), n.clone(), h))
        .collect())
}

/// `[M, N] = dim Hom(M, N)`.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let eq = intertwining_equations(m, n)?;
    Ok(m.dim() * n.dim() - eq.rank())
}

/// Upper-triangular intertwiners `m -> n` of equal dimension.
pub fn upper_triangular_intertwiners(
    m: &Representation,
    n: &Representation,
) -> Result<Vec<Matrix>> {
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            m.dim(),
            n.dim()
        )));
    }
    let d = m.dim();
    let eq = intertwining_equations(m, n)?;
    let field = m.field();
    let mut lower = Matrix::zeros(field, d * d.saturating_sub(1) / 2, d * d);
    let mut row = 0;
    for r in 0..d {
        for c in 0..r {
            lower.set(row, r * d + c, field.one());
            row += 1;
        }
    }
    let space = eq.vstack(&lower).kernel();
    Ok(space
        .vectors()
        .iter()
        .map(|v| unvec(field, d, d, v))
        .collect())
}

/// Finds an intertwiner `H: m -> n` with `left * H = rhs`, if one exists.
///
/// `left` has `n.dim` columns; `rhs` has `m.dim` columns.
pub fn lift_intertwiner(
    m: &Representation,
    n: &Representation,
    left: &Matrix,
    rhs: &Matrix,
) -> Result<Option<Matrix>> {
    let (dm, dn) = (m.dim(), n.dim());
    if left.cols() != dn || rhs.cols() != dm || left.rows() != rhs.rows() {
        return Err(Error::DimensionMismatch(
            "lifting constraint has the wrong shape".into(),
        ));
    }
    let field = m.field();
    let eq = intertwining_equations(m, n)?;
    let k = left.rows();
    let mut cons = Matrix::zeros(field, k * dm, dm * dn);
    let mut target: Vector = Vec::with_capacity(eq.rows() + k * dm);
    target.extend(std::iter::repeat_n(field.zero(), eq.rows()));
    // (left H)[i][c] = sum_r left[i][r] H[r][c]
    for i in 0..k {
        for c in 0..dm {
            for r in 0..dn {
                cons.set(i * dm + c, r * dm + c, left.get(i, r).clone());
            }
            target.push(rhs.get(i, c).clone());
        }
    }
    let system = eq.vstack(&cons);
    let b = Matrix::from_columns(field, target.len(), &[target]);
    Ok(system.solve(&b).map(|x| unvec(field, dn, dm, &x.col(0))))
}

/// The subspace of `k^(n.dim * m.dim)` of vectorised intertwiners.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Subspace> {
    Ok(intertwining_equations(m, n)?.kernel())
}
