//! Isomorphism testing by searching the intertwiner space for an invertible element.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{ModuleMap, Representation};
use crate::error::{Error, Result};
use crate::hom::{hom_dim, hom_matrices};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub seed: u64,
    pub max_trials: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            max_trials: 32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Carries a verified invertible intertwiner.
    Isomorphic(ModuleMap),
    NotIsomorphic,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

fn combination(
    basis: &[Matrix],
    coeffs: &[Scalar],
    field: FieldSpec,
    rows: usize,
    cols: usize,
) -> Matrix {
    let mut h = Matrix::zeros(field, rows, cols);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            h = h.add(&b.scale(c));
        }
    }
    h
}

/// Whether `m` and `n` are isomorphic, with a witness when they are.
///
/// Returns `Undecided` only when no invertible intertwiner was found and neither the
/// dimension and Hom counts nor an exhaustive search rule one out.
pub fn is_isomorphic(
    m: &Representation,
    n: &Representation,
    opts: SearchOptions,
) -> Result<IsoVerdict> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let d = m.dim();
    if d != n.dim() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let mm = hom_dim(m, m)?;
    if hom_dim(n, n)? != mm || hom_dim(m, n)? != mm {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let field = m.field();
    let basis = hom_matrices(m, n)?;
    let k = basis.len();
    let witness = |h: Matrix| ModuleMap::new(m.clone(), n.clone(), h).map(IsoVerdict::Isomorphic);
    if d == 0 {
        return witness(Matrix::zeros(field, 0, 0));
    }

    let mut rng = StdRng::seed_from_u64(opts.seed);
    match field {
        FieldSpec::PrimeField(p) => {
            for _ in 0..opts.max_trials {
                let coeffs: Vec<Scalar> = (0..k)
                    .map(|_| field.from_i64(rng.gen_range(0..p) as i64))
                    .collect();
                let h = combination(&basis, &coeffs, field, d, d);
                if h.inverse().is_some() {
                    return witness(h);
                }
            }
            let total = (p as u128).checked_pow(k as u32);
            if k <= 8 && total.is_some_and(|t| t <= EXHAUSTIVE_LIMIT as u128) {
                let total = total.unwrap() as u64;
                for idx in 0..total {
                    let mut rest = idx;
                    let coeffs: Vec<Scalar> = (0..k)
                        .map(|_| {
                            let c = rest % p;
                            rest /= p;
                            field.from_i64(c as i64)
                        })
                        .collect();
                    let h = combination(&basis, &coeffs, field, d, d);
                    if h.inverse().is_some() {
                        return witness(h);
                    }
                }
                return Ok(IsoVerdict::NotIsomorphic);
            }
            Err(Error::Undecided)
        }
        FieldSpec::Rationals => {
            let mut range = 1i64;
            for trial in 0..opts.max_trials {
                if trial > 0 && trial % 4 == 0 {
                    range *= 2;
                }
                let coeffs: Vec<Scalar> = (0..k)
                    .map(|_| field.from_i64(rng.gen_range(-range..=range)))
                    .collect();
                let h = combination(&basis, &coeffs, field, d, d);
                if h.inverse().is_some() {
                    return witness(h);
                }
            }
            Err(Error::Undecided)
        }
    }
}
