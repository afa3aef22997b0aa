//! Generators and checks shared by the property suite and the acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use modegen::algebra::{AlgebraPresentation, Representation};
use modegen::hom::{hom_dim, hom_matrices};
use modegen::io::{self, Document};
use modegen::matrix::{rref, Matrix};
use modegen::scalar::FieldSpec;
use modegen::subspace::Subspace;

pub const P: u64 = 101;

pub fn fp() -> FieldSpec {
    FieldSpec::PrimeField(P)
}

pub fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::PrimeField(2)),
        Just(FieldSpec::PrimeField(3)),
        Just(FieldSpec::PrimeField(P)),
    ]
}

/// Small integer entries; over the rationals these stay tiny, over 𝔽_p they cover residues.
pub fn matrix_in(field: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let mut m = Matrix::zeros(field, rows, cols);
        for (k, x) in v.into_iter().enumerate() {
            m.set(k / cols.max(1), k % cols.max(1), field.from_i64(x));
        }
        m
    })
}

pub fn any_matrix() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0usize..=5, 0usize..=5).prop_flat_map(|(f, r, c)| matrix_in(f, r, c))
}

pub fn subspace_pair() -> impl Strategy<Value = (Subspace, Subspace)> {
    (field_strategy(), 1usize..=5, 0usize..=4, 0usize..=4).prop_flat_map(|(f, n, a, b)| {
        (matrix_in(f, n, a), matrix_in(f, n, b)).prop_map(move |(x, y)| {
            (
                Subspace::span(f, n, &x.columns()),
                Subspace::span(f, n, &y.columns()),
            )
        })
    })
}

pub fn kronecker(field: FieldSpec) -> Arc<AlgebraPresentation> {
    Arc::new(AlgebraPresentation::kronecker(field))
}

pub fn cubic(field: FieldSpec) -> Arc<AlgebraPresentation> {
    Arc::new(AlgebraPresentation::truncated_polynomial(field, 3))
}

/// Arbitrary Kronecker module with `d1, d2 <= 2`; every pair of arrow matrices is allowed.
pub fn kronecker_module(alg: Arc<AlgebraPresentation>) -> impl Strategy<Value = Representation> {
    let f = alg.field();
    (0usize..=2, 0usize..=2).prop_flat_map(move |(d1, d2)| {
        let alg = alg.clone();
        (matrix_in(f, d2, d1), matrix_in(f, d2, d1)).prop_map(move |(a, b)| {
            let d = d1 + d2;
            let e1 = Matrix::identity(f, d1).block_diag(&Matrix::zeros(f, d2, d2));
            let e2 = Matrix::zeros(f, d1, d1).block_diag(&Matrix::identity(f, d2));
            let arrow = |m: &Matrix| {
                let mut x = Matrix::zeros(f, d, d);
                x.paste(d1, 0, m);
                x
            };
            Representation::new_valid(alg.clone(), d, vec![e1, e2, arrow(&a), arrow(&b)]).unwrap()
        })
    })
}

/// Module over `k[X]/(X^3)`: a random strictly upper triangular `X` of size `<= 3`,
/// conjugated by a random unipotent lower triangular matrix.
pub fn truncated_module(alg: Arc<AlgebraPresentation>) -> impl Strategy<Value = Representation> {
    let f = alg.field();
    (0usize..=3).prop_flat_map(move |d| {
        let alg = alg.clone();
        (matrix_in(f, d, d), matrix_in(f, d, d)).prop_map(move |(x, l)| {
            let mut upper = Matrix::zeros(f, d, d);
            let mut unip = Matrix::identity(f, d);
            for i in 0..d {
                for j in 0..d {
                    if i < j {
                        upper.set(i, j, x.get(i, j).clone());
                    } else if i > j {
                        unip.set(i, j, l.get(i, j).clone());
                    }
                }
            }
            let r = Representation::new_valid(alg.clone(), d, vec![Matrix::identity(f, d), upper])
                .unwrap();
            r.change_basis(&unip).unwrap()
        })
    })
}

pub fn check_rank_nullity(m: &Matrix) -> Result<(), TestCaseError> {
    let rank = m.rank();
    let ker = m.kernel();
    prop_assert_eq!(rank + ker.dim(), m.cols());
    prop_assert_eq!(m.image().dim(), rank);
    prop_assert_eq!(m.transpose().rank(), rank);
    for v in ker.vectors() {
        prop_assert!(m.apply(&v).iter().all(|x| x.is_zero()));
    }
    let (r, rk, piv) = rref(m);
    prop_assert_eq!(rk, rank);
    prop_assert_eq!(rref(&r), (r, rk, piv));
    Ok(())
}

pub fn check_modular_law(a: &Subspace, b: &Subspace) -> Result<(), TestCaseError> {
    let sum = a.sum(b).unwrap();
    let meet = a.intersect(b).unwrap();
    prop_assert_eq!(a.dim() + b.dim(), sum.dim() + meet.dim());
    prop_assert!(a.is_subspace_of(&sum) && b.is_subspace_of(&sum));
    prop_assert!(meet.is_subspace_of(a) && meet.is_subspace_of(b));
    prop_assert_eq!(&a.sum(a).unwrap(), a);
    prop_assert_eq!(&b.sum(a).unwrap(), &sum);
    Ok(())
}

pub fn check_hom_bilinear(
    a: &Representation,
    b: &Representation,
    c: &Representation,
) -> Result<(), TestCaseError> {
    let ab = a.oplus(b).unwrap();
    let hc = |x: &Representation, y: &Representation| hom_dim(x, y).unwrap();
    prop_assert_eq!(hc(&ab, c), hc(a, c) + hc(b, c));
    prop_assert_eq!(hc(c, &ab), hc(c, a) + hc(c, b));
    let basis = hom_matrices(a, c).unwrap();
    let f = a.field();
    let mut sum = Matrix::zeros(f, c.dim(), a.dim());
    for (k, h) in basis.iter().enumerate() {
        prop_assert!(modegen::algebra::intertwines(a, c, h));
        sum = sum.add(&h.scale(&f.from_i64(k as i64 + 2)));
    }
    prop_assert!(modegen::algebra::intertwines(a, c, &sum));
    Ok(())
}

pub fn check_round_trip(doc: &Document) -> Result<(), TestCaseError> {
    let text = io::print(doc);
    let back = io::parse(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, doc);
    prop_assert_eq!(io::print(&back), text);
    Ok(())
}

pub fn map_document(a: Representation, b: Representation, seed: &Matrix) -> Document {
    let mut m = Matrix::zeros(a.field(), b.dim(), a.dim());
    for i in 0..b.dim().min(seed.rows()) {
        for j in 0..a.dim().min(seed.cols()) {
            m.set(i, j, seed.get(i, j).clone());
        }
    }
    Document::Map {
        source: a,
        target: b,
        matrix: m,
    }
}

/// Module over `k[X]/(X^3)` on ℚ with a strictly upper triangular `X` of fractional entries.
pub fn rational_module() -> impl Strategy<Value = Representation> {
    let q = FieldSpec::Rationals;
    let alg = Arc::new(AlgebraPresentation::truncated_polynomial(q, 3));
    (0usize..=3).prop_flat_map(move |d| {
        let alg = alg.clone();
        prop::collection::vec((-50i64..=50, 1i64..=9), d * d).prop_map(move |v| {
            let mut x = Matrix::zeros(q, d, d);
            for i in 0..d {
                for j in i + 1..d {
                    let (a, b) = v[i * d + j];
                    x.set(i, j, q.parse(&format!("{a}/{b}")).unwrap());
                }
            }
            Representation::new_valid(alg.clone(), d, vec![Matrix::identity(q, d), x]).unwrap()
        })
    })
}
