//! Composition series, triangular representations and composition vectors.

use std::fmt;

use crate::algebra::{intertwines, AlgebraPresentation, Representation};
use crate::error::{Error, Result};
use crate::hom::upper_triangular_intertwiners;
use crate::matrix::{Matrix, Vector};
use crate::module::{complement_projection, Submodule};
use crate::report::Report;
use crate::scalar::{FieldSpec, Scalar};
use crate::subspace::Subspace;

/// A representation whose generator matrices are all upper triangular.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangularRep {
    rep: Representation,
}

impl TriangularRep {
    pub fn new(rep: Representation) -> Result<Self> {
        if !rep.mats().iter().all(Matrix::is_upper_triangular) {
            return Err(Error::TriangularityViolated);
        }
        Ok(TriangularRep { rep })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn into_rep(self) -> Representation {
        self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// The `i`-dimensional stage: top-left `i x i` corner of every matrix.
    pub fn stage(&self, i: usize) -> Representation {
        self.rep.truncate(i)
    }
}

/// Indices into the algebra's declared idempotents, one per composition factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositionVector {
    pub entries: Vec<usize>,
}

impl CompositionVector {
    pub fn names<'a>(&self, algebra: &'a AlgebraPresentation) -> Vec<&'a str> {
        self.entries
            .iter()
            .map(|&e| algebra.idempotent_name(e))
            .collect()
    }
}

impl fmt::Display for CompositionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `0 ⊂ M_1 ⊂ ... ⊂ M_d` with `dim M_i = i`, plus the idempotent acting on each factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositionSeries {
    ambient: Representation,
    flags: Vec<Submodule>,
    factors: Vec<usize>,
}

/// The unique declared idempotent acting nonzero on `span(prev, v) / prev`.
fn factor_of(r: &Representation, prev: &Subspace, v: &[Scalar]) -> Result<usize> {
    let acting: Vec<usize> = (0..r.algebra().idempotents().len())
        .filter(|&k| !prev.contains(&r.idempotent_mat(k).apply(v)))
        .collect();
    match acting[..] {
        [k] => Ok(k),
        _ => Err(Error::SimpleNotOneDimensional),
    }
}

impl CompositionSeries {
    /// Builds a series from its flags, computing the factors.
    pub fn new(ambient: Representation, flags: Vec<Subspace>) -> Result<Self> {
        let d = ambient.dim();
        if flags.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "{} flags for dimension {d}",
                flags.len()
            )));
        }
        let mut subs = Vec::with_capacity(d);
        let mut factors = Vec::with_capacity(d);
        let mut prev = Subspace::zero(ambient.field(), d);
        for (i, s) in flags.into_iter().enumerate() {
            if s.dim() != i + 1 || !prev.is_subspace_of(&s) {
                return Err(Error::InvalidInput(format!(
                    "flag {} is not a one-step extension",
                    i + 1
                )));
            }
            let v = prev.complement_basis(&s)?.remove(0);
            factors.push(factor_of(&ambient, &prev, &v)?);
            let sub = Submodule::new(ambient.clone(), s)?;
            prev = sub.space().clone();
            subs.push(sub);
        }
        Ok(CompositionSeries {
            ambient,
            flags: subs,
            factors,
        })
    }

    pub fn ambient(&self) -> &Representation {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// `M_1, ..., M_d`.
    pub fn flags(&self) -> &[Submodule] {
        &self.flags
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    fn flag_space(&self, i: usize) -> Subspace {
        if i == 0 {
            Subspace::zero(self.ambient.field(), self.ambient.dim())
        } else {
            self.flags[i - 1].space().clone()
        }
    }

    /// Representation of `M_i` on the canonical basis of the flag, `1 <= i <= d`.
    pub fn stage(&self, i: usize) -> Representation {
        self.flags[i - 1].representation()
    }

    /// Matrix of the inclusion `M_i -> M_{i+1}` in stage coordinates.
    pub fn inclusion(&self, i: usize) -> Matrix {
        self.flags[i]
            .space()
            .coords_matrix(self.flags[i - 1].space().basis())
            .expect("flags are nested")
    }

    /// Re-checks nesting, invariance, one-dimensional factors and the recorded factors.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let d = self.ambient.dim();
        r.check_with(
            "flag count equals dimension",
            self.flags.len() == d,
            format!("{} vs {d}", self.flags.len()),
        );
        r.check(
            "factor count equals dimension",
            self.factors.len() == self.flags.len(),
        );
        let mut prev = Subspace::zero(self.ambient.field(), d);
        for (i, s) in self.flags.iter().enumerate() {
            let space = s.space();
            let ok = space.dim() == i + 1 && prev.is_subspace_of(space);
            r.check(format!("M_{} extends M_{} by one dimension", i + 1, i), ok);
            r.check(
                format!("M_{} is a submodule", i + 1),
                s.ambient() == &self.ambient && crate::module::is_invariant(&self.ambient, space),
            );
            if ok {
                let v = prev.complement_basis(space).expect("nested").remove(0);
                let f = factor_of(&self.ambient, &prev, &v);
                r.check(
                    format!("factor {} matches its idempotent", i + 1),
                    f.as_ref().ok() == self.factors.get(i),
                );
            }
            prev = space.clone();
        }
        r
    }
}

/// Common kernel of the radical generators.
pub fn socle(r: &Representation) -> Submodule {
    let mut s = Subspace::full(r.field(), r.dim());
    for &g in r.algebra().radical_generators() {
        s = s.intersect(&r.mat(g).kernel()).expect("same ambient");
    }
    Submodule::new(r.clone(), s).expect("the socle is a submodule")
}

/// Bottom-up series through socles of successive quotients.
pub fn composition_series(r: &Representation) -> Result<CompositionSeries> {
    let d = r.dim();
    let field = r.field();
    let mut flag = Subspace::zero(field, d);
    let mut flags = Vec::with_capacity(d);
    while flag.dim() < d {
        let (c, p) = complement_projection(&flag);
        let qmats: Vec<Matrix> = r.mats().iter().map(|m| &(&p * m) * &c).collect();
        let q = Representation::new(r.algebra().clone(), c.cols(), qmats)?;
        let soc = socle(&q);
        let chosen = (0..r.algebra().idempotents().len()).find_map(|k| {
            let es = soc.space().map(q.idempotent_mat(k));
            (!es.is_zero()).then(|| es.vectors().remove(0))
        });
        let v = chosen.ok_or_else(|| {
            Error::InvalidInput(
                "no declared idempotent acts on the socle; check the radical generators".into(),
            )
        })?;
        let lifted = c.apply(&v);
        let mut vs = flag.vectors();
        vs.push(lifted);
        let next = Subspace::span(field, d, &vs);
        if !crate::module::is_invariant(r, &next) {
            return Err(Error::SimpleNotOneDimensional);
        }
        flags.push(next.clone());
        flag = next;
    }
    CompositionSeries::new(r.clone(), flags)
}

/// Basis `x_1..x_d` with `x_i` the first complement vector of `M_{i-1}` in `M_i`.
pub fn adapted_basis(s: &CompositionSeries) -> Matrix {
    let d = s.len();
    let cols: Vec<Vector> = (1..=d)
        .map(|i| {
            s.flag_space(i - 1)
                .complement_basis(&s.flag_space(i))
                .expect("nested")
                .remove(0)
        })
        .collect();
    Matrix::from_columns(s.ambient.field(), d, &cols)
}

pub fn series_to_triangular(s: &CompositionSeries) -> Result<TriangularRep> {
    let p = adapted_basis(s);
    TriangularRep::new(s.ambient.change_basis(&p)?)
}

/// Coordinate flags `span(u_1..u_i)`.
pub fn triangular_to_series(t: &TriangularRep) -> Result<CompositionSeries> {
    let d = t.dim();
    let field = t.rep.field();
    let id = Matrix::identity(field, d);
    let flags = (1..=d)
        .map(|i| Subspace::span(field, d, &id.block(0, d, 0, i).columns()))
        .collect();
    CompositionSeries::new(t.rep.clone(), flags)
}

pub fn composition_vector(s: &CompositionSeries) -> CompositionVector {
    CompositionVector {
        entries: s.factors.clone(),
    }
}

/// `A_i^c`: diagonal 0/1 matrix with a 1 in position `j` exactly when `c_j = e_i`.
pub fn tc_idempotent_matrices(algebra: &AlgebraPresentation, c: &CompositionVector) -> Vec<Matrix> {
    let field = algebra.field();
    let d = c.entries.len();
    (0..algebra.idempotents().len())
        .map(|i| {
            let mut a = Matrix::zeros(field, d, d);
            for (j, &cj) in c.entries.iter().enumerate() {
                if cj == i {
                    a.set(j, j, field.one());
                }
            }
            a
        })
        .collect()
}

pub fn tc_membership(t: &TriangularRep, c: &CompositionVector) -> bool {
    c.entries.len() == t.dim()
        && tc_idempotent_matrices(t.rep.algebra(), c)
            .iter()
            .enumerate()
            .all(|(i, a)| t.rep.idempotent_mat(i) == a)
}

fn idempotent_adapted_basis(s: &CompositionSeries) -> Matrix {
    let d = s.len();
    let cols: Vec<Vector> = (1..=d)
        .map(|l| {
            let x = s
                .flag_space(l - 1)
                .complement_basis(&s.flag_space(l))
                .expect("nested")
                .remove(0);
            s.ambient.idempotent_mat(s.factors[l - 1]).apply(&x)
        })
        .collect();
    Matrix::from_columns(s.ambient.field(), d, &cols)
}

/// Triangularizes both modules so that every idempotent has the same matrix in each.
pub fn simultaneous_triangularize(
    m: &Representation,
    n: &Representation,
    sm: &CompositionSeries,
    sn: &CompositionSeries,
) -> Result<(TriangularRep, TriangularRep)> {
    if sm.ambient() != m || sn.ambient() != n {
        return Err(Error::InvalidInput(
            "series must belong to the given modules".into(),
        ));
    }
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let (cm, cn) = (composition_vector(sm), composition_vector(sn));
    if cm != cn {
        return Err(Error::VectorMismatch(format!("{cm} vs {cn}")));
    }
    let tm = TriangularRep::new(m.change_basis(&idempotent_adapted_basis(sm))?)?;
    let tn = TriangularRep::new(n.change_basis(&idempotent_adapted_basis(sn))?)?;
    Ok((tm, tn))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesIsoVerdict {
    /// Carries an invertible upper-triangular intertwiner.
    Isomorphic(Matrix),
    NotIsomorphic,
}

impl SeriesIsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, SeriesIsoVerdict::Isomorphic(_))
    }
}

const EXHAUSTIVE_LIMIT: u128 = 1 << 16;

/// Chooses coefficients so that every diagonal form is nonzero, fixing each form when its
/// last coefficient is chosen. Returns `None` if some step runs out of candidate values.
fn greedy_coefficients(
    forms: &[Vec<Scalar>],
    k: usize,
    field: FieldSpec,
    candidates: u64,
) -> Option<Vec<Scalar>> {
    let mut coeffs: Vec<Scalar> = Vec::with_capacity(k);
    for j in 0..k {
        let closing: Vec<&Vec<Scalar>> = forms
            .iter()
            .filter(|f| f.iter().rposition(|x| !x.is_zero()) == Some(j))
            .collect();
        let value = (0..candidates)
            .map(|v| field.from_i64(v as i64))
            .find(|c| {
                closing.iter().all(|f| {
                    let mut acc = c * &f[j];
                    for (x, y) in f[..j].iter().zip(&coeffs) {
                        acc = &acc + &(x * y);
                    }
                    !acc.is_zero()
                })
            })?;
        coeffs.push(value);
    }
    Some(coeffs)
}

/// Decides whether an invertible upper-triangular intertwiner `a -> b` exists.
///
/// An upper-triangular matrix is invertible iff its diagonal is nonzero, so the answer is
/// no exactly when some diagonal entry vanishes on the whole intertwiner space.
pub fn series_isomorphic(
    a: &TriangularRep,
    b: &TriangularRep,
    exhaustive: bool,
) -> Result<SeriesIsoVerdict> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let d = a.dim();
    let field = a.rep.field();
    let basis = upper_triangular_intertwiners(&a.rep, &b.rep)?;
    let k = basis.len();
    let forms: Vec<Vec<Scalar>> = (0..d)
        .map(|i| basis.iter().map(|h| h.get(i, i).clone()).collect())
        .collect();
    if forms.iter().any(|f| f.iter().all(Scalar::is_zero)) {
        return Ok(SeriesIsoVerdict::NotIsomorphic);
    }
    let combine = |coeffs: &[Scalar]| {
        let mut h = Matrix::zeros(field, d, d);
        for (m, c) in basis.iter().zip(coeffs) {
            h = h.add(&m.scale(c));
        }
        h
    };
    let accept = |h: Matrix| -> Result<SeriesIsoVerdict> {
        if h.inverse().is_none() || !intertwines(&a.rep, &b.rep, &h) || !h.is_upper_triangular() {
            return Err(Error::InternalInvariantViolation(
                "series witness failed verification".into(),
            ));
        }
        Ok(SeriesIsoVerdict::Isomorphic(h))
    };
    let candidates = match field.order() {
        Some(p) => p.min(d as u64 + 1),
        None => d as u64 + 1,
    };
    if let Some(c) = greedy_coefficients(&forms, k, field, candidates) {
        return accept(combine(&c));
    }
    let p = field
        .order()
        .expect("greedy choice always succeeds over the rationals");
    let total = (p as u128).checked_pow(k as u32);
    if !exhaustive || !total.is_some_and(|t| t <= EXHAUSTIVE_LIMIT) {
        return Err(Error::FieldTooSmall(p as usize));
    }
    for idx in 0..total.unwrap() as u64 {
        let mut rest = idx;
        let coeffs: Vec<Scalar> = (0..k)
            .map(|_| {
                let c = rest % p;
                rest /= p;
                field.from_i64(c as i64)
            })
            .collect();
        let h = combine(&coeffs);
        if h.inverse().is_some() {
            return accept(h);
        }
    }
    Ok(SeriesIsoVerdict::NotIsomorphic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::{is_isomorphic, SearchOptions};

    #[test]
    fn socles() {
        let f = FieldSpec::Rationals;
        let d = fixtures::DualNumbers::new(f);
        assert!(socle(&d.s3()).space().is_full());
        assert_eq!(socle(&d.lambda()).dim(), 1);
        let k = fixtures::Kronecker::new(f);
        let soc = socle(&k.i2());
        assert_eq!(soc.dim(), 1);
        assert_eq!(soc.space().pivots(), &[2]);
    }

    #[test]
    fn simple_module_has_a_one_step_series() {
        let k = fixtures::Kronecker::new(FieldSpec::Rationals);
        let s = composition_series(&k.s2()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(composition_vector(&s).entries, vec![1]);
    }

    #[test]
    fn regular_dual_numbers_series() {
        let d = fixtures::DualNumbers::new(FieldSpec::Rationals);
        let s = composition_series(&d.lambda()).unwrap();
        assert_eq!(s.factors(), &[0, 0]);
        assert_eq!(s.flags()[0].space(), socle(&d.lambda()).space());
    }

    #[test]
    fn extracted_series_passes_through_the_socle() {
        let t = fixtures::Truncated::new(FieldSpec::Rationals, 3);
        let s = composition_series(&t.mu()).unwrap();
        assert!(s.validate().is_valid());
        assert_eq!(s.flags()[1].space(), socle(&t.mu()).space());
        assert_eq!(series_to_triangular(&s).unwrap().rep(), &t.mu());

        let m = t.s().oplus(&t.jordan(2)).unwrap();
        let s = composition_series(&m).unwrap();
        assert_eq!(s.flags()[1].space(), socle(&m).space());
        assert_eq!(series_to_triangular(&s).unwrap().rep(), &t.nu_prime());
    }

    #[test]
    fn triangular_series_stages_are_truncations() {
        let t = fixtures::Truncated::new(FieldSpec::Rationals, 3);
        let nu = TriangularRep::new(t.nu()).unwrap();
        let s = triangular_to_series(&nu).unwrap();
        assert!(s.validate().is_valid());
        for i in 1..=3 {
            assert_eq!(s.stage(i), nu.stage(i));
        }
        assert!(
            is_isomorphic(&s.stage(2), &t.jordan(2), SearchOptions::default())
                .unwrap()
                .is_isomorphic()
        );
    }

    #[test]
    fn round_trip_keeps_factors() {
        let k = fixtures::Kronecker::new(FieldSpec::Rationals);
        let s = composition_series(&k.dtr_s1()).unwrap();
        let back = triangular_to_series(&series_to_triangular(&s).unwrap()).unwrap();
        assert_eq!(back.factors(), s.factors());
    }

    #[test]
    fn tc_matrices_partition_the_identity() {
        let k = fixtures::Kronecker::new(FieldSpec::Rationals);
        let c = CompositionVector {
            entries: vec![1, 1, 0, 0],
        };
        let a = tc_idempotent_matrices(k.algebra(), &c);
        assert_eq!(
            a[0],
            Matrix::from_i64(
                FieldSpec::Rationals,
                &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]
            )
        );
        assert!(a[0].add(&a[1]).is_identity());
        assert!(tc_membership(&TriangularRep::new(k.r2_mu()).unwrap(), &c));
    }

    #[test]
    fn single_factor_tc_matrices() {
        let k = fixtures::Kronecker::new(FieldSpec::Rationals);
        let a = tc_idempotent_matrices(k.algebra(), &CompositionVector { entries: vec![0] });
        assert!(a[0].is_identity());
        assert!(a[1].is_zero());
    }

    #[test]
    fn series_isomorphism_distinguishes_flags() {
        let t = fixtures::Truncated::new(FieldSpec::Rationals, 3);
        let mu = TriangularRep::new(t.mu()).unwrap();
        let nu = TriangularRep::new(t.nu()).unwrap();
        let nu2 = TriangularRep::new(t.nu_prime()).unwrap();
        assert!(series_isomorphic(&mu, &mu, false).unwrap().is_isomorphic());
        assert_eq!(
            series_isomorphic(&mu, &nu, false).unwrap(),
            SeriesIsoVerdict::NotIsomorphic
        );
        assert_eq!(
            series_isomorphic(&mu, &nu2, false).unwrap(),
            SeriesIsoVerdict::NotIsomorphic
        );
    }

    #[test]
    fn tiny_fields_fall_back_to_enumeration() {
        let f = FieldSpec::PrimeField(2);
        let t = fixtures::Truncated::new(f, 3);
        let s = t.s().oplus(&t.s()).unwrap().oplus(&t.s()).unwrap();
        let tri = TriangularRep::new(s).unwrap();
        assert!(series_isomorphic(&tri, &tri, true).unwrap().is_isomorphic());
    }

    #[test]
    fn simultaneous_triangularization_of_equal_inputs() {
        let t = fixtures::Truncated::new(FieldSpec::Rationals, 3);
        let m = t.jordan(3);
        let s = composition_series(&m).unwrap();
        let (a, b) = simultaneous_triangularize(&m, &m, &s, &s).unwrap();
        assert_eq!(a, b);
    }
}
