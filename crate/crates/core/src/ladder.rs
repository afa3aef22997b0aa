//! Ladder certificates for triangular degenerations, one-parameter families and the
//! embedding into representations of upper-triangular matrices over the algebra.

use std::sync::Arc;

use crate::algebra::{intertwines, AlgebraPresentation, Relation, Representation, Term, UnitRule};
use crate::certificate::RiedtmannCertificate;
use crate::error::{Error, Result};
use crate::hom::upper_triangular_intertwiners;
use crate::matrix::Matrix;
use crate::module::Submodule;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::series::{CompositionSeries, CompositionVector, TriangularRep};
use crate::subspace::Subspace;

/// Columns `0 -> X_i -> X_i ⊕ M_i -> N_i -> 0` over two composition series, joined by
/// `h_i: X_i -> X_{i+1}` and the flag inclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCertificate {
    m_series: CompositionSeries,
    n_series: CompositionSeries,
    x: Vec<Representation>,
    h: Vec<Matrix>,
    fg: Vec<Matrix>,
    q: Vec<Matrix>,
}

impl LadderCertificate {
    /// Checks lengths only; see [`verify_ladder`].
    pub fn new(
        m_series: CompositionSeries,
        n_series: CompositionSeries,
        x: Vec<Representation>,
        h: Vec<Matrix>,
        fg: Vec<Matrix>,
        q: Vec<Matrix>,
    ) -> Result<Self> {
        let d = m_series.len();
        if d == 0 {
            return Err(Error::InvalidInput(
                "a ladder needs at least one column".into(),
            ));
        }
        if n_series.len() != d || x.len() != d || fg.len() != d || q.len() != d || h.len() != d - 1
        {
            return Err(Error::DimensionMismatch(format!(
                "ladder of length {d} needs {d} X, fg and q entries and {} h maps",
                d - 1
            )));
        }
        Ok(LadderCertificate {
            m_series,
            n_series,
            x,
            h,
            fg,
            q,
        })
    }

    pub fn len(&self) -> usize {
        self.m_series.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn m_series(&self) -> &CompositionSeries {
        &self.m_series
    }

    pub fn n_series(&self) -> &CompositionSeries {
        &self.n_series
    }

    pub fn x(&self) -> &[Representation] {
        &self.x
    }

    pub fn h(&self) -> &[Matrix] {
        &self.h
    }

    pub fn fg(&self) -> &[Matrix] {
        &self.fg
    }

    pub fn q(&self) -> &[Matrix] {
        &self.q
    }

    /// Column `i` (1-based) as a certificate for `M_i <=deg N_i`.
    pub fn column(&self, i: usize) -> Result<RiedtmannCertificate> {
        let x = &self.x[i - 1];
        let fg = &self.fg[i - 1];
        let dx = x.dim();
        if fg.cols() != dx || fg.rows() < dx {
            return Err(Error::DimensionMismatch(format!(
                "column map {i} has the wrong shape"
            )));
        }
        RiedtmannCertificate::new(
            x.clone(),
            self.m_series.stage(i),
            self.n_series.stage(i),
            fg.block(0, dx, 0, dx),
            fg.block(dx, fg.rows(), 0, dx),
            self.q[i - 1].clone(),
        )
    }

    /// `h_i ⊕ i_i: X_i ⊕ M_i -> X_{i+1} ⊕ M_{i+1}`.
    fn rung(&self, i: usize) -> Matrix {
        self.h[i - 1].block_diag(&self.m_series.inclusion(i))
    }

    pub fn is_monic(&self) -> bool {
        self.h.iter().all(Matrix::is_injective)
    }
}

/// Column validity, both commuting squares and both series.
pub fn verify_ladder(lc: &LadderCertificate) -> Report {
    let mut r = Report::new();
    let d = lc.len();
    r.absorb("M-series", lc.m_series.validate());
    r.absorb("N-series", lc.n_series.validate());
    let algebra = lc.m_series.ambient().algebra();
    r.check(
        "all modules share one algebra",
        lc.n_series.ambient().algebra() == algebra && lc.x.iter().all(|x| x.algebra() == algebra),
    );
    let mut shapes_ok = true;
    for i in 1..=d {
        match lc.column(i) {
            Ok(c) => r.absorb(&format!("column {i}"), c.verify()),
            Err(e) => {
                shapes_ok = false;
                r.check_with(format!("column {i} is well formed"), false, e.to_string());
            }
        }
    }
    for i in 1..d {
        let h = &lc.h[i - 1];
        let (xi, xn) = (&lc.x[i - 1], &lc.x[i]);
        if h.rows() != xn.dim() || h.cols() != xi.dim() {
            shapes_ok = false;
            r.check_with(
                format!("h_{i} is well formed"),
                false,
                format!("{}x{}", h.rows(), h.cols()),
            );
        }
    }
    if !shapes_ok {
        return r;
    }
    for i in 1..d {
        r.check(
            format!("h_{i} intertwines X_{i} -> X_{}", i + 1),
            intertwines(&lc.x[i - 1], &lc.x[i], &lc.h[i - 1]),
        );
        let rung = lc.rung(i);
        r.check(
            format!("upper square {i} commutes"),
            &lc.fg[i] * &lc.h[i - 1] == &rung * &lc.fg[i - 1],
        );
        let j = lc.n_series.inclusion(i);
        r.check(
            format!("lower square {i} commutes"),
            &j * &lc.q[i - 1] == &lc.q[i] * &rung,
        );
    }
    r
}

fn require_valid(lc: &LadderCertificate) -> Result<()> {
    let report = verify_ladder(lc);
    if !report.is_valid() {
        return Err(Error::VerificationFailed(format!(
            "ladder does not verify:\n{report}"
        )));
    }
    Ok(())
}

/// Replaces columns by images of the `h` maps until every `h_i` is injective.
pub fn make_monic(lc: &LadderCertificate) -> Result<LadderCertificate> {
    require_valid(lc)?;
    let mut out = lc.clone();
    while let Some(r) = (1..out.len()).rev().find(|&r| !out.h[r - 1].is_injective()) {
        let next = &out.x[r];
        let img = Submodule::new(next.clone(), out.h[r - 1].image())
            .map_err(|_| Error::VerificationFailed(format!("image of h_{r} is not a submodule")))?;
        let iota = img.space().basis().clone();
        let xr = img.representation();
        let dx_next = next.dim();
        let fg_next = &out.fg[r];
        let f = img
            .space()
            .coords_matrix(&(&fg_next.block(0, dx_next, 0, dx_next) * &iota))
            .map_err(|_| {
                Error::VerificationFailed(format!("f_{} does not preserve im h_{r}", r + 1))
            })?;
        let g_next = &fg_next.block(dx_next, fg_next.rows(), 0, dx_next) * &iota;
        let inc = out.m_series.inclusion(r);
        let g = inc.solve(&g_next).ok_or_else(|| {
            Error::VerificationFailed(format!("g_{} does not land in M_{r}", r + 1))
        })?;
        let q = out
            .n_series
            .inclusion(r)
            .solve(&(&out.q[r] * &iota.block_diag(&inc)))
            .ok_or_else(|| {
                Error::VerificationFailed(format!("q_{} does not land in N_{r}", r + 1))
            })?;
        if r >= 2 {
            let hh = &out.h[r - 1] * &out.h[r - 2];
            out.h[r - 2] = img.space().coords_matrix(&hh)?;
        }
        out.h[r - 1] = iota;
        out.x[r - 1] = xr;
        out.fg[r - 1] = f.vstack(&g);
        out.q[r - 1] = q;
    }
    let report = verify_ladder(&out);
    if !report.is_valid() {
        return Err(Error::VerificationFailed(format!(
            "monic ladder does not verify:\n{report}"
        )));
    }
    Ok(out)
}

/// The family `t ↦ ν^t` attached to a monic ladder.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    ladder: LadderCertificate,
    /// Columns `b_1..b_d` in `X_d ⊕ M_d`.
    basis: Matrix,
}

impl DeformationFamily {
    pub fn ladder(&self) -> &LadderCertificate {
        &self.ladder
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn middle(&self) -> Representation {
        let d = self.ladder.len();
        self.ladder.x[d - 1]
            .oplus(self.ladder.m_series.ambient())
            .expect("ladder modules share an algebra")
    }
}

/// Chooses `b_i ∈ X_i ⊕ M_i`, extending `b_1..b_{i-1}` modulo the image of `(f_d; g_d)`.
///
/// With a constraint `c`, each `b_i` is taken in the image of the idempotent `c_i`.
pub fn build_family(
    lc: &LadderCertificate,
    constraint: Option<&CompositionVector>,
) -> Result<DeformationFamily> {
    if !lc.is_monic() {
        return Err(Error::InvalidInput(
            "every h_i must be injective; run make-monic first".into(),
        ));
    }
    let d = lc.len();
    if let Some(c) = constraint {
        if c.entries.len() != d {
            return Err(Error::VectorMismatch(format!(
                "constraint of length {} for a ladder of length {d}",
                c.entries.len()
            )));
        }
    }
    let middle = lc.x[d - 1].oplus(lc.m_series.ambient())?;
    let field = middle.field();
    let n = middle.dim();
    let mut embed = vec![Matrix::identity(field, n); d];
    for i in (1..d).rev() {
        embed[i - 1] = &embed[i] * &lc.rung(i);
    }
    let mut span = lc.fg[d - 1].image();
    let mut chosen = Vec::with_capacity(d);
    for i in 1..=d {
        let candidates = embed[i - 1].image().vectors();
        let pick = candidates
            .into_iter()
            .map(|v| match constraint {
                Some(c) => middle.idempotent_mat(c.entries[i - 1]).apply(&v),
                None => v,
            })
            .find(|v| !span.contains(v))
            .ok_or(Error::NoAdaptedBasis { index: i })?;
        span = span.sum(&Subspace::span(field, n, std::slice::from_ref(&pick)))?;
        chosen.push(pick);
    }
    Ok(DeformationFamily {
        ladder: lc.clone(),
        basis: Matrix::from_columns(field, n, &chosen),
    })
}

/// `ν^t`: the action on `span(B) ≅ (X_d ⊕ M_d) / im φ_t` with `φ_t = (f_d + t; g_d)`.
pub fn evaluate_family(fam: &DeformationFamily, t: &Scalar) -> Result<TriangularRep> {
    let lc = &fam.ladder;
    let d = lc.len();
    let middle = fam.middle();
    let field = middle.field();
    if t.field() != field {
        return Err(Error::FieldMismatch {
            expected: field.to_string(),
            found: t.field().to_string(),
        });
    }
    let dx = lc.x[d - 1].dim();
    let fg = &lc.fg[d - 1];
    let f = fg.block(0, dx, 0, dx);
    let g = fg.block(dx, fg.rows(), 0, dx);
    let phi = f.add(&Matrix::identity(field, dx).scale(t)).vstack(&g);
    if !phi.is_injective() {
        return Err(Error::BadParameter(t.to_string()));
    }
    let inv = phi
        .hstack(&fam.basis)
        .inverse()
        .ok_or_else(|| Error::BadParameter(t.to_string()))?;
    let proj = inv.block(dx, dx + d, 0, middle.dim());
    let mats = middle
        .mats()
        .iter()
        .map(|m| &(&proj * m) * &fam.basis)
        .collect();
    let rep = Representation::new(middle.algebra().clone(), d, mats)?;
    let tri = TriangularRep::new(rep)?;
    let report = tri.rep().validate();
    if !report.is_valid() {
        return Err(Error::InternalInvariantViolation(format!(
            "deformed representation is invalid:\n{report}"
        )));
    }
    Ok(tri)
}

/// Presentation of `d x d` upper-triangular matrices over the algebra.
///
/// Generators: `L_<g>` for each generator `g`, idempotents `E_i_i`, and `E_i_(i+1)`, which
/// carries the `i`-th diagonal block into the `(i+1)`-th.
pub fn upper_triangular_algebra(lambda: &AlgebraPresentation, d: usize) -> AlgebraPresentation {
    let field = lambda.field();
    let ng = lambda.generators().len();
    let mut generators: Vec<String> = lambda
        .generators()
        .iter()
        .map(|g| format!("L_{g}"))
        .collect();
    let e = |i: usize| ng + i;
    let arrow = |i: usize| ng + d + i;
    generators.extend((1..=d).map(|i| format!("E_{i}_{i}")));
    generators.extend((1..d).map(|i| format!("E_{i}_{}", i + 1)));
    let idempotents: Vec<usize> = (0..d).map(e).collect();
    let mut radical: Vec<usize> = lambda.radical_generators().to_vec();
    radical.extend((0..d.saturating_sub(1)).map(arrow));

    let one = field.one();
    let minus = field.from_i64(-1);
    let term = |c: &Scalar, word: Vec<usize>| Term {
        coeff: c.clone(),
        word,
    };
    let mut relations: Vec<Relation> = lambda.relations().to_vec();
    let mut unit_terms: Vec<Term> = match lambda.unit() {
        UnitRule::Generator(g) => vec![term(&one, vec![*g])],
        UnitRule::SumOfIdempotents => lambda
            .idempotents()
            .iter()
            .map(|&k| term(&one, vec![k]))
            .collect(),
    };
    unit_terms.extend((0..d).map(|i| term(&minus, vec![e(i)])));
    relations.push(Relation { terms: unit_terms });
    for j in 0..ng {
        for k in (0..d).map(e).chain((0..d.saturating_sub(1)).map(arrow)) {
            relations.push(Relation {
                terms: vec![term(&one, vec![j, k]), term(&minus, vec![k, j])],
            });
        }
    }
    for i in 0..d.saturating_sub(1) {
        relations.push(Relation {
            terms: vec![
                term(&one, vec![e(i + 1), arrow(i)]),
                term(&minus, vec![arrow(i)]),
            ],
        });
        relations.push(Relation {
            terms: vec![
                term(&one, vec![arrow(i), e(i)]),
                term(&minus, vec![arrow(i)]),
            ],
        });
    }
    AlgebraPresentation::new(
        format!("U_{d}({})", lambda.name()),
        field,
        generators,
        idempotents,
        radical,
        relations,
        UnitRule::SumOfIdempotents,
    )
    .expect("well-formed presentation")
}

/// Block representation of dimension `d(d+1)/2` built from the stages of `t`.
pub fn psi_embed(t: &TriangularRep) -> Representation {
    let d = t.dim();
    let rep = t.rep();
    let lambda = rep.algebra();
    let field = rep.field();
    let algebra = Arc::new(upper_triangular_algebra(lambda, d));
    let a = d * (d + 1) / 2;
    let offset = |i: usize| i * (i - 1) / 2;
    let mut mats = Vec::with_capacity(algebra.generators().len());
    for j in 0..lambda.generators().len() {
        let mut m = Matrix::zeros(field, a, a);
        for i in 1..=d {
            m.paste(offset(i), offset(i), &rep.mat(j).truncate(i));
        }
        mats.push(m);
    }
    for i in 1..=d {
        let mut m = Matrix::zeros(field, a, a);
        m.paste(offset(i), offset(i), &Matrix::identity(field, i));
        mats.push(m);
    }
    for i in 1..d {
        let mut m = Matrix::zeros(field, a, a);
        let inc = Matrix::identity(field, i).vstack(&Matrix::zeros(field, 1, i));
        m.paste(offset(i + 1), offset(i), &inc);
        mats.push(m);
    }
    Representation::new(algebra, a, mats).expect("block shapes")
}

/// `d(d+1)/2` minus the dimension of the upper-triangular endomorphisms.
pub fn orbit_dim_ud(t: &TriangularRep) -> Result<i64> {
    let d = t.dim() as i64;
    let stab = upper_triangular_intertwiners(t.rep(), t.rep())?.len() as i64;
    Ok(d * (d + 1) / 2 - stab)
}
