//! Algebra presentations, representations and module homomorphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::scalar::{FieldSpec, Scalar};

/// How the unit of the algebra is expressed in terms of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UnitRule {
    /// The declared idempotents sum to 1.
    SumOfIdempotents,
    /// The generator with this index is 1.
    Generator(usize),
}

/// `coeff * g_{w_1} g_{w_2} ... g_{w_k}`; words are nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub word: Vec<usize>,
}

/// A noncommutative polynomial that must vanish in every representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<Term>,
}

/// A finitely presented algebra with declared idempotents and radical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    name: String,
    field: FieldSpec,
    generators: Vec<String>,
    idempotents: Vec<usize>,
    radical: Vec<usize>,
    relations: Vec<Relation>,
    unit: UnitRule,
}

impl AlgebraPresentation {
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        generators: Vec<String>,
        idempotents: Vec<usize>,
        radical: Vec<usize>,
        relations: Vec<Relation>,
        unit: UnitRule,
    ) -> Result<Self> {
        let n = generators.len();
        let bad = |m: String| Err(Error::InvalidInput(m));
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return bad(format!("duplicate generator {g:?}"));
            }
        }
        if idempotents.iter().chain(&radical).any(|&i| i >= n) {
            return bad("idempotent or radical index out of range".into());
        }
        if idempotents.iter().any(|i| radical.contains(i)) {
            return bad("a generator cannot be both idempotent and radical".into());
        }
        for r in &relations {
            for t in &r.terms {
                if t.word.is_empty() {
                    return bad("relation words must be nonempty".into());
                }
                if t.coeff.is_zero() {
                    return bad("relation coefficients must be nonzero".into());
                }
                if t.coeff.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field.to_string(),
                        found: t.coeff.field().to_string(),
                    });
                }
                if t.word.iter().any(|&g| g >= n) {
                    return bad("relation uses an unknown generator".into());
                }
            }
        }
        if let UnitRule::Generator(g) = unit {
            if g >= n {
                return bad("unit generator out of range".into());
            }
        }
        Ok(AlgebraPresentation {
            name: name.into(),
            field,
            generators,
            idempotents,
            radical,
            relations,
            unit,
        })
    }

    /// `k[X]/(X^n)` with generators `1` (the unit, sole idempotent) and `X` (radical).
    pub fn truncated_polynomial(field: FieldSpec, n: usize) -> Self {
        assert!(n >= 1);
        AlgebraPresentation::new(
            format!("k[X]/(X^{n})"),
            field,
            vec!["1".into(), "X".into()],
            vec![0],
            vec![1],
            vec![Relation {
                terms: vec![Term {
                    coeff: field.one(),
                    word: vec![1; n],
                }],
            }],
            UnitRule::Generator(0),
        )
        .expect("well-formed presentation")
    }

    /// Path algebra of a quiver modulo the given path relations.
    ///
    /// Generators are the vertex idempotents `e1..en` followed by the arrows. Each arrow
    /// `a: s -> t` gets the relation `a = e_t a e_s`. Path relations are sums of
    /// `(coefficient, arrows)` with arrows listed in composition order (leftmost applied last).
    pub fn quiver(
        name: impl Into<String>,
        field: FieldSpec,
        vertices: usize,
        arrows: &[(&str, usize, usize)],
        path_relations: &[Vec<(i64, Vec<&str>)>],
    ) -> Result<Self> {
        let mut generators: Vec<String> = (1..=vertices).map(|i| format!("e{i}")).collect();
        generators.extend(arrows.iter().map(|(a, _, _)| a.to_string()));
        let idempotents: Vec<usize> = (0..vertices).collect();
        let radical: Vec<usize> = (vertices..vertices + arrows.len()).collect();
        let mut relations = Vec::new();
        for (k, &(_, s, t)) in arrows.iter().enumerate() {
            if s == 0 || t == 0 || s > vertices || t > vertices {
                return Err(Error::InvalidInput("arrow endpoint out of range".into()));
            }
            let a = vertices + k;
            relations.push(Relation {
                terms: vec![
                    Term {
                        coeff: field.one(),
                        word: vec![a],
                    },
                    Term {
                        coeff: field.from_i64(-1),
                        word: vec![t - 1, a, s - 1],
                    },
                ],
            });
        }
        for rel in path_relations {
            let mut terms = Vec::new();
            for (c, path) in rel {
                let word =
                    path.iter()
                        .map(|name| {
                            generators.iter().position(|g| g == name).ok_or_else(|| {
                                Error::InvalidInput(format!("unknown arrow {name:?}"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                terms.push(Term {
                    coeff: field.from_i64(*c),
                    word,
                });
            }
            relations.push(Relation { terms });
        }
        AlgebraPresentation::new(
            name,
            field,
            generators,
            idempotents,
            radical,
            relations,
            UnitRule::SumOfIdempotents,
        )
    }

    /// The Kronecker algebra: two arrows `alpha, beta: 1 -> 2`.
    pub fn kronecker(field: FieldSpec) -> Self {
        Self::quiver(
            "Kronecker",
            field,
            2,
            &[("alpha", 1, 2), ("beta", 1, 2)],
            &[],
        )
        .expect("valid quiver")
    }

    /// Two vertices joined by `alpha: 1 -> 2` and `beta: 2 -> 1` with both composites zero.
    pub fn two_cycle(field: FieldSpec) -> Self {
        Self::quiver(
            "two-cycle",
            field,
            2,
            &[("alpha", 1, 2), ("beta", 2, 1)],
            &[
                vec![(1, vec!["alpha", "beta"])],
                vec![(1, vec!["beta", "alpha"])],
            ],
        )
        .expect("valid quiver")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Generator indices of the declared idempotents, in declaration order.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn radical_generators(&self) -> &[usize] {
        &self.radical
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn unit(&self) -> &UnitRule {
        &self.unit
    }

    /// Name of the `k`-th declared idempotent.
    pub fn idempotent_name(&self, k: usize) -> &str {
        &self.generators[self.idempotents[k]]
    }
}

/// A `dim`-dimensional representation: one `dim x dim` matrix per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    algebra: Arc<AlgebraPresentation>,
    dim: usize,
    mats: Vec<Matrix>,
}

impl Representation {
    /// Checks shapes and fields only; use [`Representation::validate`] for the relations.
    pub fn new(algebra: Arc<AlgebraPresentation>, dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        if mats.len() != algebra.generators.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} generators",
                mats.len(),
                algebra.generators.len()
            )));
        }
        for m in &mats {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field {
                return Err(Error::FieldMismatch {
                    expected: algebra.field.to_string(),
                    found: m.field().to_string(),
                });
            }
        }
        Ok(Representation { algebra, dim, mats })
    }

    /// Like [`Representation::new`] but also requires every relation and unit condition to hold.
    pub fn new_valid(
        algebra: Arc<AlgebraPresentation>,
        dim: usize,
        mats: Vec<Matrix>,
    ) -> Result<Self> {
        let r = Self::new(algebra, dim, mats)?;
        let report = r.validate();
        if !report.is_valid() {
            return Err(Error::VerificationFailed(format!(
                "representation invalid:\n{report}"
            )));
        }
        Ok(r)
    }

    pub fn zero(algebra: Arc<AlgebraPresentation>) -> Self {
        let f = algebra.field;
        let mats = vec![Matrix::zeros(f, 0, 0); algebra.generators.len()];
        Representation {
            algebra,
            dim: 0,
            mats,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, generator: usize) -> &Matrix {
        &self.mats[generator]
    }

    pub fn mat_by_name(&self, name: &str) -> Option<&Matrix> {
        self.algebra.generator_index(name).map(|i| &self.mats[i])
    }

    /// Image of the `k`-th declared idempotent.
    pub fn idempotent_mat(&self, k: usize) -> &Matrix {
        &self.mats[self.algebra.idempotents[k]]
    }

    /// Product `g_{w_1} ... g_{w_k}` acting on column vectors.
    pub fn eval_word(&self, word: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dim);
        for &g in word {
            acc = &acc * &self.mats[g];
        }
        acc
    }

    pub fn eval_relation(&self, rel: &Relation) -> Matrix {
        let mut acc = Matrix::zeros(self.field(), self.dim, self.dim);
        for t in &rel.terms {
            acc = acc.add(&self.eval_word(&t.word).scale(&t.coeff));
        }
        acc
    }

    /// Checks relations, idempotent conditions and the unit rule.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let gens = &self.algebra.generators;
        for (i, rel) in self.algebra.relations.iter().enumerate() {
            let value = self.eval_relation(rel);
            if value.is_zero() {
                report.check(format!("relation {i} vanishes"), true);
            } else {
                report.check_with(
                    format!("relation {i} vanishes"),
                    false,
                    format!("evaluates to {}", flat(&value)),
                );
            }
        }
        let idem = &self.algebra.idempotents;
        for &e in idem {
            let m = &self.mats[e];
            report.check(format!("{} is idempotent", gens[e]), &(m * m) == m);
        }
        for (a, &e) in idem.iter().enumerate() {
            for &f in &idem[a + 1..] {
                let orth = (&self.mats[e] * &self.mats[f]).is_zero()
                    && (&self.mats[f] * &self.mats[e]).is_zero();
                report.check(format!("{} and {} are orthogonal", gens[e], gens[f]), orth);
            }
        }
        match self.algebra.unit {
            UnitRule::SumOfIdempotents => {
                let mut sum = Matrix::zeros(self.field(), self.dim, self.dim);
                for &e in idem {
                    sum = sum.add(&self.mats[e]);
                }
                report.check("idempotents sum to the identity", sum.is_identity());
            }
            UnitRule::Generator(g) => {
                report.check(
                    format!("{} acts as the identity", gens[g]),
                    self.mats[g].is_identity(),
                );
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    fn check_same_algebra(&self, other: &Representation) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Block-diagonal direct sum, `self` first.
    pub fn oplus(&self, other: &Representation) -> Result<Representation> {
        self.check_same_algebra(other)?;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            mats,
        })
    }

    /// Representation in the basis given by the columns of the invertible matrix `p`,
    /// i.e. `p^{-1} g p` for every generator.
    pub fn change_basis(&self, p: &Matrix) -> Result<Representation> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidInput("change of basis matrix is singular".into()))?;
        let mats = self.mats.iter().map(|m| &(&inv * m) * p).collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dim: self.dim,
            mats,
        })
    }

    /// Top-left `k x k` truncation of every generator matrix.
    pub fn truncate(&self, k: usize) -> Representation {
        Representation {
            algebra: self.algebra.clone(),
            dim: k,
            mats: self.mats.iter().map(|m| m.truncate(k)).collect(),
        }
    }

    /// Splits a block-diagonal representation after the first `k` coordinates.
    pub fn split_block(&self, k: usize) -> Result<(Representation, Representation)> {
        if k > self.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot split dimension {} at {k}",
                self.dim
            )));
        }
        let d = self.dim;
        for m in &self.mats {
            if !m.block(0, k, k, d).is_zero() || !m.block(k, d, 0, k).is_zero() {
                return Err(Error::NotBlockDiagonal);
            }
        }
        let top = self.mats.iter().map(|m| m.block(0, k, 0, k)).collect();
        let bottom = self.mats.iter().map(|m| m.block(k, d, k, d)).collect();
        Ok((
            Representation {
                algebra: self.algebra.clone(),
                dim: k,
                mats: top,
            },
            Representation {
                algebra: self.algebra.clone(),
                dim: d - k,
                mats: bottom,
            },
        ))
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap {
            source: self.clone(),
            target: self.clone(),
            mat: Matrix::identity(self.field(), self.dim),
        }
    }
}

fn flat(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// `a ⊕ b` with the canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Representation,
    pub injections: [ModuleMap; 2],
    pub projections: [ModuleMap; 2],
}

pub fn direct_sum(a: &Representation, b: &Representation) -> Result<DirectSum> {
    let sum = a.oplus(b)?;
    let f = a.field();
    let (m, n) = (a.dim(), b.dim());
    let id_a = Matrix::identity(f, m);
    let id_b = Matrix::identity(f, n);
    let inj_a = id_a.vstack(&Matrix::zeros(f, n, m));
    let inj_b = Matrix::zeros(f, m, n).vstack(&id_b);
    let proj_a = id_a.hstack(&Matrix::zeros(f, m, n));
    let proj_b = Matrix::zeros(f, n, m).hstack(&id_b);
    Ok(DirectSum {
        injections: [
            ModuleMap::new_unchecked(a.clone(), sum.clone(), inj_a),
            ModuleMap::new_unchecked(b.clone(), sum.clone(), inj_b),
        ],
        projections: [
            ModuleMap::new_unchecked(sum.clone(), a.clone(), proj_a),
            ModuleMap::new_unchecked(sum.clone(), b.clone(), proj_b),
        ],
        sum,
    })
}

/// Whether `mat` (target.dim x source.dim) intertwines the two actions.
pub fn intertwines(source: &Representation, target: &Representation, mat: &Matrix) -> bool {
    mat.rows() == target.dim()
        && mat.cols() == source.dim()
        && source.algebra == target.algebra
        && source
            .mats
            .iter()
            .zip(&target.mats)
            .all(|(s, t)| (mat * s) == (t * mat))
}

/// An element of `Hom(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    source: Representation,
    target: Representation,
    mat: Matrix,
}

impl ModuleMap {
    pub fn new(source: Representation, target: Representation, mat: Matrix) -> Result<Self> {
        source.check_same_algebra(&target)?;
        if mat.rows() != target.dim() || mat.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if !intertwines(&source, &target, &mat) {
            return Err(Error::NotHomomorphism);
        }
        Ok(ModuleMap {
            source,
            target,
            mat,
        })
    }

    /// For maps that hold by construction.
    pub(crate) fn new_unchecked(
        source: Representation,
        target: Representation,
        mat: Matrix,
    ) -> Self {
        debug_assert!(intertwines(&source, &target, &mat));
        ModuleMap {
            source,
            target,
            mat,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch(
                "composable maps must share a module".into(),
            ));
        }
        Ok(ModuleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            mat: &self.mat * &first.mat,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.mat.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.mat.is_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }
}
