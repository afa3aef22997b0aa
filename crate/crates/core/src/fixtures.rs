//! Small named modules, certificates and ladders used by tests, golden files and demos.
//!
//! Bases: the dual numbers `k[X]/(X^2)` act on `Λ` with basis `(X, 1)`, so the socle is the
//! first coordinate. Jordan blocks over `k[X]/(X^n)` use the same socle-first order.
//! Quiver representations list the vertex-1 coordinates before the vertex-2 coordinates.

use std::sync::Arc;

use crate::algebra::{AlgebraPresentation, Representation};
use crate::certificate::RiedtmannCertificate;
use crate::ladder::LadderCertificate;
use crate::matrix::{Matrix, Vector};
use crate::module::{quotient_module, Submodule};
use crate::scalar::FieldSpec;
use crate::series::{triangular_to_series, TriangularRep};
use crate::subspace::Subspace;

fn m(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(field, rows)
}

fn unit(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// `k[X]/(X^n)` with generators `1, X`.
#[derive(Clone, Debug)]
pub struct Truncated {
    field: FieldSpec,
    alg: Arc<AlgebraPresentation>,
}

impl Truncated {
    pub fn new(field: FieldSpec, n: usize) -> Self {
        Truncated {
            field,
            alg: Arc::new(AlgebraPresentation::truncated_polynomial(field, n)),
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.alg
    }

    /// Module given by the matrix of `X`.
    pub fn from_x(&self, x: Matrix) -> Representation {
        let d = x.rows();
        Representation::new_valid(
            self.alg.clone(),
            d,
            vec![Matrix::identity(self.field, d), x],
        )
        .expect("nilpotent fixture")
    }

    /// Single Jordan block of size `k`, socle first.
    pub fn jordan(&self, k: usize) -> Representation {
        let mut x = Matrix::zeros(self.field, k, k);
        for i in 1..k {
            x.set(i - 1, i, self.field.one());
        }
        self.from_x(x)
    }

    pub fn s(&self) -> Representation {
        self.jordan(1)
    }

    fn corner(&self, i: usize, j: usize) -> Representation {
        let mut x = Matrix::zeros(self.field, 3, 3);
        x.set(i, j, self.field.one());
        self.from_x(x)
    }

    /// `X ↦ E_13`: the series `S ⊂ S ⊕ S ⊂ S ⊕ Y` through the socle.
    pub fn mu(&self) -> Representation {
        self.corner(0, 2)
    }

    /// `X ↦ E_12`: the series `S ⊂ Y ⊂ S ⊕ Y`.
    pub fn nu(&self) -> Representation {
        self.corner(0, 1)
    }

    /// `X ↦ E_23`: the series `S ⊂ S ⊕ S ⊂ S ⊕ Y` through the summand `S`.
    pub fn nu_prime(&self) -> Representation {
        self.corner(1, 2)
    }

    /// Nilpotent types of size 3: `(3)`, `(2,1)`, `(1,1,1)`.
    pub fn nilpotent_types(&self) -> Vec<(&'static str, Representation)> {
        let s = self.s();
        vec![
            ("3", self.jordan(3)),
            ("21", s.oplus(&self.jordan(2)).unwrap()),
            ("111", s.oplus(&s).unwrap().oplus(&s).unwrap()),
        ]
    }

    /// `0 -> S -> S ⊕ M -> S ⊕ M/⟨u_k⟩ -> 0` for a socle coordinate `u_k` of `M`.
    pub fn socle_split(&self, module: &Representation, k: usize) -> RiedtmannCertificate {
        let f = self.field;
        let d = module.dim();
        let sub = Submodule::new(module.clone(), Subspace::span(f, d, &[unit(f, d, k)]))
            .expect("socle vector");
        let (quot, proj) = quotient_module(module, &sub).unwrap();
        let s = self.s();
        let n = s.oplus(&quot).unwrap();
        let g = Matrix::from_columns(f, d, &[unit(f, d, k)]);
        let q = Matrix::identity(f, 1).block_diag(proj.matrix());
        RiedtmannCertificate::new(s, module.clone(), n, Matrix::zeros(f, 1, 1), g, q).unwrap()
    }

    /// `0 -> S ⊕ J_2 -> (S ⊕ J_2) ⊕ J_3 -> S^3 -> 0`, mapping `X` onto the radical of the middle.
    pub fn radical_cover_3_to_111(&self) -> RiedtmannCertificate {
        let f = self.field;
        let x = self.s().oplus(&self.jordan(2)).unwrap();
        let s3 = self.s().oplus(&self.s()).unwrap().oplus(&self.s()).unwrap();
        let fx = Matrix::from_i64(f, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        let g = Matrix::from_i64(f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let q = Matrix::from_i64(
            f,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 0, 0, 1],
            ],
        );
        RiedtmannCertificate::new(x, self.jordan(3), s3, fx, g, q).unwrap()
    }

    fn series(&self, r: Representation) -> crate::series::CompositionSeries {
        triangular_to_series(&TriangularRep::new(r).unwrap()).unwrap()
    }

    /// Ladder over the series of `ν` (top) degenerating to that of `μ`, with X-row `S, S, Y`.
    pub fn chi(&self) -> LadderCertificate {
        let f = self.field;
        LadderCertificate::new(
            self.series(self.nu()),
            self.series(self.mu()),
            vec![self.s(), self.s(), self.jordan(2)],
            vec![m(f, &[&[1]]), m(f, &[&[1], &[0]])],
            vec![
                m(f, &[&[0], &[1]]),
                m(f, &[&[0], &[1], &[0]]),
                m(f, &[&[0, 0], &[0, 0], &[1, 0], &[0, 1], &[0, -1]]),
            ],
            vec![
                m(f, &[&[1, 0]]),
                m(f, &[&[1, 0, 0], &[0, 0, 1]]),
                m(f, &[&[1, 0, 0, 0, 0], &[0, 0, 0, 1, 1], &[0, 1, 0, 0, 0]]),
            ],
        )
        .unwrap()
    }

    /// Ladder over the series of `ν'` degenerating to that of `μ`, with X-row `0, S, S`.
    pub fn chi_prime(&self) -> LadderCertificate {
        let f = self.field;
        let zero = Representation::zero(self.alg.clone());
        LadderCertificate::new(
            self.series(self.nu_prime()),
            self.series(self.mu()),
            vec![zero, self.s(), self.s()],
            vec![Matrix::zeros(f, 1, 0), m(f, &[&[1]])],
            vec![
                Matrix::zeros(f, 1, 0),
                m(f, &[&[0], &[1], &[-1]]),
                m(f, &[&[0], &[1], &[-1], &[0]]),
            ],
            vec![
                m(f, &[&[1]]),
                m(f, &[&[0, 1, 1], &[1, 0, 0]]),
                m(f, &[&[0, 1, 1, 0], &[1, 0, 0, 0], &[0, 0, 0, 1]]),
            ],
        )
        .unwrap()
    }

    /// Two-column ladder on the series of the regular module of `k[X]/(X^2)` with `h_1 = 0`.
    pub fn non_monic_ladder(&self) -> LadderCertificate {
        let f = self.field;
        let lam = self.jordan(2);
        let series = self.series(lam);
        LadderCertificate::new(
            series.clone(),
            series,
            vec![self.s(), Representation::zero(self.alg.clone())],
            vec![Matrix::zeros(f, 0, 1)],
            vec![m(f, &[&[1], &[0]]), Matrix::zeros(f, 2, 0)],
            vec![m(f, &[&[0, 1]]), Matrix::identity(f, 2)],
        )
        .unwrap()
    }
}

/// The dual numbers `k[X]/(X^2)`.
#[derive(Clone, Debug)]
pub struct DualNumbers {
    t: Truncated,
}

impl DualNumbers {
    pub fn new(field: FieldSpec) -> Self {
        DualNumbers {
            t: Truncated::new(field, 2),
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        self.t.algebra()
    }

    fn field(&self) -> FieldSpec {
        self.t.field
    }

    fn sum(parts: &[Representation]) -> Representation {
        parts[1..]
            .iter()
            .fold(parts[0].clone(), |acc, p| acc.oplus(p).unwrap())
    }

    pub fn s(&self) -> Representation {
        self.t.s()
    }

    pub fn lambda(&self) -> Representation {
        self.t.jordan(2)
    }

    pub fn lambda2(&self) -> Representation {
        Self::sum(&[self.lambda(), self.lambda()])
    }

    pub fn lambda_s(&self) -> Representation {
        Self::sum(&[self.lambda(), self.s()])
    }

    pub fn lambda_s2(&self) -> Representation {
        Self::sum(&[self.lambda(), self.s(), self.s()])
    }

    pub fn s_lambda_s(&self) -> Representation {
        Self::sum(&[self.s(), self.lambda(), self.s()])
    }

    pub fn s2_lambda(&self) -> Representation {
        Self::sum(&[self.s(), self.s(), self.lambda()])
    }

    pub fn s3(&self) -> Representation {
        Self::sum(&[self.s(), self.s(), self.s()])
    }

    pub fn s4(&self) -> Representation {
        Self::sum(&[self.s(), self.s(), self.s(), self.s()])
    }

    /// `Λ ⊕ S` inside `Λ^2` as the image of `diag(1, i)`.
    pub fn lambda_s_in_lambda2(&self) -> Submodule {
        let f = self.field();
        let vs = [unit(f, 4, 0), unit(f, 4, 1), unit(f, 4, 2)];
        Submodule::new(self.lambda2(), Subspace::span(f, 4, &vs)).unwrap()
    }

    /// Diagonal copy of `S` in `S ⊕ S`.
    pub fn diagonal_in_s2(&self) -> Submodule {
        let f = self.field();
        let ss = Self::sum(&[self.s(), self.s()]);
        Submodule::new(ss, Subspace::span(f, 2, &[vec![f.one(), f.one()]])).unwrap()
    }

    /// `0 -> S -> S ⊕ Λ^2 -> Λ ⊕ S^2 -> 0` through the socle of the first copy of `Λ`.
    pub fn eta(&self) -> RiedtmannCertificate {
        let f = self.field();
        RiedtmannCertificate::new(
            self.s(),
            self.lambda2(),
            self.lambda_s2(),
            m(f, &[&[0]]),
            m(f, &[&[1], &[0], &[0], &[0]]),
            m(
                f,
                &[
                    &[0, 0, 0, 1, 0],
                    &[0, 0, 0, 0, 1],
                    &[0, 0, 1, 0, 0],
                    &[1, 0, 0, 0, 0],
                ],
            ),
        )
        .unwrap()
    }

    /// `0 -> S -> S ⊕ Λ^2 -> S ⊕ Λ ⊕ S -> 0` through the socle of the second copy of `Λ`.
    pub fn theta(&self) -> RiedtmannCertificate {
        let f = self.field();
        RiedtmannCertificate::new(
            self.s(),
            self.lambda2(),
            self.s_lambda_s(),
            m(f, &[&[0]]),
            m(f, &[&[0], &[0], &[1], &[0]]),
            m(
                f,
                &[
                    &[0, 0, 0, 0, 1],
                    &[0, 1, 0, 0, 0],
                    &[0, 0, 1, 0, 0],
                    &[1, 0, 0, 0, 0],
                ],
            ),
        )
        .unwrap()
    }

    /// `Λ ⊕ S^2 <=deg S^4` with `X = S^2` sent to the socle of `Λ` and the last `S`.
    pub fn lambda_s2_to_s4(&self) -> RiedtmannCertificate {
        let f = self.field();
        RiedtmannCertificate::new(
            Self::sum(&[self.s(), self.s()]),
            self.lambda_s2(),
            self.s4(),
            Matrix::zeros(f, 2, 2),
            m(f, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]),
            m(
                f,
                &[
                    &[1, 0, 0, 0, 0, 0],
                    &[0, 1, 0, 0, 0, 0],
                    &[0, 0, 0, 1, 0, 0],
                    &[0, 0, 0, 0, 1, 0],
                ],
            ),
        )
        .unwrap()
    }

    /// Same degeneration as [`Self::lambda_s2_to_s4`] but through the first `S`, which is not
    /// reachable from the socle of the middle term of [`Self::eta`].
    pub fn lambda_s2_to_s4_via_first_s(&self) -> RiedtmannCertificate {
        let f = self.field();
        RiedtmannCertificate::new(
            Self::sum(&[self.s(), self.s()]),
            self.lambda_s2(),
            self.s4(),
            Matrix::zeros(f, 2, 2),
            m(f, &[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]),
            m(
                f,
                &[
                    &[1, 0, 0, 0, 0, 0],
                    &[0, 1, 0, 0, 0, 0],
                    &[0, 0, 0, 1, 0, 0],
                    &[0, 0, 0, 0, 0, 1],
                ],
            ),
        )
        .unwrap()
    }

    /// `Λ ⊕ Λ <=deg S^2 ⊕ Λ`, degenerating only the first summand.
    pub fn lambda2_to_s2_lambda(&self) -> RiedtmannCertificate {
        let f = self.field();
        RiedtmannCertificate::new(
            self.s(),
            self.lambda2(),
            self.s2_lambda(),
            m(f, &[&[0]]),
            m(f, &[&[1], &[0], &[0], &[0]]),
            m(
                f,
                &[
                    &[1, 0, 0, 0, 0],
                    &[0, 0, 1, 0, 0],
                    &[0, 0, 0, 1, 0],
                    &[0, 0, 0, 0, 1],
                ],
            ),
        )
        .unwrap()
    }
}

/// The Kronecker algebra with arrows `alpha, beta: 1 -> 2`.
#[derive(Clone, Debug)]
pub struct Kronecker {
    field: FieldSpec,
    alg: Arc<AlgebraPresentation>,
}

impl Kronecker {
    pub fn new(field: FieldSpec) -> Self {
        Kronecker {
            field,
            alg: Arc::new(AlgebraPresentation::kronecker(field)),
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.alg
    }

    /// Quiver representation with `alpha, beta` given as `d2 x d1` matrices.
    pub fn quiver_rep(
        &self,
        d1: usize,
        d2: usize,
        alpha: &[&[i64]],
        beta: &[&[i64]],
    ) -> Representation {
        let f = self.field;
        let d = d1 + d2;
        let e1 = Matrix::identity(f, d1).block_diag(&Matrix::zeros(f, d2, d2));
        let e2 = Matrix::zeros(f, d1, d1).block_diag(&Matrix::identity(f, d2));
        let arrow = |rows: &[&[i64]]| {
            let mut a = Matrix::zeros(f, d, d);
            if d1 > 0 && d2 > 0 {
                a.paste(d1, 0, &Matrix::from_i64(f, rows));
            }
            a
        };
        Representation::new_valid(self.alg.clone(), d, vec![e1, e2, arrow(alpha), arrow(beta)])
            .expect("quiver fixture")
    }

    pub fn s1(&self) -> Representation {
        self.quiver_rep(1, 0, &[], &[])
    }

    pub fn s2(&self) -> Representation {
        self.quiver_rep(0, 1, &[], &[])
    }

    pub fn r(&self) -> Representation {
        self.quiver_rep(1, 1, &[&[1]], &[&[0]])
    }

    /// A regular module of dimension vector `(1,1)` not isomorphic to `R`.
    pub fn r_prime(&self) -> Representation {
        self.quiver_rep(1, 1, &[&[1]], &[&[1]])
    }

    pub fn i2(&self) -> Representation {
        self.quiver_rep(2, 1, &[&[1, 0]], &[&[0, 1]])
    }

    pub fn dtr_s1(&self) -> Representation {
        self.quiver_rep(3, 2, &[&[1, 0, 0], &[0, 1, 0]], &[&[0, 1, 0], &[0, 0, 1]])
    }

    pub fn r_plus_s1(&self) -> Representation {
        self.r().oplus(&self.s1()).unwrap()
    }

    pub fn s1_plus_s2(&self) -> Representation {
        self.s1().oplus(&self.s2()).unwrap()
    }

    /// `0 -> R -> R ⊕ I_2 -> R ⊕ S_1 -> 0`.
    pub fn i2_to_r_plus_s1(&self) -> RiedtmannCertificate {
        let f = self.field;
        RiedtmannCertificate::new(
            self.r(),
            self.i2(),
            self.r_plus_s1(),
            Matrix::zeros(f, 2, 2),
            m(f, &[&[1, 0], &[0, 0], &[0, 1]]),
            m(f, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 0, 1, 0]]),
        )
        .unwrap()
    }

    fn r2(&self, beta: Matrix) -> Representation {
        let f = self.field;
        let e1 = m(
            f,
            &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        );
        let e2 = m(
            f,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
        );
        let alpha = m(
            f,
            &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0]],
        );
        Representation::new_valid(self.alg.clone(), 4, vec![e1, e2, alpha, beta])
            .expect("triangular fixture")
    }

    /// Triangular representation of `R_2` through `S_2 ⊂ S_2^2 ⊂ P_1`.
    pub fn r2_mu(&self) -> Representation {
        let f = self.field;
        self.r2(m(
            f,
            &[&[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
        ))
    }

    /// Triangular representation of `R_2` through `S_2 ⊂ S_2^2 ⊂ R ⊕ S_2`.
    pub fn r2_nu(&self) -> Representation {
        let f = self.field;
        self.r2(m(
            f,
            &[&[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
        ))
    }
}

/// Two vertices with `alpha: 1 -> 2`, `beta: 2 -> 1` and both composites zero.
#[derive(Clone, Debug)]
pub struct TwoCycle {
    field: FieldSpec,
    alg: Arc<AlgebraPresentation>,
}

impl TwoCycle {
    pub fn new(field: FieldSpec) -> Self {
        TwoCycle {
            field,
            alg: Arc::new(AlgebraPresentation::two_cycle(field)),
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.alg
    }

    fn rep(&self, alpha: Matrix, beta: Matrix) -> Representation {
        let f = self.field;
        let e1 = m(f, &[&[1, 0], &[0, 0]]);
        let e2 = m(f, &[&[0, 0], &[0, 1]]);
        Representation::new_valid(self.alg.clone(), 2, vec![e1, e2, alpha, beta])
            .expect("two-cycle fixture")
    }

    /// `alpha = 1`, `beta = 0`: socle at vertex 2.
    pub fn m(&self) -> Representation {
        let f = self.field;
        self.rep(m(f, &[&[0, 0], &[1, 0]]), Matrix::zeros(f, 2, 2))
    }

    /// `alpha = 0`, `beta = 1`: socle at vertex 1.
    pub fn n(&self) -> Representation {
        let f = self.field;
        self.rep(Matrix::zeros(f, 2, 2), m(f, &[&[0, 1], &[0, 0]]))
    }
}

/// Every fixture certificate over the given field, by name.
pub fn certificates(field: FieldSpec) -> Vec<(&'static str, RiedtmannCertificate)> {
    let d = DualNumbers::new(field);
    let t = Truncated::new(field, 3);
    let k = Kronecker::new(field);
    let types = t.nilpotent_types();
    vec![
        ("eta", d.eta()),
        ("theta", d.theta()),
        ("lambda_s2_to_s4", d.lambda_s2_to_s4()),
        ("lambda2_to_s2_lambda", d.lambda2_to_s2_lambda()),
        (
            "lambda_s2_to_s4_via_first_s",
            d.lambda_s2_to_s4_via_first_s(),
        ),
        ("nilp_3_to_21", t.socle_split(&types[0].1, 0)),
        ("nilp_21_to_111", t.socle_split(&types[1].1, 1)),
        ("nilp_3_to_111", t.radical_cover_3_to_111()),
        ("i2_to_r_plus_s1", k.i2_to_r_plus_s1()),
    ]
}
