//! Degeneration certificates `0 -> X -> X ⊕ M -> N -> 0` and operations on them.

use serde::Serialize;

use crate::algebra::{intertwines, Representation};
use crate::error::{Error, Result};
use crate::hom::{hom_dim, lift_intertwiner};
use crate::matrix::Matrix;
use crate::module::{complement_projection, Submodule};
use crate::report::Report;
use crate::subspace::Subspace;

/// Witness for `M <=deg N`: maps `f: X -> X`, `g: X -> M` and `q: X ⊕ M -> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiedtmannCertificate {
    x: Representation,
    m: Representation,
    n: Representation,
    f: Matrix,
    g: Matrix,
    q: Matrix,
}

impl RiedtmannCertificate {
    /// Checks shapes and algebras only; see [`verify_certificate`].
    pub fn new(
        x: Representation,
        m: Representation,
        n: Representation,
        f: Matrix,
        g: Matrix,
        q: Matrix,
    ) -> Result<Self> {
        if x.algebra() != m.algebra() || m.algebra() != n.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let shape = |name: &str, mat: &Matrix, r: usize, c: usize| {
            if mat.rows() != r || mat.cols() != c {
                Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {r}x{c}",
                    mat.rows(),
                    mat.cols()
                )))
            } else {
                Ok(())
            }
        };
        shape("f", &f, x.dim(), x.dim())?;
        shape("g", &g, m.dim(), x.dim())?;
        shape("q", &q, n.dim(), x.dim() + m.dim())?;
        Ok(RiedtmannCertificate { x, m, n, f, g, q })
    }

    /// `X = 0` and `q` the identity: `M <=deg M`.
    pub fn trivial(m: &Representation) -> Self {
        let field = m.field();
        RiedtmannCertificate {
            x: Representation::zero(m.algebra().clone()),
            m: m.clone(),
            n: m.clone(),
            f: Matrix::zeros(field, 0, 0),
            g: Matrix::zeros(field, m.dim(), 0),
            q: Matrix::identity(field, m.dim()),
        }
    }

    pub fn x(&self) -> &Representation {
        &self.x
    }

    pub fn m(&self) -> &Representation {
        &self.m
    }

    pub fn n(&self) -> &Representation {
        &self.n
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    /// The column map `(f; g): X -> X ⊕ M`.
    pub fn column(&self) -> Matrix {
        self.f.vstack(&self.g)
    }

    /// The middle term `X ⊕ M`.
    pub fn middle(&self) -> Representation {
        self.x
            .oplus(&self.m)
            .expect("certificate modules share an algebra")
    }

    /// Same certificate with `M` replaced by `new_m`, where `s: new_m -> M` is an isomorphism.
    pub fn reindex_m(&self, new_m: Representation, s: &Matrix) -> Result<Self> {
        let inv = s
            .inverse()
            .ok_or_else(|| Error::InvalidInput("reindexing matrix is singular".into()))?;
        let dx = self.x.dim();
        let field = self.x.field();
        RiedtmannCertificate::new(
            self.x.clone(),
            new_m,
            self.n.clone(),
            self.f.clone(),
            &inv * &self.g,
            &self.q * &Matrix::identity(field, dx).block_diag(s),
        )
    }

    /// Same certificate with `N` replaced by `new_n`, where `t: new_n -> N` is an isomorphism.
    pub fn reindex_n(&self, new_n: Representation, t: &Matrix) -> Result<Self> {
        let inv = t
            .inverse()
            .ok_or_else(|| Error::InvalidInput("reindexing matrix is singular".into()))?;
        RiedtmannCertificate::new(
            self.x.clone(),
            self.m.clone(),
            new_n,
            self.f.clone(),
            self.g.clone(),
            &inv * &self.q,
        )
    }

    pub fn verify(&self) -> Report {
        verify_certificate(self)
    }
}

/// Line-item check of every certificate invariant.
pub fn verify_certificate(c: &RiedtmannCertificate) -> Report {
    let mut r = Report::new();
    r.absorb("X", c.x.validate());
    r.absorb("M", c.m.validate());
    r.absorb("N", c.n.validate());
    r.check_with(
        "dim M = dim N",
        c.m.dim() == c.n.dim(),
        format!("{} vs {}", c.m.dim(), c.n.dim()),
    );
    let middle = c.middle();
    r.check("f intertwines X -> X", intertwines(&c.x, &c.x, &c.f));
    r.check("g intertwines X -> M", intertwines(&c.x, &c.m, &c.g));
    r.check("q intertwines X ⊕ M -> N", intertwines(&middle, &c.n, &c.q));
    let column = c.column();
    r.check("(f; g) is injective", column.is_injective());
    r.check("q is surjective", c.q.is_surjective());
    r.check("q ∘ (f; g) = 0", (&c.q * &column).is_zero());
    r
}

fn check_dims(m: &Representation, n: &Representation) -> Result<()> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            m.dim(),
            n.dim()
        )));
    }
    Ok(())
}

/// `[N, N] - [M, M]`.
pub fn codim(m: &Representation, n: &Representation) -> Result<i64> {
    check_dims(m, n)?;
    Ok(hom_dim(n, n)? as i64 - hom_dim(m, m)? as i64)
}

/// `d^2 - [M, M]`.
pub fn orbit_dim_gl(m: &Representation) -> Result<i64> {
    let d = m.dim() as i64;
    Ok(d * d - hom_dim(m, m)? as i64)
}

/// Result of pushing a submodule `M'` of `M` through a certificate.
#[derive(Clone, Debug)]
pub struct Pushforward {
    /// The largest `X' ⊆ X` with `f(X') ⊆ X'` and `g(X') ⊆ M'`.
    pub xprime: Submodule,
    /// `N' ⊆ N`, the image of `X' ⊕ M'` under `q`.
    pub nprime: Submodule,
    /// Cokernel of the restricted column map.
    pub cokernel: Representation,
    /// Injective map from the cokernel onto `nprime`.
    pub alpha: Matrix,
    /// Certificate for `M' <=deg N'` with `N'` on the canonical basis of `nprime`.
    pub certificate: RiedtmannCertificate,
}

fn bug(msg: impl Into<String>) -> Error {
    Error::InternalInvariantViolation(msg.into())
}

pub fn push_submodule(c: &RiedtmannCertificate, mprime: &Submodule) -> Result<Pushforward> {
    if mprime.ambient() != c.m() {
        return Err(Error::NotSubmodule);
    }
    let ms = mprime.space();
    let mut s = Subspace::preimage(&c.g, ms)?;
    loop {
        let next = s.intersect(&Subspace::preimage(&c.f, &s)?)?;
        if next == s {
            break;
        }
        s = next;
    }
    if !s.map(&c.f).is_subspace_of(&s) || !s.map(&c.g).is_subspace_of(ms) {
        return Err(bug("X' is not mapped into X' ⊕ M'"));
    }
    let xprime = Submodule::new(c.x.clone(), s).map_err(|_| bug("X' is not a submodule"))?;
    let bx = xprime.space().basis();
    let bm = ms.basis();
    let xrep = xprime.representation();
    let mrep = mprime.representation();
    let f2 = xprime.space().coords_matrix(&(&c.f * bx))?;
    let g2 = ms.coords_matrix(&(&c.g * bx))?;
    let column = f2.vstack(&g2);

    let qj = &c.q * &bx.block_diag(bm);
    let nspace = qj.image();
    let nprime = Submodule::new(c.n.clone(), nspace)
        .map_err(|_| bug("image of X' ⊕ M' is not a submodule"))?;

    let middle = xrep.oplus(&mrep)?;
    let (comp, proj) = complement_projection(&column.image());
    let cmats = middle.mats().iter().map(|m| &(&proj * m) * &comp).collect();
    let cokernel = Representation::new(c.x.algebra().clone(), comp.cols(), cmats)?;
    let alpha = &qj * &comp;
    if &alpha * &proj != qj {
        return Err(bug("alpha does not factor q through the cokernel"));
    }
    if !alpha.is_injective() {
        return Err(bug("alpha is not injective"));
    }
    if !intertwines(&cokernel, &c.n, &alpha) {
        return Err(bug("alpha is not a module map"));
    }

    let q2 = nprime.space().coords_matrix(&qj)?;
    let certificate = RiedtmannCertificate::new(xrep, mrep, nprime.representation(), f2, g2, q2)?;
    let report = certificate.verify();
    if !report.is_valid() {
        return Err(bug(format!("pushed certificate fails:\n{report}")));
    }
    Ok(Pushforward {
        xprime,
        nprime,
        cokernel,
        alpha,
        certificate,
    })
}

/// Result of splitting a submodule of `X ⊕ Y` along the first projection.
#[derive(Clone, Debug)]
pub struct Split {
    /// Image of the projection to `X`.
    pub xprime: Submodule,
    /// Kernel of the projection, viewed inside `Y`.
    pub yprime: Submodule,
    /// Certificate for `M <=deg X' ⊕ Y'`.
    pub certificate: RiedtmannCertificate,
}

pub fn split_submodule(x: &Representation, y: &Representation, m: &Submodule) -> Result<Split> {
    let ambient = x.oplus(y)?;
    if m.ambient() != &ambient {
        return Err(Error::NotSubmodule);
    }
    let field = x.field();
    let (dx, dy) = (x.dim(), y.dim());
    let b = m.space().basis();
    let pi = b.block(0, dx, 0, b.cols());
    let xprime = Submodule::new(x.clone(), pi.image())?;
    let k = pi.kernel();
    let in_y = b.block(dx, dx + dy, 0, b.cols());
    let yprime = Submodule::new(y.clone(), (&in_y * k.basis()).image())?;

    let krep = yprime.representation();
    let mrep = m.representation();
    let ky = yprime.space().basis();
    let iota = m
        .space()
        .coords_matrix(&Matrix::zeros(field, dx, ky.cols()).vstack(ky))?;
    let proj = xprime.space().coords_matrix(&pi)?;
    let dk = krep.dim();
    let top = Matrix::zeros(field, proj.rows(), dk).hstack(&proj);
    let bottom = Matrix::identity(field, dk).hstack(&Matrix::zeros(field, dk, mrep.dim()));
    let q = top.vstack(&bottom);
    let n = xprime.representation().oplus(&krep)?;
    let certificate =
        RiedtmannCertificate::new(krep, mrep, n, Matrix::zeros(field, dk, dk), iota, q)?;
    let report = certificate.verify();
    if !report.is_valid() {
        return Err(bug(format!("split certificate fails:\n{report}")));
    }
    Ok(Split {
        xprime,
        yprime,
        certificate,
    })
}

/// Composes certificates for `A <=deg B` and `B <=deg C` when `g2` lifts through `q1`.
pub fn compose_certificates(
    c1: &RiedtmannCertificate,
    c2: &RiedtmannCertificate,
) -> Result<RiedtmannCertificate> {
    if c1.n != c2.m {
        return Err(Error::InvalidInput(
            "the first certificate's N must equal the second certificate's M".into(),
        ));
    }
    let field = c1.x.field();
    let (dx, dw, da) = (c1.x.dim(), c2.x.dim(), c1.m.dim());
    let h = lift_intertwiner(&c2.x, &c1.middle(), &c1.q, &c2.g)?.ok_or(Error::NoLift)?;
    let sigma = h.block(0, dx, 0, dw);
    let tau = h.block(dx, dx + da, 0, dw);
    let f =
        c1.f.hstack(&sigma)
            .vstack(&Matrix::zeros(field, dw, dx).hstack(&c2.f));
    let g = c1.g.hstack(&tau);
    let q1x = c1.q.block(0, c1.q.rows(), 0, dx);
    let q1a = c1.q.block(0, c1.q.rows(), dx, dx + da);
    let db = c1.q.rows();
    let route_w = Matrix::zeros(field, dw, dx)
        .hstack(&Matrix::identity(field, dw))
        .hstack(&Matrix::zeros(field, dw, da));
    let route_b = q1x.hstack(&Matrix::zeros(field, db, dw)).hstack(&q1a);
    let q = &c2.q * &route_w.vstack(&route_b);
    let out = RiedtmannCertificate::new(c1.x.oplus(&c2.x)?, c1.m.clone(), c2.n.clone(), f, g, q)?;
    let report = out.verify();
    if !report.is_valid() {
        return Err(bug(format!("composed certificate fails:\n{report}")));
    }
    Ok(out)
}

/// One step of the descending chains: `N_i ⊆ N` and `Y_i ⊆ Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub n: Subspace,
    pub y: Subspace,
}

#[derive(Clone, Debug)]
pub struct VirtualChain {
    pub nfinal: Submodule,
    pub yfinal: Submodule,
    /// Certificate for `M' ⊕ Y_j <=deg N_j ⊕ Y_j`, each factor on its canonical basis.
    pub certificate: RiedtmannCertificate,
    pub trace: Vec<ChainStep>,
}

/// A chain that stopped early, with the steps completed so far.
#[derive(Clone, Debug, thiserror::Error)]
#[error("{error} (after {} completed steps)", trace.len())]
pub struct ChainFailure {
    pub error: Error,
    pub trace: Vec<ChainStep>,
}

/// Runs the descending-chain construction for a certificate of `M ⊕ Y <=deg N ⊕ Y`,
/// where `Y` is the last `y_dim` coordinates of both the M-slot and the N-slot.
pub fn virtual_chain(
    c: &RiedtmannCertificate,
    y_dim: usize,
    mprime: &Submodule,
) -> std::result::Result<VirtualChain, ChainFailure> {
    let mut trace = Vec::new();
    let fail = |error: Error, trace: &Vec<ChainStep>| ChainFailure {
        error,
        trace: trace.clone(),
    };
    let dm = c.m.dim();
    if y_dim > dm {
        return Err(fail(
            Error::DimensionMismatch(format!("Y of dimension {y_dim} in M of dimension {dm}")),
            &trace,
        ));
    }
    let (mrep, yrep) = c.m.split_block(dm - y_dim).map_err(|e| fail(e, &trace))?;
    let (nrep, yrep2) = c.n.split_block(dm - y_dim).map_err(|e| fail(e, &trace))?;
    if yrep != yrep2 {
        return Err(fail(Error::NotBlockDiagonal, &trace));
    }
    if mprime.ambient() != &mrep {
        return Err(fail(Error::NotSubmodule, &trace));
    }
    let field = c.m.field();
    let mp_rep = mprime.representation();

    let mut cert = c.clone();
    let mut a_sub = mprime.space().clone();
    let mut n_i = Submodule::full(&nrep);
    let mut y_prev = Subspace::full(field, y_dim);
    let mut y_i = Subspace::full(field, y_dim);
    loop {
        let step = (|| -> Result<(RiedtmannCertificate, Submodule, Subspace)> {
            // Y_i in the coordinates of the current M-slot's Y-part.
            let k = y_prev.coords_matrix(y_i.basis())?;
            let sub_space = a_sub.direct_sum(&k.image());
            let sub = Submodule::new(cert.m.clone(), sub_space)?;
            let push = push_submodule(&cert, &sub)?;
            let n_i_rep = n_i.representation();
            let y_i_rep = Submodule::new(yrep.clone(), y_i.clone())?.representation();
            let split = split_submodule(&n_i_rep, &y_i_rep, &push.nprime)?;
            let composed = compose_certificates(&push.certificate, &split.certificate)?;

            let s = sub.space().coords_matrix(&a_sub.basis().block_diag(&k))?;
            let new_m = mp_rep.oplus(&y_i_rep)?;
            let composed = composed.reindex_m(new_m, &s)?;

            let n_next = Submodule::new(
                nrep.clone(),
                (n_i.space().basis() * split.xprime.space().basis()).image(),
            )?;
            let y_next = (y_i.basis() * split.yprime.space().basis()).image();
            let tn = split
                .xprime
                .space()
                .coords_matrix(&n_i.space().coords_matrix(n_next.space().basis())?)?;
            let ty = split
                .yprime
                .space()
                .coords_matrix(&y_i.coords_matrix(y_next.basis())?)?;
            let new_n = n_next
                .representation()
                .oplus(&Submodule::new(yrep.clone(), y_next.clone())?.representation())?;
            let composed = composed.reindex_n(new_n, &tn.block_diag(&ty))?;
            let report = composed.verify();
            if !report.is_valid() {
                return Err(bug(format!("chain certificate fails:\n{report}")));
            }
            Ok((composed, n_next, y_next))
        })();
        let (next_cert, n_next, y_next) = step.map_err(|e| fail(e, &trace))?;
        trace.push(ChainStep {
            n: n_next.space().clone(),
            y: y_next.clone(),
        });
        let stable = y_next.dim() == y_i.dim();
        cert = next_cert;
        a_sub = Subspace::full(field, mp_rep.dim());
        n_i = n_next;
        y_prev = y_i;
        y_i = y_next;
        if stable {
            return Ok(VirtualChain {
                nfinal: n_i,
                yfinal: Submodule::new_unchecked(yrep, y_i),
                certificate: cert,
                trace,
            });
        }
    }
}

/// `[X, N] - [X, M]` for each test module `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomDefectReport {
    pub values: Vec<i64>,
}

impl HomDefectReport {
    /// Some test module has a negative defect, which rules out `M <=deg N`.
    pub fn refutes(&self) -> bool {
        self.values.iter().any(|&v| v < 0)
    }
}

pub fn hom_defect(
    m: &Representation,
    n: &Representation,
    tests: &[Representation],
) -> Result<HomDefectReport> {
    let values = tests
        .iter()
        .map(|x| Ok(hom_dim(x, n)? as i64 - hom_dim(x, m)? as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomDefectReport { values })
}
