//! Submodules, quotients, kernels, images and cokernels.

use crate::algebra::{ModuleMap, Representation};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::subspace::Subspace;

/// A generator-invariant subspace of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    ambient: Representation,
    space: Subspace,
}

pub fn is_invariant(r: &Representation, s: &Subspace) -> bool {
    r.mats().iter().all(|m| s.map(m).is_subspace_of(s))
}

impl Submodule {
    pub fn new(ambient: Representation, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != ambient.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of k^{} in a module of dimension {}",
                space.ambient_dim(),
                ambient.dim()
            )));
        }
        if space.field() != ambient.field() {
            return Err(Error::FieldMismatch {
                expected: ambient.field().to_string(),
                found: space.field().to_string(),
            });
        }
        if !is_invariant(&ambient, &space) {
            return Err(Error::NotSubmodule);
        }
        Ok(Submodule { ambient, space })
    }

    pub(crate) fn new_unchecked(ambient: Representation, space: Subspace) -> Self {
        debug_assert!(is_invariant(&ambient, &space));
        Submodule { ambient, space }
    }

    pub fn full(ambient: &Representation) -> Self {
        let space = Subspace::full(ambient.field(), ambient.dim());
        Submodule {
            ambient: ambient.clone(),
            space,
        }
    }

    pub fn zero(ambient: &Representation) -> Self {
        let space = Subspace::zero(ambient.field(), ambient.dim());
        Submodule {
            ambient: ambient.clone(),
            space,
        }
    }

    pub fn ambient(&self) -> &Representation {
        &self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The induced action on the canonical basis of the subspace.
    pub fn representation(&self) -> Representation {
        let b = self.space.basis();
        let mats = self
            .ambient
            .mats()
            .iter()
            .map(|m| {
                self.space
                    .coords_matrix(&(m * b))
                    .expect("invariant subspace")
            })
            .collect();
        Representation::new(self.ambient.algebra().clone(), self.dim(), mats)
            .expect("induced shapes")
    }

    /// Inclusion of [`Submodule::representation`] into the ambient module.
    pub fn inclusion(&self) -> ModuleMap {
        ModuleMap::new_unchecked(
            self.representation(),
            self.ambient.clone(),
            self.space.basis().clone(),
        )
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> bool {
        self.ambient == other.ambient && self.space.is_subspace_of(&other.space)
    }

    /// `self ⊕ other` inside `self.ambient ⊕ other.ambient`.
    pub fn direct_sum(&self, other: &Submodule) -> Result<Submodule> {
        let ambient = self.ambient.oplus(&other.ambient)?;
        Ok(Submodule {
            ambient,
            space: self.space.direct_sum(&other.space),
        })
    }
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel_module(f: &ModuleMap) -> (Representation, ModuleMap) {
    let s = Submodule::new_unchecked(f.source().clone(), f.matrix().kernel());
    (s.representation(), s.inclusion())
}

/// Image of `f` with its inclusion into the target.
pub fn image_module(f: &ModuleMap) -> (Representation, ModuleMap) {
    let s = Submodule::new_unchecked(f.target().clone(), f.matrix().image());
    (s.representation(), s.inclusion())
}

/// Cokernel of `f` with the projection from the target.
pub fn cokernel_module(f: &ModuleMap) -> (Representation, ModuleMap) {
    let s = Submodule::new_unchecked(f.target().clone(), f.matrix().image());
    quotient_by(&s)
}

/// `r / s` on the deterministic complement basis, with the projection `r -> r/s`.
pub fn quotient_module(r: &Representation, s: &Submodule) -> Result<(Representation, ModuleMap)> {
    if s.ambient() != r {
        return Err(Error::NotSubmodule);
    }
    Ok(quotient_by(s))
}

/// Columns completing the canonical basis of `s` to a basis of the ambient space, and the
/// matrix sending a vector to its coordinates along those columns (modulo `s`).
pub(crate) fn complement_projection(s: &Subspace) -> (Matrix, Matrix) {
    let n = s.ambient_dim();
    let field = s.field();
    let comp = s
        .complement_basis(&Subspace::full(field, n))
        .expect("every subspace lies in the full space");
    let c = Matrix::from_columns(field, n, &comp);
    let inv = s
        .basis()
        .hstack(&c)
        .inverse()
        .expect("basis and complement span");
    let p = inv.block(s.dim(), n, 0, n);
    (c, p)
}

fn quotient_by(s: &Submodule) -> (Representation, ModuleMap) {
    let r = s.ambient();
    let (c, p) = complement_projection(s.space());
    let mats = r.mats().iter().map(|m| &(&p * m) * &c).collect();
    let q = Representation::new(r.algebra().clone(), c.cols(), mats).expect("quotient shapes");
    let proj = ModuleMap::new_unchecked(r.clone(), q.clone(), p);
    (q, proj)
}

/// Least submodule containing `vectors`, by closure under the generators.
pub fn submodule_generated(r: &Representation, vectors: &[Vector]) -> Submodule {
    let n = r.dim();
    let mut s = Subspace::span(r.field(), n, vectors);
    loop {
        let mut vs = s.vectors();
        for m in r.mats() {
            vs.extend(s.map(m).vectors());
        }
        let next = Subspace::span(r.field(), n, &vs);
        if next == s {
            return Submodule::new_unchecked(r.clone(), s);
        }
        s = next;
    }
}
