//! Independent brute-force checks used to cross-examine the main algorithms.

use crate::algebra::{Representation, UnitRule};
use crate::enumerate::all_vectors;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::is_invariant;
use crate::subspace::Subspace;

/// The single radical generator of a `k[X]/(X^n)`-style presentation.
fn nilpotent_matrix(r: &Representation) -> Result<&Matrix> {
    let alg = r.algebra();
    match (alg.radical_generators(), alg.unit()) {
        ([x], UnitRule::Generator(_)) if alg.generators().len() == 2 => Ok(r.mat(*x)),
        _ => Err(Error::InvalidInput(
            "rank oracle needs a unit generator and exactly one radical generator".into(),
        )),
    }
}

/// `rank(X^k)` for `k = 1..=d`.
pub fn nilpotent_rank_profile(r: &Representation) -> Result<Vec<usize>> {
    let x = nilpotent_matrix(r)?;
    Ok((1..=r.dim()).map(|k| x.pow(k).rank()).collect())
}

/// Jordan block sizes, largest first, read off the rank profile.
pub fn jordan_type(r: &Representation) -> Result<Vec<usize>> {
    let mut ranks = vec![r.dim()];
    ranks.extend(nilpotent_rank_profile(r)?);
    ranks.push(0);
    // number of blocks of size >= k is rank(X^{k-1}) - rank(X^k)
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in (1..=r.dim()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exact));
    }
    Ok(sizes)
}

/// Rank-condition test for nilpotent orbits: `N` lies in the closure of the orbit of `M`
/// iff `rank(N^k) <= rank(M^k)` for every `k`.
pub fn rank_condition_degenerates(m: &Representation, n: &Representation) -> Result<bool> {
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            m.dim(),
            n.dim()
        )));
    }
    let (rm, rn) = (nilpotent_rank_profile(m)?, nilpotent_rank_profile(n)?);
    Ok(rn.iter().zip(&rm).all(|(a, b)| a <= b))
}

/// All subspaces of `F_p^n` in reduced echelon form.
pub fn all_subspaces(field: crate::scalar::FieldSpec, n: usize) -> Result<Vec<Subspace>> {
    let vectors = all_vectors(field, n)?;
    let mut out = vec![Subspace::zero(field, n)];
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for v in &vectors {
                if s.contains(v) {
                    continue;
                }
                let mut vs = s.vectors();
                vs.push(v.clone());
                let t = Subspace::span(field, n, &vs);
                if !out.contains(&t) && !next.contains(&t) {
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// Submodules found by filtering every subspace for invariance.
pub fn submodules_by_filtering(r: &Representation) -> Result<Vec<Subspace>> {
    Ok(all_subspaces(r.field(), r.dim())?
        .into_iter()
        .filter(|s| is_invariant(r, s))
        .collect())
}
