//! Exhaustive enumeration of submodules over small prime fields.

use std::collections::{HashSet, VecDeque};

use crate::algebra::Representation;
use crate::error::{Error, Result};
use crate::matrix::Vector;
use crate::module::{submodule_generated, Submodule};
use crate::scalar::{FieldSpec, Scalar};

/// Largest `p^d` accepted by [`enum_submodules`].
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

/// Every vector of `F_p^n` in lexicographic order, or `TooLarge` past the limit.
pub fn all_vectors(field: FieldSpec, n: usize) -> Result<Vec<Vector>> {
    let p = field
        .order()
        .ok_or_else(|| Error::TooLarge("enumeration needs a finite field".into()))?;
    let total = (p as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= ENUMERATION_LIMIT as u128);
    let total = total
        .ok_or_else(|| Error::TooLarge(format!("{p}^{n} vectors exceed {ENUMERATION_LIMIT}")))?
        as u64;
    let elems = field.elements().expect("finite field");
    Ok((0..total)
        .map(|mut idx| {
            let mut v: Vec<Scalar> = vec![field.zero(); n];
            for slot in v.iter_mut().rev() {
                *slot = elems[(idx % p) as usize].clone();
                idx /= p;
            }
            v
        })
        .collect())
}

/// All submodules of `r`, sorted by dimension, found by growing each known submodule
/// by one generated vector at a time.
pub fn enum_submodules(r: &Representation) -> Result<Vec<Submodule>> {
    let vectors = all_vectors(r.field(), r.dim())?;
    let zero = Submodule::zero(r);
    let mut seen = HashSet::from([zero.space().clone()]);
    let mut queue = VecDeque::from([zero.clone()]);
    let mut out = vec![zero];
    while let Some(s) = queue.pop_front() {
        if s.space().is_full() {
            continue;
        }
        let base = s.space().vectors();
        for v in &vectors {
            if s.space().contains(v) {
                continue;
            }
            let mut gens = base.clone();
            gens.push(v.clone());
            let t = submodule_generated(r, &gens);
            if seen.insert(t.space().clone()) {
                queue.push_back(t.clone());
                out.push(t);
            }
        }
    }
    out.sort_by_key(|s| s.dim());
    Ok(out)
}
