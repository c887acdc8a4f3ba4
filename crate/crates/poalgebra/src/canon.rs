//! Canonical labeling of morphisms up to isomorphism.
//!
//! Two morphisms are the same arrow of the category exactly when some
//! bijection of events fixing both interfaces pointwise carries one order
//! onto the other. [`canonical_key`] computes a total invariant for that
//! relation by brute-force minimization over internal relabelings, which is
//! what makes deduplicated enumeration possible; [`canonical_form`] picks
//! the minimizing representative itself.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::morphism::PosetMorphism;

/// Largest internal-event count [`canonical_key`] will minimize over.
/// The search is factorial in this count; nine keeps the worst case under
/// half a million candidate labelings.
pub const MAX_CANON_INTERNALS: usize = 9;

/// Key header plus the strict-order bit matrix under the given internal
/// relabeling: slot `m + n + x` of the relabeled morphism holds original
/// internal `perm[x]`.
fn key_under(p: &PosetMorphism, perm: &[usize], buf: &mut Vec<u8>) {
    buf.clear();
    let (m, n, k) = (p.m(), p.n(), p.internal_count());
    buf.extend_from_slice(&(m as u32).to_be_bytes());
    buf.extend_from_slice(&(n as u32).to_be_bytes());
    buf.extend_from_slice(&(k as u32).to_be_bytes());
    let e = p.events();
    let ext = m + n;
    let orig = |slot: usize| if slot < ext { slot } else { p.internal(perm[slot - ext]) };
    let mut acc = 0u8;
    let mut used = 0;
    for i in 0..e {
        for j in 0..e {
            acc <<= 1;
            if p.lt(orig(i), orig(j)) {
                acc |= 1;
            }
            used += 1;
            if used == 8 {
                buf.push(acc);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        buf.push(acc << (8 - used));
    }
}

/// Runs `visit` on every permutation of `0..k`, reusing one buffer.
fn for_each_permutation(k: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..k).collect();
    visit(&perm);
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn minimize(p: &PosetMorphism) -> Result<(Vec<u8>, Vec<usize>), Error> {
    let k = p.internal_count();
    if k > MAX_CANON_INTERNALS {
        return Err(Error::TooLarge(k));
    }
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let mut cand = Vec::new();
    for_each_permutation(k, |perm| {
        key_under(p, perm, &mut cand);
        if best.as_ref().is_none_or(|(b, _)| cand < *b) {
            best = Some((cand.clone(), perm.to_vec()));
        }
    });
    Ok(best.expect("identity permutation always visited"))
}

/// A total isomorphism invariant: keys are equal exactly when the morphisms
/// are equal as arrows (isomorphic by an interface-fixing bijection).
///
/// The key is `m`, `n`, `k` as big-endian u32s followed by the strict-order
/// bit matrix packed row-major, lexicographically minimized over all
/// relabelings of the internal events. Morphisms with more than
/// [`MAX_CANON_INTERNALS`] internal events fail with [`Error::TooLarge`].
pub fn canonical_key(p: &PosetMorphism) -> Result<Vec<u8>, Error> {
    minimize(p).map(|(key, _)| key)
}

/// The least representative of `p`'s isomorphism class: internal events
/// relabeled by the permutation realizing [`canonical_key`]. Idempotent,
/// and always isomorphic to the input.
pub fn canonical_form(p: &PosetMorphism) -> Result<PosetMorphism, Error> {
    let (_, perm) = minimize(p)?;
    let (m, n, k) = (p.m(), p.n(), p.internal_count());
    let ext = m + n;
    let orig = |slot: usize| if slot < ext { slot } else { p.internal(perm[slot - ext]) };
    let e = p.events();
    let mut pairs = Vec::new();
    for i in 0..e {
        for j in 0..e {
            if p.lt(orig(i), orig(j)) {
                pairs.push((i, j));
            }
        }
    }
    PosetMorphism::from_parts(m, n, k, &pairs)
}
