//! Isomorphism testing for algebras and dual spaces, with explicit,
//! re-verified witnesses.
//!
//! The search is backtracking over an element-by-element assignment.
//! Candidate images are pre-filtered by per-element invariant vectors;
//! the filter is conservative (never excludes a true isomorph), so the
//! search stays complete. For algebras the incremental constraints
//! (order both ways, bounds, negation) are jointly complete: a finite
//! lattice order determines join and meet, so a full assignment passing
//! them is already an isomorphism. The final table scan is defense in
//! depth, not a correctness requirement.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::DeMorganAlgebra;
use crate::duality::DualSpace;

/// Hard cap on structure size for the search; beyond desk scale the
/// pruning guarantees are untested.
pub const MAX_ISO_SIZE: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Algebra,
    DualSpace,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Algebra => "algebra",
            StructureKind::DualSpace => "dual_space",
        }
    }
}

/// A bijection preserving all structure of its kind, re-verified by a
/// full table scan before being handed out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub kind: StructureKind,
    pub mapping: Vec<usize>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoError {
    SizeLimit { size: usize, limit: usize },
}

impl fmt::Display for IsoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoError::SizeLimit { size, limit } => {
                write!(f, "isomorphism search: size {size} exceeds limit {limit}")
            }
        }
    }
}

impl core::error::Error for IsoError {}

/// Per-element invariants: downset size, upset size, fixed by °,
/// skeleton membership. Preserved by every isomorphism.
fn algebra_invariants(a: &DeMorganAlgebra) -> Vec<(usize, usize, bool, bool)> {
    let n = a.size();
    (0..n)
        .map(|x| {
            let down = (0..n).filter(|&y| a.leq(y, x)).count();
            let up = (0..n).filter(|&y| a.leq(x, y)).count();
            (down, up, a.neg(x) == x, a.join(x, a.neg(x)) == a.top())
        })
        .collect()
}

/// Per-point invariants: downset size, upset size, fixed by f, and the
/// partner's downset/upset sizes.
fn dual_invariants(x: &DualSpace) -> Vec<(usize, usize, bool, usize, usize)> {
    let m = x.size();
    let down: Vec<usize> = (0..m).map(|p| (0..m).filter(|&q| x.leq(q, p)).count()).collect();
    let up: Vec<usize> = (0..m).map(|p| (0..m).filter(|&q| x.leq(p, q)).count()).collect();
    (0..m)
        .map(|p| (down[p], up[p], x.f(p) == p, down[x.f(p)], up[x.f(p)]))
        .collect()
}

fn multisets_match<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort();
    sb.sort();
    sa == sb
}

/// Full-table check that `mapping` is a de Morgan isomorphism a → b.
pub fn verify_algebra_isomorphism(a: &DeMorganAlgebra, b: &DeMorganAlgebra, mapping: &[usize]) -> bool {
    let n = a.size();
    if b.size() != n || mapping.len() != n {
        return false;
    }
    let mut used = vec![false; n];
    for &y in mapping {
        if y >= n || used[y] {
            return false;
        }
        used[y] = true;
    }
    if mapping[a.bottom()] != b.bottom() || mapping[a.top()] != b.top() {
        return false;
    }
    (0..n).all(|x| {
        mapping[a.neg(x)] == b.neg(mapping[x])
            && (0..n).all(|y| {
                mapping[a.join(x, y)] == b.join(mapping[x], mapping[y])
                    && mapping[a.meet(x, y)] == b.meet(mapping[x], mapping[y])
            })
    })
}

/// Full-table check that `mapping` is an order- and f-preserving
/// bijection x → y (both directions for the order).
pub fn verify_dual_space_isomorphism(x: &DualSpace, y: &DualSpace, mapping: &[usize]) -> bool {
    let m = x.size();
    if y.size() != m || mapping.len() != m {
        return false;
    }
    let mut used = vec![false; m];
    for &q in mapping {
        if q >= m || used[q] {
            return false;
        }
        used[q] = true;
    }
    (0..m).all(|p| {
        mapping[x.f(p)] == y.f(mapping[p])
            && (0..m).all(|q| x.leq(p, q) == y.leq(mapping[p], mapping[q]))
    })
}

/// Finds a de Morgan isomorphism a → b, if any. Sound and complete at
/// desk scale; the first witness in canonical branch order wins.
pub fn find_algebra_isomorphism(
    a: &DeMorganAlgebra,
    b: &DeMorganAlgebra,
) -> Result<Option<IsoWitness>, IsoError> {
    let n = a.size();
    let biggest = n.max(b.size());
    if biggest > MAX_ISO_SIZE {
        return Err(IsoError::SizeLimit { size: biggest, limit: MAX_ISO_SIZE });
    }
    if b.size() != n {
        return Ok(None);
    }
    let inv_a = algebra_invariants(a);
    let inv_b = algebra_invariants(b);
    if !multisets_match(&inv_a, &inv_b) {
        return Ok(None);
    }
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_algebra(a, b, &inv_a, &inv_b, 0, &mut mapping, &mut used) {
        debug_assert!(verify_algebra_isomorphism(a, b, &mapping));
        if verify_algebra_isomorphism(a, b, &mapping) {
            return Ok(Some(IsoWitness { kind: StructureKind::Algebra, mapping, verified: true }));
        }
    }
    Ok(None)
}

fn extend_algebra(
    a: &DeMorganAlgebra,
    b: &DeMorganAlgebra,
    inv_a: &[(usize, usize, bool, bool)],
    inv_b: &[(usize, usize, bool, bool)],
    k: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = a.size();
    if k == n {
        return true;
    }
    'candidates: for y in 0..n {
        if used[y] || inv_a[k] != inv_b[y] {
            continue;
        }
        if (k == a.bottom()) != (y == b.bottom()) || (k == a.top()) != (y == b.top()) {
            continue;
        }
        let nk = a.neg(k);
        // nk > k is deferred; the involution re-checks it when nk is
        // assigned, because neg(nk) = k is assigned by then
        if nk < k && mapping[nk] != b.neg(y) {
            continue;
        }
        if nk == k && b.neg(y) != y {
            continue;
        }
        for (j, &mj) in mapping.iter().enumerate().take(k) {
            if a.leq(j, k) != b.leq(mj, y) || a.leq(k, j) != b.leq(y, mj) {
                continue 'candidates;
            }
        }
        mapping[k] = y;
        used[y] = true;
        if extend_algebra(a, b, inv_a, inv_b, k + 1, mapping, used) {
            return true;
        }
        mapping[k] = usize::MAX;
        used[y] = false;
    }
    false
}

/// Finds an order- and involution-preserving bijection between dual
/// spaces, if any.
pub fn find_dual_space_isomorphism(
    x: &DualSpace,
    y: &DualSpace,
) -> Result<Option<IsoWitness>, IsoError> {
    let m = x.size();
    let biggest = m.max(y.size());
    if biggest > MAX_ISO_SIZE {
        return Err(IsoError::SizeLimit { size: biggest, limit: MAX_ISO_SIZE });
    }
    if y.size() != m {
        return Ok(None);
    }
    let inv_x = dual_invariants(x);
    let inv_y = dual_invariants(y);
    if !multisets_match(&inv_x, &inv_y) {
        return Ok(None);
    }
    let mut mapping = vec![usize::MAX; m];
    let mut used = vec![false; m];
    if extend_dual(x, y, &inv_x, &inv_y, 0, &mut mapping, &mut used) {
        debug_assert!(verify_dual_space_isomorphism(x, y, &mapping));
        if verify_dual_space_isomorphism(x, y, &mapping) {
            return Ok(Some(IsoWitness { kind: StructureKind::DualSpace, mapping, verified: true }));
        }
    }
    Ok(None)
}

fn extend_dual(
    x: &DualSpace,
    y: &DualSpace,
    inv_x: &[(usize, usize, bool, usize, usize)],
    inv_y: &[(usize, usize, bool, usize, usize)],
    k: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let m = x.size();
    if k == m {
        return true;
    }
    'candidates: for q in 0..m {
        if used[q] || inv_x[k] != inv_y[q] {
            continue;
        }
        let fk = x.f(k);
        if fk < k && mapping[fk] != y.f(q) {
            continue;
        }
        if fk == k && y.f(q) != q {
            continue;
        }
        for (j, &mj) in mapping.iter().enumerate().take(k) {
            if x.leq(j, k) != y.leq(mj, q) || x.leq(k, j) != y.leq(q, mj) {
                continue 'candidates;
            }
        }
        mapping[k] = q;
        used[q] = true;
        if extend_dual(x, y, inv_x, inv_y, k + 1, mapping, used) {
            return true;
        }
        mapping[k] = usize::MAX;
        used[q] = false;
    }
    false
}

fn push_usize(out: &mut Vec<u8>, v: usize) {
    out.extend_from_slice(&(v as u32).to_be_bytes());
}

/// Isomorphism-invariant key: unequal keys prove non-isomorphism;
/// equal keys only trigger the witness search.
pub fn canonical_algebra_key(a: &DeMorganAlgebra) -> Vec<u8> {
    let mut inv = algebra_invariants(a);
    inv.sort();
    let mut out = Vec::new();
    push_usize(&mut out, a.size());
    push_usize(&mut out, inv.iter().filter(|t| t.3).count());
    for (down, up, selfneg, skel) in inv {
        push_usize(&mut out, down);
        push_usize(&mut out, up);
        out.push(selfneg as u8);
        out.push(skel as u8);
    }
    out
}

/// Isomorphism-invariant key for dual spaces.
pub fn canonical_dual_space_key(x: &DualSpace) -> Vec<u8> {
    let mut inv = dual_invariants(x);
    inv.sort();
    let mut out = Vec::new();
    push_usize(&mut out, x.size());
    push_usize(&mut out, inv.iter().filter(|t| t.2).count());
    for (down, up, fixed, pdown, pup) in inv {
        push_usize(&mut out, down);
        push_usize(&mut out, up);
        out.push(fixed as u8);
        push_usize(&mut out, pdown);
        push_usize(&mut out, pup);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{b2, c4, k3, m1, product, validate_algebra, RawAlgebra, SubalgebraEmbedding};
    use crate::duality::dual_space;
    use crate::Limits;

    fn relabeled(a: &DeMorganAlgebra, perm: &[usize]) -> DeMorganAlgebra {
        let n = a.size();
        let mut join = vec![vec![0usize; n]; n];
        let mut meet = vec![vec![0usize; n]; n];
        let mut neg = vec![0usize; n];
        for x in 0..n {
            neg[perm[x]] = perm[a.neg(x)];
            for y in 0..n {
                join[perm[x]][perm[y]] = perm[a.join(x, y)];
                meet[perm[x]][perm[y]] = perm[a.meet(x, y)];
            }
        }
        validate_algebra(&RawAlgebra {
            size: n,
            bottom: perm[a.bottom()],
            top: perm[a.top()],
            join,
            meet,
            neg,
            labels: None,
        })
        .expect("relabeling preserves validity")
    }

    #[test]
    fn subalgebras_0a1_and_0b1_are_isomorphic() {
        let m = m1();
        let left = SubalgebraEmbedding::new(&m, &[0, 1, 3]).unwrap();
        let right = SubalgebraEmbedding::new(&m, &[0, 2, 3]).unwrap();
        let w = find_algebra_isomorphism(left.induced(), right.induced()).unwrap().unwrap();
        assert!(w.verified);
        // the middle element maps to the middle element
        assert_eq!(w.mapping, vec![0, 1, 2]);
        assert_eq!(
            canonical_algebra_key(left.induced()),
            canonical_algebra_key(right.induced())
        );
    }

    #[test]
    fn identity_isomorphism_found_first() {
        for a in [b2(), k3(), m1(), c4()] {
            let w = find_algebra_isomorphism(&a, &a).unwrap().unwrap();
            assert_eq!(w.mapping, (0..a.size()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn size_mismatch_is_no_isomorphism() {
        assert!(find_algebra_isomorphism(&k3(), &c4()).unwrap().is_none());
    }

    #[test]
    fn m1_and_boolean_square_are_not_isomorphic() {
        let b4 = product(&b2(), &b2(), &Limits::default()).unwrap();
        assert!(find_algebra_isomorphism(&m1(), &b4).unwrap().is_none());
        assert_ne!(canonical_algebra_key(&m1()), canonical_algebra_key(&b4));
    }

    #[test]
    fn relabeled_copy_is_isomorphic() {
        let m = m1();
        let copy = relabeled(&m, &[3, 0, 2, 1]);
        let w = find_algebra_isomorphism(&m, &copy).unwrap().unwrap();
        assert!(verify_algebra_isomorphism(&m, &copy, &w.mapping));
        let back = find_algebra_isomorphism(&copy, &m).unwrap().unwrap();
        assert!(verify_algebra_isomorphism(&copy, &m, &back.mapping));
    }

    #[test]
    fn dual_space_iso_distinguishes_fixed_points() {
        // swapped 2-antichain (dual of M1) vs the 2-point dual of B2xB2
        // (antichain with identity involution)
        let swapped = dual_space(&m1()).unwrap().space;
        let b4 = product(&b2(), &b2(), &Limits::default()).unwrap();
        let fixed = dual_space(&b4).unwrap().space;
        assert_eq!(fixed.size(), 2);
        assert!(find_dual_space_isomorphism(&swapped, &fixed).unwrap().is_none());
        assert_ne!(canonical_dual_space_key(&swapped), canonical_dual_space_key(&fixed));
        assert!(find_dual_space_isomorphism(&swapped, &swapped).unwrap().is_some());
    }

    #[test]
    fn dual_space_iso_roundtrip_c4() {
        let d1 = dual_space(&c4()).unwrap().space;
        let d2 = dual_space(&relabeled(&c4(), &[1, 0, 3, 2])).unwrap().space;
        let w = find_dual_space_isomorphism(&d1, &d2).unwrap().unwrap();
        assert!(verify_dual_space_isomorphism(&d1, &d2, &w.mapping));
    }
}
