//! Congruence lattices, restriction to subalgebras, and the
//! perfect-extension test.
//!
//! Congruences are stored as canonical partitions: `block_id[x]` is the
//! smallest index in the block of `x`. Lexicographic order on
//! `block_id` gives the canonical order used everywhere a set of
//! congruences is materialized.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{DeMorganAlgebra, SubalgebraEmbedding};
use crate::duality::FactorDecomposition;
use crate::Limits;

/// Operation-compatible partition of a carrier in canonical
/// smallest-representative form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    algebra_size: usize,
    block_id: Vec<usize>,
}

/// Structural defect in an external block list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionDefect {
    OutOfRange(usize),
    Duplicate(usize),
    Missing(usize),
}

impl fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionDefect::OutOfRange(x) => write!(f, "element {x} out of range"),
            PartitionDefect::Duplicate(x) => write!(f, "element {x} appears in two blocks"),
            PartitionDefect::Missing(x) => write!(f, "element {x} missing from all blocks"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongruenceError {
    /// Carrier exceeds the configured bound for this operation.
    SizeLimit { what: &'static str, size: usize, limit: usize },
    /// External block list is not a partition of the carrier.
    InvalidPartition(PartitionDefect),
    /// A skeleton congruence with no extension. The variety has the
    /// congruence extension property, so this is an implementation bug,
    /// never a mathematical outcome.
    CepViolated { base_blocks: Vec<Vec<usize>> },
    /// A decomposition failed re-validation.
    NotAProduct { reason: String },
}

impl fmt::Display for CongruenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceError::SizeLimit { what, size, limit } => {
                write!(f, "{what}: carrier size {size} exceeds limit {limit}")
            }
            CongruenceError::InvalidPartition(d) => write!(f, "invalid partition: {d}"),
            CongruenceError::CepViolated { base_blocks } => write!(
                f,
                "internal error: skeleton congruence {base_blocks:?} has no extension (CEP violated)"
            ),
            CongruenceError::NotAProduct { reason } => {
                write!(f, "decomposition failed re-validation: {reason}")
            }
        }
    }
}

impl core::error::Error for CongruenceError {}

impl Congruence {
    /// Δ, the identity partition.
    pub fn identity(algebra_size: usize) -> Self {
        Congruence { algebra_size, block_id: (0..algebra_size).collect() }
    }

    /// ∇, the one-block partition.
    pub fn full(algebra_size: usize) -> Self {
        Congruence { algebra_size, block_id: vec![0; algebra_size] }
    }

    /// Builds a congruence value from external blocks; validates the
    /// partition shape only, not operation compatibility (see
    /// [`is_congruence`]).
    pub fn from_blocks(algebra_size: usize, blocks: &[Vec<usize>]) -> Result<Self, CongruenceError> {
        let mut block_id = vec![usize::MAX; algebra_size];
        for block in blocks {
            let rep = match block.iter().min() {
                Some(&r) => r,
                None => continue,
            };
            for &x in block {
                if x >= algebra_size {
                    return Err(CongruenceError::InvalidPartition(PartitionDefect::OutOfRange(x)));
                }
                if block_id[x] != usize::MAX {
                    return Err(CongruenceError::InvalidPartition(PartitionDefect::Duplicate(x)));
                }
                block_id[x] = rep;
            }
        }
        if let Some(x) = block_id.iter().position(|&b| b == usize::MAX) {
            return Err(CongruenceError::InvalidPartition(PartitionDefect::Missing(x)));
        }
        Ok(Congruence { algebra_size, block_id })
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let n = uf.len();
        Congruence { algebra_size: n, block_id: (0..n).map(|x| uf.find(x)).collect() }
    }

    pub fn algebra_size(&self) -> usize {
        self.algebra_size
    }

    /// Smallest index in the block of `x`.
    pub fn representative(&self, x: usize) -> usize {
        self.block_id[x]
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_id[x] == self.block_id[y]
    }

    pub fn block_id(&self) -> &[usize] {
        &self.block_id
    }

    pub fn num_blocks(&self) -> usize {
        self.block_id.iter().enumerate().filter(|&(x, &b)| x == b).count()
    }

    pub fn is_identity(&self) -> bool {
        self.block_id.iter().enumerate().all(|(x, &b)| x == b)
    }

    pub fn is_full(&self) -> bool {
        self.block_id.iter().all(|&b| b == 0)
    }

    /// Blocks sorted by smallest element, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (x, &b) in self.block_id.iter().enumerate() {
            map.entry(b).or_default().push(x);
        }
        map.into_values().collect()
    }

    /// Refinement order of Con(M): every block of `self` lies inside a
    /// block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.algebra_size == other.algebra_size
            && self.block_id.iter().enumerate().all(|(x, &b)| other.same_block(x, b))
    }
}

/// Union-find keeping the smallest class member as root, so `find`
/// yields the canonical representative directly.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `x` and `y`; returns whether a new merge
    /// happened. The smaller root absorbs the larger.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

/// Closes a union-find under the unary translations `· ∨ z`, `· ∧ z`,
/// `·°`. Every merged generator pair is on the worklist; translating
/// each generator suffices because congruence paths compose.
fn saturate(m: &DeMorganAlgebra, uf: &mut UnionFind, worklist: &mut Vec<(usize, usize)>) {
    let n = m.size();
    while let Some((u, v)) = worklist.pop() {
        for z in 0..n {
            for (p, q) in [(m.join(u, z), m.join(v, z)), (m.meet(u, z), m.meet(v, z))] {
                if uf.union(p, q) {
                    worklist.push((p, q));
                }
            }
        }
        let (p, q) = (m.neg(u), m.neg(v));
        if uf.union(p, q) {
            worklist.push((p, q));
        }
    }
}

/// Least congruence identifying `x` and `y`.
pub fn principal_congruence(m: &DeMorganAlgebra, x: usize, y: usize) -> Congruence {
    let mut uf = UnionFind::new(m.size());
    let mut worklist = Vec::new();
    if uf.union(x, y) {
        worklist.push((x, y));
    }
    saturate(m, &mut uf, &mut worklist);
    Congruence::from_union_find(&mut uf)
}

/// Join in Con(M): merge both partitions, then close under
/// compatibility. Transitive closure alone is not trusted here because
/// operation compatibility can force new merges.
pub fn join_congruences(m: &DeMorganAlgebra, a: &Congruence, b: &Congruence) -> Congruence {
    assert_eq!(a.algebra_size, m.size(), "congruence belongs to a different algebra");
    assert_eq!(b.algebra_size, m.size(), "congruence belongs to a different algebra");
    let mut uf = UnionFind::new(m.size());
    let mut worklist = Vec::new();
    for cg in [a, b] {
        for (x, &r) in cg.block_id.iter().enumerate() {
            if uf.union(x, r) {
                worklist.push((x, r));
            }
        }
    }
    saturate(m, &mut uf, &mut worklist);
    Congruence::from_union_find(&mut uf)
}

/// Meet in Con(M): partition intersection, always compatible.
pub fn meet_congruences(a: &Congruence, b: &Congruence) -> Congruence {
    assert_eq!(a.algebra_size, b.algebra_size, "congruences on different algebras");
    let n = a.algebra_size;
    let mut rep: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut block_id = vec![0usize; n];
    for (x, slot) in block_id.iter_mut().enumerate() {
        let key = (a.block_id[x], b.block_id[x]);
        *slot = *rep.entry(key).or_insert(x);
    }
    Congruence { algebra_size: n, block_id }
}

/// Whether the partition is compatible with join, meet and negation.
pub fn is_congruence(m: &DeMorganAlgebra, theta: &Congruence) -> bool {
    if theta.algebra_size != m.size() {
        return false;
    }
    let n = m.size();
    for x in 0..n {
        for y in x + 1..n {
            if !theta.same_block(x, y) {
                continue;
            }
            if !theta.same_block(m.neg(x), m.neg(y)) {
                return false;
            }
            for z in 0..n {
                if !theta.same_block(m.join(x, z), m.join(y, z))
                    || !theta.same_block(m.meet(x, z), m.meet(y, z))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Deduplicated congruences of one algebra in canonical lexicographic
/// order; always contains Δ and ∇.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSet {
    algebra_size: usize,
    congruences: Vec<Congruence>,
}

impl CongruenceSet {
    fn from_sorted_set(algebra_size: usize, set: BTreeSet<Congruence>) -> Self {
        CongruenceSet { algebra_size, congruences: set.into_iter().collect() }
    }

    pub fn algebra_size(&self) -> usize {
        self.algebra_size
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Congruence> {
        self.congruences.iter()
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn contains(&self, theta: &Congruence) -> bool {
        self.congruences.binary_search(theta).is_ok()
    }
}

impl<'a> IntoIterator for &'a CongruenceSet {
    type Item = &'a Congruence;
    type IntoIter = core::slice::Iter<'a, Congruence>;
    fn into_iter(self) -> Self::IntoIter {
        self.congruences.iter()
    }
}

/// Con(M) as the binary-join closure of Δ and all principal
/// congruences. Complete because every congruence is the join of the
/// principals it contains.
pub fn all_congruences(m: &DeMorganAlgebra, limits: &Limits) -> Result<CongruenceSet, CongruenceError> {
    let n = m.size();
    if n > limits.max_algebra_size {
        return Err(CongruenceError::SizeLimit {
            what: "all_congruences",
            size: n,
            limit: limits.max_algebra_size,
        });
    }
    let mut set = BTreeSet::new();
    set.insert(Congruence::identity(n));
    for x in 0..n {
        for y in x + 1..n {
            set.insert(principal_congruence(m, x, y));
        }
    }
    loop {
        let current: Vec<Congruence> = set.iter().cloned().collect();
        let mut grew = false;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let joined = join_congruences(m, &current[i], &current[j]);
                if set.insert(joined) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(CongruenceSet::from_sorted_set(n, set))
}

/// Independent oracle: every partition of the carrier, filtered by
/// compatibility. Guarded by the Bell-number cap.
pub fn brute_force_congruences(
    m: &DeMorganAlgebra,
    limits: &Limits,
) -> Result<CongruenceSet, CongruenceError> {
    let n = m.size();
    if n > limits.bell_cap {
        return Err(CongruenceError::SizeLimit {
            what: "brute_force_congruences",
            size: n,
            limit: limits.bell_cap,
        });
    }
    let mut set = BTreeSet::new();
    // Restricted growth strings enumerate set partitions exactly once:
    // rgs[0] = 0 and rgs[i] <= 1 + max(rgs[..i]).
    let mut rgs = vec![0usize; n];
    enumerate_partitions(m, &mut rgs, 1, 1, &mut set);
    Ok(CongruenceSet::from_sorted_set(n, set))
}

fn enumerate_partitions(
    m: &DeMorganAlgebra,
    rgs: &mut Vec<usize>,
    pos: usize,
    next_free: usize,
    out: &mut BTreeSet<Congruence>,
) {
    let n = m.size();
    if pos == n {
        let mut first_with = vec![usize::MAX; n];
        let mut block_id = vec![0usize; n];
        for (x, &g) in rgs.iter().enumerate() {
            if first_with[g] == usize::MAX {
                first_with[g] = x;
            }
            block_id[x] = first_with[g];
        }
        let theta = Congruence { algebra_size: n, block_id };
        if is_congruence(m, &theta) {
            out.insert(theta);
        }
        return;
    }
    for g in 0..=next_free {
        rgs[pos] = g;
        let bumped = if g == next_free { next_free + 1 } else { next_free };
        enumerate_partitions(m, rgs, pos + 1, bumped, out);
    }
}

/// θ ∩ (subset × subset), re-indexed to the induced algebra.
pub fn restrict(theta: &Congruence, embedding: &SubalgebraEmbedding) -> Congruence {
    assert_eq!(
        theta.algebra_size,
        embedding.parent().size(),
        "congruence belongs to a different algebra"
    );
    let k = embedding.size();
    let mut block_id = vec![0usize; k];
    for (i, slot) in block_id.iter_mut().enumerate() {
        *slot = (0..=i)
            .find(|&j| theta.same_block(embedding.parent_index(j), embedding.parent_index(i)))
            .expect("i itself always matches");
    }
    Congruence { algebra_size: k, block_id }
}

/// One skeleton congruence with every extension, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionFiber {
    pub base: Congruence,
    pub extensions: Vec<Congruence>,
}

/// Total map Con(B(M)) → fibers of the restriction Con(M) → Con(B(M)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub skeleton: SubalgebraEmbedding,
    pub con_m: CongruenceSet,
    pub con_b: CongruenceSet,
    pub fibers: Vec<ExtensionFiber>,
}

/// Computes every fiber of the restriction map explicitly; fiber order
/// follows the canonical order of Con(B(M)).
pub fn extension_report(m: &DeMorganAlgebra, limits: &Limits) -> Result<ExtensionReport, CongruenceError> {
    let skeleton = crate::algebra::skeleton(m);
    let con_m = all_congruences(m, limits)?;
    let con_b = all_congruences(skeleton.induced(), limits)?;
    let fibers = con_b
        .iter()
        .map(|base| ExtensionFiber {
            base: base.clone(),
            extensions: con_m
                .iter()
                .filter(|theta| &restrict(theta, &skeleton) == base)
                .cloned()
                .collect(),
        })
        .collect();
    Ok(ExtensionReport { skeleton, con_m, con_b, fibers })
}

/// Verdict of the perfect-extension test with the full fiber evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectExtensionReport {
    pub perfect: bool,
    pub report: ExtensionReport,
    /// Indices into `report.fibers` whose extension count differs
    /// from 1; empty iff perfect.
    pub offending_fibers: Vec<usize>,
}

/// Theorem condition (1): every skeleton congruence has exactly one
/// extension. An empty fiber is reported as [`CongruenceError::CepViolated`],
/// not as a false verdict.
pub fn is_perfect_extension(
    m: &DeMorganAlgebra,
    limits: &Limits,
) -> Result<PerfectExtensionReport, CongruenceError> {
    let report = extension_report(m, limits)?;
    for fiber in &report.fibers {
        if fiber.extensions.is_empty() {
            return Err(CongruenceError::CepViolated { base_blocks: fiber.base.blocks() });
        }
    }
    let offending_fibers: Vec<usize> = report
        .fibers
        .iter()
        .enumerate()
        .filter(|(_, f)| f.extensions.len() != 1)
        .map(|(i, _)| i)
        .collect();
    Ok(PerfectExtensionReport { perfect: offending_fibers.is_empty(), report, offending_fibers })
}

/// First pair failing the skeleton-determination biconditional, with
/// the proof's diagnostic sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonDeterminationWitness {
    pub u: usize,
    pub v: usize,
    /// Equalizer E(u∧v, u∨v) as positions into Y.
    pub equalizer: Vec<usize>,
    /// The element s_E with coordinates 0 on E, 1 off E.
    pub s_element: usize,
    /// Positions where (u∧v, u∨v) take values (0, 1).
    pub j_set: Vec<usize>,
    /// Positions where (u∧v, u∨v) take values (0, middle).
    pub k_set: Vec<usize>,
    /// Positions where (u∧v, u∨v) take values (middle, 1).
    pub l_set: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonDeterminationReport {
    pub holds: bool,
    pub witness: Option<SkeletonDeterminationWitness>,
}

/// Checks, over all pairs (u, v), the biconditional
/// `(u,v) ∈ θ ⟺ (0, s_{E(u∧v, u∨v)}) ∈ θ`, where s_N is 0 on N and 1
/// off N in product coordinates. Holding for every θ means θ is
/// determined by its skeleton restriction.
pub fn skeleton_determination_check(
    m: &DeMorganAlgebra,
    d: &FactorDecomposition,
    theta: &Congruence,
) -> Result<SkeletonDeterminationReport, CongruenceError> {
    if theta.algebra_size != m.size() {
        return Err(CongruenceError::NotAProduct {
            reason: String::from("congruence size does not match the algebra"),
        });
    }
    if let Err(reason) = d.revalidate(m) {
        return Err(CongruenceError::NotAProduct { reason });
    }
    let n = m.size();
    let width = d.width();
    // Tuple coordinates per element, and the inverse of the encoding so
    // s_N can be mapped back into M.
    let coords: Vec<Vec<usize>> = (0..n).map(|x| d.coordinates(x)).collect();
    let mut inverse = vec![usize::MAX; n];
    for x in 0..n {
        inverse[d.product_index(x)] = x;
    }
    for u in 0..n {
        for v in 0..n {
            let lo = m.meet(u, v);
            let hi = m.join(u, v);
            let equalizer: Vec<usize> =
                (0..width).filter(|&y| coords[u][y] == coords[v][y]).collect();
            let s_tuple: Vec<usize> = (0..width)
                .map(|y| if equalizer.contains(&y) { 0 } else { d.factor_size(y) - 1 })
                .collect();
            let s_element = inverse[d.encode(&s_tuple)];
            debug_assert_ne!(s_element, usize::MAX, "decomposition is onto the full product");
            let left = theta.same_block(u, v);
            let right = theta.same_block(m.bottom(), s_element);
            if left != right {
                let middle = |y: usize, x: usize| coords[x][y] != 0 && coords[x][y] != d.factor_size(y) - 1;
                let witness = SkeletonDeterminationWitness {
                    u,
                    v,
                    equalizer,
                    s_element,
                    j_set: (0..width)
                        .filter(|&y| coords[lo][y] == 0 && coords[hi][y] == d.factor_size(y) - 1)
                        .collect(),
                    k_set: (0..width).filter(|&y| coords[lo][y] == 0 && middle(y, hi)).collect(),
                    l_set: (0..width)
                        .filter(|&y| middle(y, lo) && coords[hi][y] == d.factor_size(y) - 1)
                        .collect(),
                };
                return Ok(SkeletonDeterminationReport { holds: false, witness: Some(witness) });
            }
        }
    }
    Ok(SkeletonDeterminationReport { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{b2, c4, k3, m1, product, skeleton, trivial};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn principal_reflexive_is_identity() {
        let m = m1();
        for x in 0..m.size() {
            assert!(principal_congruence(&m, x, x).is_identity());
        }
    }

    #[test]
    fn principal_a_b_on_m1_is_full() {
        // a~b forces 1 = a∨b ~ a∧b = 0, then everything collapses
        let m = m1();
        assert!(principal_congruence(&m, 1, 2).is_full());
    }

    #[test]
    fn principal_on_c4_bottom_p() {
        let c = c4();
        let theta = principal_congruence(&c, 0, 1);
        assert_eq!(theta.blocks(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn all_congruences_of_m1_and_b2() {
        for m in [m1(), b2()] {
            let con = all_congruences(&m, &limits()).unwrap();
            assert_eq!(con.len(), 2);
            assert!(con.contains(&Congruence::identity(m.size())));
            assert!(con.contains(&Congruence::full(m.size())));
        }
    }

    #[test]
    fn all_congruences_of_c4() {
        let c = c4();
        let con = all_congruences(&c, &limits()).unwrap();
        assert_eq!(con.len(), 4);
        let middle1 = Congruence::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let middle2 = Congruence::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        assert!(con.contains(&middle1));
        assert!(con.contains(&middle2));
    }

    #[test]
    fn brute_force_matches_generated_on_named_algebras() {
        for m in [b2(), k3(), m1(), c4(), trivial()] {
            let fast = all_congruences(&m, &limits()).unwrap();
            let slow = brute_force_congruences(&m, &limits()).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn brute_force_respects_bell_cap() {
        let m = product(&m1(), &k3(), &limits()).unwrap();
        let err = brute_force_congruences(&m, &limits()).unwrap_err();
        assert!(matches!(err, CongruenceError::SizeLimit { size: 12, limit: 10, .. }));
    }

    #[test]
    fn principal_is_least_containing_pair() {
        for m in [k3(), m1(), c4()] {
            let con = all_congruences(&m, &limits()).unwrap();
            for x in 0..m.size() {
                for y in x + 1..m.size() {
                    let p = principal_congruence(&m, x, y);
                    for theta in &con {
                        if theta.same_block(x, y) {
                            assert!(p.refines(theta));
                        }
                    }
                    assert!(con.contains(&p));
                }
            }
        }
    }

    #[test]
    fn meet_of_congruences_is_member() {
        let c = c4();
        let con = all_congruences(&c, &limits()).unwrap();
        for a in &con {
            for b in &con {
                assert!(con.contains(&meet_congruences(a, b)));
            }
        }
    }

    #[test]
    fn restrict_bounds_cases() {
        let c = c4();
        let e = skeleton(&c);
        assert!(restrict(&Congruence::full(4), &e).is_full());
        assert!(restrict(&Congruence::identity(4), &e).is_identity());
        let middle = Congruence::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(restrict(&middle, &e).is_identity());
    }

    #[test]
    fn extension_report_m1_fibers_are_singletons() {
        let r = extension_report(&m1(), &limits()).unwrap();
        assert_eq!(r.con_b.len(), 2);
        assert!(r.fibers.iter().all(|f| f.extensions.len() == 1));
    }

    #[test]
    fn extension_report_c4_delta_fiber_has_three() {
        let r = extension_report(&c4(), &limits()).unwrap();
        let delta_fiber = r.fibers.iter().find(|f| f.base.is_identity()).unwrap();
        assert_eq!(delta_fiber.extensions.len(), 3);
        let full_fiber = r.fibers.iter().find(|f| f.base.is_full()).unwrap();
        assert_eq!(full_fiber.extensions, vec![Congruence::full(4)]);
    }

    #[test]
    fn extension_report_trivial_algebra() {
        let r = extension_report(&trivial(), &limits()).unwrap();
        assert_eq!(r.fibers.len(), 1);
        assert_eq!(r.fibers[0].extensions.len(), 1);
    }

    #[test]
    fn perfect_extension_verdicts() {
        assert!(is_perfect_extension(&m1(), &limits()).unwrap().perfect);
        assert!(is_perfect_extension(&k3(), &limits()).unwrap().perfect);
        let c4_report = is_perfect_extension(&c4(), &limits()).unwrap();
        assert!(!c4_report.perfect);
        let fiber = &c4_report.report.fibers[c4_report.offending_fibers[0]];
        assert_eq!(fiber.extensions.len(), 3);
        assert!(fiber.base.is_identity());
    }

    #[test]
    fn perfect_extension_bijection_preserves_order() {
        // perfect case: restriction Con(M) -> Con(B) is an order
        // embedding and a bijection
        let lim = limits();
        let m = product(&m1(), &k3(), &lim).unwrap();
        let r = is_perfect_extension(&m, &lim).unwrap();
        assert!(r.perfect);
        assert_eq!(r.report.con_m.len(), r.report.con_b.len());
        let restricted: Vec<Congruence> =
            r.report.con_m.iter().map(|t| restrict(t, &r.report.skeleton)).collect();
        for (i, a) in r.report.con_m.iter().enumerate() {
            for (j, b) in r.report.con_m.iter().enumerate() {
                assert_eq!(a.refines(b), restricted[i].refines(&restricted[j]));
            }
        }
    }

    #[test]
    fn from_blocks_rejects_bad_partitions() {
        assert!(matches!(
            Congruence::from_blocks(3, &[vec![0, 1], vec![1, 2]]),
            Err(CongruenceError::InvalidPartition(PartitionDefect::Duplicate(1)))
        ));
        assert!(matches!(
            Congruence::from_blocks(3, &[vec![0, 5], vec![1, 2]]),
            Err(CongruenceError::InvalidPartition(PartitionDefect::OutOfRange(5)))
        ));
        assert!(matches!(
            Congruence::from_blocks(3, &[vec![0, 2]]),
            Err(CongruenceError::InvalidPartition(PartitionDefect::Missing(1)))
        ));
    }

    #[test]
    fn congruence_set_order_is_lexicographic() {
        let con = all_congruences(&c4(), &limits()).unwrap();
        let ids: Vec<&[usize]> = con.iter().map(|c| c.block_id()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }
}
