//! Corpus production: named algebras and their products, exhaustive
//! enumeration of small dual spaces (hence of all small de Morgan
//! algebras via the duality), and seeded random instances.
//!
//! Enumeration goes through dual spaces, not raw operation tables:
//! every generated structure is automatically a valid algebra and
//! exhaustiveness comes from the duality. Determinism is part of the
//! contract; the PRNG is pinned to ChaCha8 with a 64-bit seed so seeds
//! are portable.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{b2, c4, k3, m1, product, trivial, DeMorganAlgebra};
use crate::duality::{algebra_of, validate_dual_space, DualSpace, RawDualSpace};
use crate::iso::{canonical_algebra_key, find_algebra_isomorphism, find_dual_space_isomorphism, canonical_dual_space_key};
use crate::Limits;

/// What to generate; see [`corpus`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_dual_points: usize,
    pub max_algebra_size: usize,
    pub seed: u64,
    pub include_named: bool,
    /// Number of seeded random instances appended after the
    /// enumeration.
    pub random_count: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_dual_points: 5,
            max_algebra_size: 64,
            seed: 0,
            include_named: true,
            random_count: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorError {
    SizeLimit { what: &'static str, size: usize, limit: usize },
    /// random_dual_space needs at least one point.
    EmptyPointCount,
    Internal(String),
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::SizeLimit { what, size, limit } => {
                write!(f, "{what}: {size} exceeds limit {limit}")
            }
            GeneratorError::EmptyPointCount => write!(f, "random dual space needs n >= 1"),
            GeneratorError::Internal(detail) => write!(f, "internal generator error: {detail}"),
        }
    }
}

impl core::error::Error for GeneratorError {}

/// All dual spaces with 1..=max_points points, up to isomorphism, in a
/// deterministic order: point count ascending, then natural-labeling
/// enumeration order.
///
/// Posets are produced as naturally labeled posets (each new point's
/// strict down-set is an order ideal of the already-built part), which
/// covers every poset up to relabeling; involutions are found per
/// poset by backtracking and the whole stream is deduplicated by
/// dual-space isomorphism.
pub fn enumerate_dual_spaces(
    max_points: usize,
    limits: &Limits,
) -> Result<Vec<DualSpace>, GeneratorError> {
    if max_points > limits.max_dual_points {
        return Err(GeneratorError::SizeLimit {
            what: "enumerate_dual_spaces",
            size: max_points,
            limit: limits.max_dual_points,
        });
    }
    let mut kept: Vec<DualSpace> = Vec::new();
    let mut buckets: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for n in 1..=max_points {
        let mut lt = vec![vec![false; n]; n];
        let mut posets = Vec::new();
        extend_poset(n, 1, &mut lt, &mut posets);
        for strict in &posets {
            for f in order_reversing_involutions(strict) {
                let raw = RawDualSpace {
                    size: n,
                    leq: (0..n)
                        .map(|i| (0..n).map(|j| i == j || strict[i][j]).collect())
                        .collect(),
                    f,
                    labels: None,
                };
                let space = validate_dual_space(&raw)
                    .map_err(|e| GeneratorError::Internal(format!("enumerated space invalid: {e}")))?;
                let key = canonical_dual_space_key(&space);
                let bucket = buckets.entry(key).or_default();
                let mut duplicate = false;
                for &idx in bucket.iter() {
                    let found = find_dual_space_isomorphism(&space, &kept[idx])
                        .map_err(|e| GeneratorError::Internal(format!("dedup failed: {e}")))?;
                    if found.is_some() {
                        duplicate = true;
                        break;
                    }
                }
                if !duplicate {
                    bucket.push(kept.len());
                    kept.push(space);
                }
            }
        }
    }
    Ok(kept)
}

/// Extends a strict order on `built` points to all of `n` by choosing,
/// for each new point, an order ideal as its strict down-set.
fn extend_poset(n: usize, built: usize, lt: &mut Vec<Vec<bool>>, out: &mut Vec<Vec<Vec<bool>>>) {
    if built == n {
        out.push(lt.clone());
        return;
    }
    let i = built;
    // subsets of 0..i encoded as bitmasks, filtered to order ideals
    for mask in 0u32..(1u32 << i) {
        let down = |j: usize| mask & (1 << j) != 0;
        let ideal = (0..i).all(|j| {
            !down(j) || (0..i).all(|k| !lt[k][j] || down(k))
        });
        if !ideal {
            continue;
        }
        for (j, row) in lt.iter_mut().enumerate().take(i) {
            row[i] = down(j);
        }
        extend_poset(n, built + 1, lt, out);
    }
    for row in lt.iter_mut().take(i) {
        row[i] = false;
    }
}

/// All involutions f with x < y ⟺ f(y) < f(x), in deterministic
/// order. A cheap self-duality filter on (down, up) degree multisets
/// rejects most posets before the backtracking starts.
fn order_reversing_involutions(strict: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = strict.len();
    let down: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| strict[y][x]).count()).collect();
    let up: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| strict[x][y]).count()).collect();
    let mut forward: Vec<(usize, usize)> = (0..n).map(|x| (down[x], up[x])).collect();
    let mut reversed: Vec<(usize, usize)> = (0..n).map(|x| (up[x], down[x])).collect();
    forward.sort();
    reversed.sort();
    if forward != reversed {
        return Vec::new();
    }
    let mut f = vec![usize::MAX; n];
    let mut out = Vec::new();
    assign_involution(strict, &down, &up, 0, &mut f, &mut out);
    out
}

fn assign_involution(
    strict: &[Vec<bool>],
    down: &[usize],
    up: &[usize],
    p: usize,
    f: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = strict.len();
    if p == n {
        out.push(f.clone());
        return;
    }
    if f[p] != usize::MAX {
        assign_involution(strict, down, up, p + 1, f, out);
        return;
    }
    'candidates: for q in p..n {
        if f[q] != usize::MAX || down[p] != up[q] || up[p] != down[q] {
            continue;
        }
        // order-reversal against every point whose image is already
        // decided, including the new pair itself
        f[p] = q;
        f[q] = p;
        for x in 0..=q {
            if f[x] == usize::MAX {
                continue;
            }
            for y in 0..=q {
                if f[y] == usize::MAX {
                    continue;
                }
                if strict[x][y] != strict[f[y]][f[x]] {
                    f[p] = usize::MAX;
                    if q != p {
                        f[q] = usize::MAX;
                    }
                    continue 'candidates;
                }
            }
        }
        assign_involution(strict, down, up, p + 1, f, out);
        f[p] = usize::MAX;
        if q != p {
            f[q] = usize::MAX;
        }
    }
}

/// Seeded, reproducible random dual space: the involution is drawn
/// first, then candidate relations are added together with their
/// involution mirror and transitively closed, skipping any candidate
/// that would create a cycle. Joint construction means generation
/// cannot fail, so there is no retry budget.
pub fn random_dual_space(n: usize, seed: u64) -> Result<DualSpace, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::EmptyPointCount);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // involution: each point in ascending order is either fixed or
    // paired with a random later unpaired point
    let mut f = vec![usize::MAX; n];
    for p in 0..n {
        if f[p] != usize::MAX {
            continue;
        }
        let free: Vec<usize> = (p + 1..n).filter(|&q| f[q] == usize::MAX).collect();
        if free.is_empty() || rng.next_u32() & 1 == 0 {
            f[p] = p;
        } else {
            let q = free[(rng.next_u32() as usize) % free.len()];
            f[p] = q;
            f[q] = p;
        }
    }
    let mut lt = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_u32() % 5 >= 2 {
                continue;
            }
            let mut trial = lt.clone();
            trial[i][j] = true;
            trial[f[j]][f[i]] = true;
            transitive_close(&mut trial);
            if (0..n).any(|x| trial[x][x]) {
                continue;
            }
            lt = trial;
        }
    }
    let raw = RawDualSpace {
        size: n,
        leq: (0..n).map(|i| (0..n).map(|j| i == j || lt[i][j]).collect()).collect(),
        f,
        labels: None,
    };
    validate_dual_space(&raw)
        .map_err(|e| GeneratorError::Internal(format!("random space invalid: {e}")))
}

fn transitive_close(lt: &mut [Vec<bool>]) {
    let n = lt.len();
    for k in 0..n {
        let via = lt[k].clone();
        for row in lt.iter_mut() {
            if !row[k] {
                continue;
            }
            for (dst, &reach) in row.iter_mut().zip(&via) {
                *dst |= reach;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusSource {
    Named { name: String },
    Enumerated { points: usize, index: usize },
    Random { seed: u64, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub source: CorpusSource,
    /// The generating dual space, when the entry came from one.
    pub dual: Option<DualSpace>,
    pub algebra: DeMorganAlgebra,
}

/// The deduplicated test corpus: named algebras and their products,
/// every algebra of an enumerated dual space, then seeded random
/// instances, all filtered by `spec.max_algebra_size` and deduplicated
/// by algebra isomorphism with the earliest occurrence kept. The
/// one-element algebra is listed among the named entries so that
/// exhaustiveness holds including the degenerate case.
pub fn corpus(spec: &CorpusSpec, limits: &Limits) -> Result<Vec<CorpusEntry>, GeneratorError> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut buckets: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    let push = |entries: &mut Vec<CorpusEntry>,
                    buckets: &mut BTreeMap<Vec<u8>, Vec<usize>>,
                    entry: CorpusEntry|
     -> Result<(), GeneratorError> {
        if entry.algebra.size() > spec.max_algebra_size {
            return Ok(());
        }
        let key = canonical_algebra_key(&entry.algebra);
        let bucket = buckets.entry(key).or_default();
        for &idx in bucket.iter() {
            let found = find_algebra_isomorphism(&entry.algebra, &entries[idx].algebra)
                .map_err(|e| GeneratorError::Internal(format!("dedup failed: {e}")))?;
            if found.is_some() {
                return Ok(());
            }
        }
        bucket.push(entries.len());
        entries.push(entry);
        Ok(())
    };
    if spec.include_named {
        let base: Vec<(&str, DeMorganAlgebra)> =
            vec![("b2", b2()), ("k3", k3()), ("m1", m1()), ("c4", c4())];
        let mut named: Vec<(String, DeMorganAlgebra)> =
            vec![(String::from("trivial"), trivial())];
        for (name, a) in &base {
            named.push(((*name).into(), a.clone()));
        }
        for i in 0..base.len() {
            for j in i..base.len() {
                if let Ok(p) = product(&base[i].1, &base[j].1, limits) {
                    named.push((format!("product({},{})", base[i].0, base[j].0), p));
                }
            }
        }
        for i in 0..base.len() {
            for j in i..base.len() {
                for k in j..base.len() {
                    let pair = match product(&base[i].1, &base[j].1, limits) {
                        Ok(p) => p,
                        Err(_) => continue,
                    };
                    if let Ok(p) = product(&pair, &base[k].1, limits) {
                        named.push((
                            format!("product({},{},{})", base[i].0, base[j].0, base[k].0),
                            p,
                        ));
                    }
                }
            }
        }
        for (name, algebra) in named {
            push(
                &mut entries,
                &mut buckets,
                CorpusEntry {
                    id: format!("named:{name}"),
                    source: CorpusSource::Named { name },
                    dual: None,
                    algebra,
                },
            )?;
        }
    }
    for (index, space) in enumerate_dual_spaces(spec.max_dual_points, limits)?.into_iter().enumerate() {
        let ma = algebra_of(&space, limits)
            .map_err(|e| GeneratorError::Internal(format!("algebra_of failed: {e}")))?;
        push(
            &mut entries,
            &mut buckets,
            CorpusEntry {
                id: format!("enumerated:{index}"),
                source: CorpusSource::Enumerated { points: space.size(), index },
                dual: Some(space),
                algebra: ma.algebra,
            },
        )?;
    }
    for k in 0..spec.random_count {
        let n = 1 + (k % spec.max_dual_points.max(1));
        let seed = spec.seed.wrapping_add((k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let space = random_dual_space(n, seed)?;
        let ma = algebra_of(&space, limits)
            .map_err(|e| GeneratorError::Internal(format!("algebra_of failed: {e}")))?;
        push(
            &mut entries,
            &mut buckets,
            CorpusEntry {
                id: format!("random:{k}"),
                source: CorpusSource::Random { seed, index: k },
                dual: Some(space),
                algebra: ma.algebra,
            },
        )?;
    }
    Ok(entries)
}
