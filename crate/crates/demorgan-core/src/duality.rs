//! Finite natural duality: dual spaces as finite posets with an
//! order-reversing involution, reconstruction of the algebra as the set
//! of structure maps into the alter ego, the dual condition (3), the
//! Y-selection, direct-product decomposition, and the Boolean-product
//! checker.
//!
//! Topology never appears: finite Priestley and Boolean spaces are
//! discrete, so every clopen-set condition reduces to a plain set
//! identity, noted where each reduction happens.
//!
//! The alter ego lives on the same four indices as [`m1`]: 0 = "0",
//! 1 = "a", 2 = "b", 3 = "1". Its order has b at the bottom, a at the
//! top and 0, 1 incomparable in the middle; the involution fixes 0, 1
//! and swaps a, b. Encoded as bit pairs (value = in_F + 2·in_gF) the
//! order is "first bit up, second bit down", which makes the lattice
//! operations of M₁ bitwise and/or.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{b2, k3, m1, validate_algebra, DeMorganAlgebra, RawAlgebra};
use crate::congruence::{is_congruence, restrict, Congruence};
use crate::iso::{IsoWitness, StructureKind};
use crate::Limits;

/// Involution of the alter ego: fixes 0 and 1, swaps a and b.
pub const AE_F: [usize; 4] = [0, 2, 1, 3];

/// Order of the alter ego: `AE_LEQ[x][y]` iff x ≼ y. b (index 2) is the
/// bottom, a (index 1) the top, 0 and 3 the incomparable middle pair.
pub const AE_LEQ: [[bool; 4]; 4] = [
    [true, true, false, false],
    [false, true, false, false],
    [true, true, true, true],
    [false, true, false, true],
];

const VALUE_CHARS: [char; 4] = ['0', 'a', 'b', '1'];

/// Unvalidated dual-space tables, as read from external input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDualSpace {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
    pub f: Vec<usize>,
    pub labels: Option<Vec<String>>,
}

/// A finite poset with an order-reversing involution of period two.
///
/// The empty space is allowed; it is the dual of the one-element
/// algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpace {
    size: usize,
    leq: Vec<bool>,
    f: Vec<usize>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DualAxiom {
    Reflexive,
    Antisymmetric,
    Transitive,
    InvolutionPeriodTwo,
    InvolutionOrderReversing,
}

impl DualAxiom {
    pub fn as_str(self) -> &'static str {
        match self {
            DualAxiom::Reflexive => "reflexive",
            DualAxiom::Antisymmetric => "antisymmetric",
            DualAxiom::Transitive => "transitive",
            DualAxiom::InvolutionPeriodTwo => "involution_period_two",
            DualAxiom::InvolutionOrderReversing => "involution_order_reversing",
        }
    }
}

impl fmt::Display for DualAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualAxiomViolation {
    pub axiom: DualAxiom,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualMalformation {
    TableRows { table: &'static str, expected: usize, got: usize },
    RaggedRow { table: &'static str, row: usize, expected: usize, got: usize },
    EntryOutOfRange { table: &'static str, row: usize, entry: usize },
    LabelCount { expected: usize, got: usize },
}

impl fmt::Display for DualMalformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualMalformation::TableRows { table, expected, got } => {
                write!(f, "{table} table has {got} rows, expected {expected}")
            }
            DualMalformation::RaggedRow { table, row, expected, got } => {
                write!(f, "{table} table row {row} has {got} entries, expected {expected}")
            }
            DualMalformation::EntryOutOfRange { table, row, entry } => {
                write!(f, "{table}[{row}] = {entry} is out of range")
            }
            DualMalformation::LabelCount { expected, got } => {
                write!(f, "{got} labels given for {expected} points")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualityError {
    Malformed(Vec<DualMalformation>),
    Axioms(Vec<DualAxiomViolation>),
    SizeLimit { what: &'static str, size: usize, limit: usize },
    /// A structural fact the mathematics guarantees failed to hold;
    /// always an implementation bug or an invalid input that slipped
    /// past validation.
    InternalInvariant { what: &'static str, detail: String },
    PreconditionViolated { what: &'static str, detail: String },
    MalformedInput { detail: String },
}

impl fmt::Display for DualityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualityError::Malformed(issues) => {
                write!(f, "malformed dual space: ")?;
                for (i, issue) in issues.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{issue}")?;
                }
                Ok(())
            }
            DualityError::Axioms(violations) => {
                write!(f, "dual-space axiom violations: ")?;
                for (i, v) in violations.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{} at {:?}", v.axiom, v.witness)?;
                }
                Ok(())
            }
            DualityError::SizeLimit { what, size, limit } => {
                write!(f, "{what}: size {size} exceeds limit {limit}")
            }
            DualityError::InternalInvariant { what, detail } => {
                write!(f, "internal invariant failed in {what}: {detail}")
            }
            DualityError::PreconditionViolated { what, detail } => {
                write!(f, "precondition violated in {what}: {detail}")
            }
            DualityError::MalformedInput { detail } => write!(f, "malformed input: {detail}"),
        }
    }
}

impl core::error::Error for DualityError {}

/// Validates candidate tables and returns the dual space, or the
/// complete list of violated axioms with witnessing point tuples.
pub fn validate_dual_space(raw: &RawDualSpace) -> Result<DualSpace, DualityError> {
    let m = raw.size;
    let mut issues = Vec::new();
    if raw.leq.len() != m {
        issues.push(DualMalformation::TableRows { table: "leq", expected: m, got: raw.leq.len() });
    } else {
        for (r, row) in raw.leq.iter().enumerate() {
            if row.len() != m {
                issues.push(DualMalformation::RaggedRow {
                    table: "leq",
                    row: r,
                    expected: m,
                    got: row.len(),
                });
            }
        }
    }
    if raw.f.len() != m {
        issues.push(DualMalformation::TableRows { table: "f", expected: m, got: raw.f.len() });
    } else {
        for (r, &entry) in raw.f.iter().enumerate() {
            if entry >= m {
                issues.push(DualMalformation::EntryOutOfRange { table: "f", row: r, entry });
            }
        }
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != m {
            issues.push(DualMalformation::LabelCount { expected: m, got: labels.len() });
        }
    }
    if !issues.is_empty() {
        return Err(DualityError::Malformed(issues));
    }
    let mut flat = Vec::with_capacity(m * m);
    for row in &raw.leq {
        flat.extend_from_slice(row);
    }
    let candidate = DualSpace { size: m, leq: flat, f: raw.f.clone(), labels: raw.labels.clone() };
    let violations = candidate.axiom_violations();
    if violations.is_empty() {
        Ok(candidate)
    } else {
        Err(DualityError::Axioms(violations))
    }
}

impl DualSpace {
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    #[inline]
    pub fn f(&self, x: usize) -> usize {
        self.f[x]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x].as_str())
    }

    pub fn display_point(&self, x: usize) -> String {
        match self.label(x) {
            Some(l) => l.to_string(),
            None => x.to_string(),
        }
    }

    pub fn raw(&self) -> RawDualSpace {
        RawDualSpace {
            size: self.size,
            leq: (0..self.size)
                .map(|x| (0..self.size).map(|y| self.leq(x, y)).collect())
                .collect(),
            f: self.f.clone(),
            labels: self.labels.clone(),
        }
    }

    fn axiom_violations(&self) -> Vec<DualAxiomViolation> {
        let m = self.size;
        let mut out = Vec::new();
        let mut seen = [false; 5];
        let record = |out: &mut Vec<DualAxiomViolation>, seen: &mut [bool; 5], axiom: DualAxiom, witness: Vec<usize>| {
            let slot = axiom as usize;
            if !seen[slot] {
                seen[slot] = true;
                out.push(DualAxiomViolation { axiom, witness });
            }
        };
        for x in 0..m {
            if !self.leq(x, x) {
                record(&mut out, &mut seen, DualAxiom::Reflexive, vec![x]);
            }
            if self.f(self.f(x)) != x {
                record(&mut out, &mut seen, DualAxiom::InvolutionPeriodTwo, vec![x]);
            }
            for y in 0..m {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    record(&mut out, &mut seen, DualAxiom::Antisymmetric, vec![x, y]);
                }
                if self.leq(x, y) && !self.leq(self.f(y), self.f(x)) {
                    record(&mut out, &mut seen, DualAxiom::InvolutionOrderReversing, vec![x, y]);
                }
                for z in 0..m {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        record(&mut out, &mut seen, DualAxiom::Transitive, vec![x, y, z]);
                    }
                }
            }
        }
        out.sort_by_key(|v| v.axiom);
        out
    }
}

/// The alter ego as a dual space in its own right (it satisfies the
/// same axioms): order with b bottom and a top, involution fixing 0, 1
/// and swapping a, b.
pub fn alter_ego() -> DualSpace {
    validate_dual_space(&RawDualSpace {
        size: 4,
        leq: AE_LEQ.iter().map(|row| row.to_vec()).collect(),
        f: AE_F.to_vec(),
        labels: Some(VALUE_CHARS.iter().map(|c| c.to_string()).collect()),
    })
    .expect("alter ego is a valid dual space")
}

/// All x ≠ bottom with exactly one lower cover. In a finite
/// distributive lattice these generate exactly the prime filters ↑x.
pub fn join_irreducibles(m: &DeMorganAlgebra) -> Vec<usize> {
    (0..m.size())
        .filter(|&x| x != m.bottom() && m.lower_covers(x).len() == 1)
        .collect()
}

/// Dual space realized on prime filters, with the point registry
/// mapping each point back to its generating join-irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFilterDual {
    pub space: DualSpace,
    /// Point i is the filter `↑generators[i]`. The point order is chosen
    /// as (filter size ascending, generator ascending), which makes the
    /// index order a linear extension of ≼.
    pub generators: Vec<usize>,
}

/// Builds the dual space of `m`: points are the prime filters ↑j for
/// join-irreducible j, the order is filter inclusion, and the
/// involution is g(F) = {x | x° ∉ F}. All three structural claims about
/// g are re-verified rather than assumed.
pub fn dual_space(m: &DeMorganAlgebra) -> Result<PrimeFilterDual, DualityError> {
    let n = m.size();
    let jirr = join_irreducibles(m);
    let mut points: Vec<(Vec<bool>, usize, usize)> = jirr
        .iter()
        .map(|&j| {
            let filter: Vec<bool> = (0..n).map(|x| m.leq(j, x)).collect();
            let count = filter.iter().filter(|&&b| b).count();
            (filter, count, j)
        })
        .collect();
    points.sort_by_key(|&(_, size, generator)| (size, generator));
    let k = points.len();
    let generators: Vec<usize> = points.iter().map(|p| p.2).collect();
    let filters: Vec<Vec<bool>> = points.into_iter().map(|p| p.0).collect();
    let by_filter: BTreeMap<Vec<bool>, usize> =
        filters.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = (0..n).all(|x| !filters[i][x] || filters[j][x]);
        }
    }
    let mut f = vec![0usize; k];
    for i in 0..k {
        let g_set: Vec<bool> = (0..n).map(|x| !filters[i][m.neg(x)]).collect();
        f[i] = *by_filter.get(&g_set).ok_or_else(|| DualityError::InternalInvariant {
            what: "dual_space",
            detail: format!(
                "g of the filter at point {i} is not a prime filter; input escaped validation"
            ),
        })?;
    }
    let labels = Some(generators.iter().map(|&j| format!("up({})", m.display_element(j))).collect());
    let mut flat = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            flat.push(leq[i * k + j]);
        }
    }
    let space = DualSpace { size: k, leq: flat, f, labels };
    let violations = space.axiom_violations();
    if !violations.is_empty() {
        return Err(DualityError::InternalInvariant {
            what: "dual_space",
            detail: format!("constructed space violates {:?}", violations[0].axiom),
        });
    }
    Ok(PrimeFilterDual { space, generators })
}

/// The algebra of all structure maps X → alter ego, carried with the
/// map table realizing each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismAlgebra {
    pub algebra: DeMorganAlgebra,
    /// `morphisms[i][p]` = alter-ego value of element i at point p, in
    /// lexicographic enumeration order.
    pub morphisms: Vec<Vec<u8>>,
}

/// Enumerates all ≼-monotone, f-commuting maps X → {0,a,b,1} and
/// equips them with the pointwise operations of M₁. The result is
/// re-validated as a de Morgan algebra before being returned.
pub fn algebra_of(x: &DualSpace, limits: &Limits) -> Result<MorphismAlgebra, DualityError> {
    let m = x.size();
    if m > limits.max_dual_points {
        return Err(DualityError::SizeLimit {
            what: "algebra_of",
            size: m,
            limit: limits.max_dual_points,
        });
    }
    let mut morphisms: Vec<Vec<u8>> = Vec::new();
    let mut cur = vec![0u8; m];
    enumerate_morphisms(x, 0, &mut cur, &mut morphisms);
    let n = morphisms.len();
    let index: BTreeMap<&[u8], usize> =
        morphisms.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let base = m1();
    let lookup = |v: &[u8]| -> Result<usize, DualityError> {
        index.get(v).copied().ok_or_else(|| DualityError::InternalInvariant {
            what: "algebra_of",
            detail: format!("pointwise image {v:?} is not a morphism"),
        })
    };
    let mut join = vec![vec![0usize; n]; n];
    let mut meet = vec![vec![0usize; n]; n];
    let mut neg = vec![0usize; n];
    let mut buf = vec![0u8; m];
    for i in 0..n {
        for p in 0..m {
            buf[p] = base.neg(morphisms[i][p] as usize) as u8;
        }
        neg[i] = lookup(&buf)?;
        for j in 0..n {
            for p in 0..m {
                buf[p] = base.join(morphisms[i][p] as usize, morphisms[j][p] as usize) as u8;
            }
            join[i][j] = lookup(&buf)?;
            for p in 0..m {
                buf[p] = base.meet(morphisms[i][p] as usize, morphisms[j][p] as usize) as u8;
            }
            meet[i][j] = lookup(&buf)?;
        }
    }
    let bottom = lookup(&vec![0u8; m])?;
    let top = lookup(&vec![3u8; m])?;
    let labels = Some(
        morphisms
            .iter()
            .map(|v| {
                if v.is_empty() {
                    String::from("()")
                } else {
                    v.iter().map(|&c| VALUE_CHARS[c as usize]).collect()
                }
            })
            .collect(),
    );
    let raw = RawAlgebra { size: n, bottom, top, join, meet, neg, labels };
    let algebra = validate_algebra(&raw).map_err(|e| DualityError::InternalInvariant {
        what: "algebra_of",
        detail: format!("morphism algebra failed validation: {e}"),
    })?;
    Ok(MorphismAlgebra { algebra, morphisms })
}

fn enumerate_morphisms(x: &DualSpace, p: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if p == x.size() {
        out.push(cur.clone());
        return;
    }
    'values: for v in 0u8..4 {
        let fp = x.f(p);
        if fp == p && AE_F[v as usize] != v as usize {
            continue;
        }
        if fp < p && cur[fp] != AE_F[v as usize] as u8 {
            continue;
        }
        for q in 0..p {
            if x.leq(q, p) && !AE_LEQ[cur[q] as usize][v as usize] {
                continue 'values;
            }
            if x.leq(p, q) && !AE_LEQ[v as usize][cur[q] as usize] {
                continue 'values;
            }
        }
        cur[p] = v;
        enumerate_morphisms(x, p + 1, cur, out);
    }
}

/// Outcome of scanning condition (3): x ≼ y implies x = y or x = f(y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition3Report {
    pub holds: bool,
    /// Lexicographically first violating pair, for reproducible output.
    pub witness: Option<(usize, usize)>,
}

/// Scans all ordered pairs in lexicographic order.
pub fn condition3_holds(x: &DualSpace) -> Condition3Report {
    for p in 0..x.size() {
        for q in 0..x.size() {
            if x.leq(p, q) && p != q && p != x.f(q) {
                return Condition3Report { holds: false, witness: Some((p, q)) };
            }
        }
    }
    Condition3Report { holds: true, witness: None }
}

/// Selects Y ⊆ X: every fixed point of f, plus the smaller index from
/// each 2-orbit. The selection topology is discrete in the finite case
/// and has no computational content.
pub fn select_y(x: &DualSpace) -> Vec<usize> {
    (0..x.size()).filter(|&p| x.f(p) >= p).collect()
}

/// Tag of one direct factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorTag {
    B2,
    K3,
    M1,
}

impl FactorTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FactorTag::B2 => "B2",
            FactorTag::K3 => "K3",
            FactorTag::M1 => "M1",
        }
    }

    pub fn algebra(self) -> DeMorganAlgebra {
        match self {
            FactorTag::B2 => b2(),
            FactorTag::K3 => k3(),
            FactorTag::M1 => m1(),
        }
    }

    pub fn size(self) -> usize {
        match self {
            FactorTag::B2 => 2,
            FactorTag::K3 => 3,
            FactorTag::M1 => 4,
        }
    }
}

/// Witness that an algebra is the full direct product of copies of
/// {0,1}, {0,a,1} and M₁, realized by restriction to the selected
/// points Y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDecomposition {
    y_points: Vec<usize>,
    tags: Vec<FactorTag>,
    /// Whether the a↔b renaming was applied at this coordinate (the
    /// {0,b,1} value set is normalized to the K3 tag).
    swapped: Vec<bool>,
    counts: (usize, usize, usize),
    /// `iso[x]` = row-major mixed-radix index of x's coordinate tuple in
    /// the product of the tagged factors.
    iso: Vec<usize>,
}

impl FactorDecomposition {
    /// Number of factors.
    pub fn width(&self) -> usize {
        self.tags.len()
    }

    pub fn y_points(&self) -> &[usize] {
        &self.y_points
    }

    pub fn tags(&self) -> &[FactorTag] {
        &self.tags
    }

    pub fn swapped(&self) -> &[bool] {
        &self.swapped
    }

    /// (number of B2, number of K3, number of M1) factors.
    pub fn counts(&self) -> (usize, usize, usize) {
        self.counts
    }

    pub fn iso(&self) -> &[usize] {
        &self.iso
    }

    pub fn factor_size(&self, k: usize) -> usize {
        self.tags[k].size()
    }

    pub fn product_size(&self) -> usize {
        self.tags.iter().map(|t| t.size()).product()
    }

    /// Row-major product index of element `x` of the decomposed
    /// algebra.
    pub fn product_index(&self, x: usize) -> usize {
        self.iso[x]
    }

    /// Mixed-radix digits of `x`, one per factor.
    pub fn coordinates(&self, x: usize) -> Vec<usize> {
        let mut rest = self.iso[x];
        let mut digits = vec![0usize; self.width()];
        for k in (0..self.width()).rev() {
            let s = self.factor_size(k);
            digits[k] = rest % s;
            rest /= s;
        }
        digits
    }

    /// Row-major index of a digit tuple.
    pub fn encode(&self, digits: &[usize]) -> usize {
        let mut idx = 0usize;
        for (k, &d) in digits.iter().enumerate() {
            idx = idx * self.factor_size(k) + d;
        }
        idx
    }

    /// Re-checks that this value really decomposes `m`: the index map
    /// is a bijection onto the full tagged product and a de Morgan
    /// homomorphism coordinatewise. Returns the first discrepancy.
    pub fn revalidate(&self, m: &DeMorganAlgebra) -> Result<(), String> {
        let n = m.size();
        if self.iso.len() != n {
            return Err(format!("index map has {} entries for {} elements", self.iso.len(), n));
        }
        if self.tags.len() != self.y_points.len() || self.tags.len() != self.swapped.len() {
            return Err(String::from("factor lists have inconsistent lengths"));
        }
        let expected: (usize, usize, usize) = (
            self.tags.iter().filter(|t| **t == FactorTag::B2).count(),
            self.tags.iter().filter(|t| **t == FactorTag::K3).count(),
            self.tags.iter().filter(|t| **t == FactorTag::M1).count(),
        );
        if expected != self.counts {
            return Err(String::from("factor counts disagree with tags"));
        }
        if self.product_size() != n {
            return Err(format!("product size {} does not match carrier {n}", self.product_size()));
        }
        let mut seen = vec![false; n];
        for &i in &self.iso {
            if i >= n || seen[i] {
                return Err(String::from("index map is not a bijection onto the product"));
            }
            seen[i] = true;
        }
        let factors: Vec<DeMorganAlgebra> = self.tags.iter().map(|t| t.algebra()).collect();
        let coords: Vec<Vec<usize>> = (0..n).map(|x| self.coordinates(x)).collect();
        for (k, fac) in factors.iter().enumerate() {
            for x in 0..n {
                let nx = coords[m.neg(x)][k];
                if nx != fac.neg(coords[x][k]) {
                    return Err(format!("negation not coordinatewise at element {x}, factor {k}"));
                }
                for y in 0..n {
                    if coords[m.join(x, y)][k] != fac.join(coords[x][k], coords[y][k])
                        || coords[m.meet(x, y)][k] != fac.meet(coords[x][k], coords[y][k])
                    {
                        return Err(format!(
                            "lattice operations not coordinatewise at pair ({x},{y}), factor {k}"
                        ));
                    }
                }
            }
        }
        if self.iso[m.bottom()] != 0 || self.iso[m.top()] != n - 1 {
            return Err(String::from("bounds do not map to product bounds"));
        }
        Ok(())
    }
}

/// Failure side of [`decompose`]: the dual space with the first
/// condition-(3) violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionObstruction {
    pub dual: PrimeFilterDual,
    pub witness: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Decomposed(FactorDecomposition),
    Obstructed(DecompositionObstruction),
}

/// Evaluation table of `m` against its prime-filter dual:
/// `V[x][p] = (gen_p ≤ x) + 2·(gen_f(p) ≤ x)` in alter-ego encoding.
/// Row x is the evaluation morphism of x; column p is the hom M → M₁
/// determined by point p.
pub fn evaluation_matrix(m: &DeMorganAlgebra, dual: &PrimeFilterDual) -> Vec<Vec<u8>> {
    let k = dual.space.size();
    (0..m.size())
        .map(|x| {
            (0..k)
                .map(|p| {
                    let in_f = m.leq(dual.generators[p], x);
                    let in_g = m.leq(dual.generators[dual.space.f(p)], x);
                    (in_f as u8) | ((in_g as u8) << 1)
                })
                .collect()
        })
        .collect()
}

/// Attempts to write `m` as the full direct product of copies of
/// {0,1}, {0,a,1}, M₁ over the selected points of its dual. Succeeds
/// exactly when condition (3) holds on the dual; on success the
/// returned witness is fully verified, on failure the condition-(3)
/// violation is returned. Any other discrepancy is an internal error.
pub fn decompose(m: &DeMorganAlgebra, limits: &Limits) -> Result<DecomposeOutcome, DualityError> {
    let n = m.size();
    if n > limits.max_algebra_size {
        return Err(DualityError::SizeLimit {
            what: "decompose",
            size: n,
            limit: limits.max_algebra_size,
        });
    }
    let dual = dual_space(m)?;
    let report = condition3_holds(&dual.space);
    if let Some(witness) = report.witness {
        return Ok(DecomposeOutcome::Obstructed(DecompositionObstruction { dual, witness }));
    }
    let y = select_y(&dual.space);
    let v = evaluation_matrix(m, &dual);
    let mut tags = Vec::with_capacity(y.len());
    let mut swapped = Vec::with_capacity(y.len());
    for &p in &y {
        let mut present = [false; 4];
        for row in &v {
            present[row[p] as usize] = true;
        }
        let (tag, swap) = match present {
            [true, false, false, true] => (FactorTag::B2, false),
            [true, true, false, true] => (FactorTag::K3, false),
            [true, false, true, true] => (FactorTag::K3, true),
            [true, true, true, true] => (FactorTag::M1, false),
            _ => {
                return Err(DualityError::InternalInvariant {
                    what: "decompose",
                    detail: format!("value set {present:?} at point {p} is not a subalgebra"),
                })
            }
        };
        tags.push(tag);
        swapped.push(swap);
    }
    // digit of an alter-ego value in the canonical factor: B2 uses
    // {0,1}, K3 uses {0, mid, 1} with mid = a or the renamed b, M1 is
    // the identity on indices.
    let digit = |tag: FactorTag, swap: bool, value: u8| -> Result<usize, DualityError> {
        let v = value as usize;
        let d = match (tag, v) {
            (FactorTag::B2, 0) => Some(0),
            (FactorTag::B2, 3) => Some(1),
            (FactorTag::K3, 0) => Some(0),
            (FactorTag::K3, 1) if !swap => Some(1),
            (FactorTag::K3, 2) if swap => Some(1),
            (FactorTag::K3, 3) => Some(2),
            (FactorTag::M1, v) if v < 4 => Some(v),
            _ => None,
        };
        d.ok_or_else(|| DualityError::InternalInvariant {
            what: "decompose",
            detail: format!("value {v} outside the {} factor", tag.as_str()),
        })
    };
    let mut iso = vec![0usize; n];
    for x in 0..n {
        let mut idx = 0usize;
        for (k, &p) in y.iter().enumerate() {
            idx = idx * tags[k].size() + digit(tags[k], swapped[k], v[x][p])?;
        }
        iso[x] = idx;
    }
    let counts = (
        tags.iter().filter(|t| **t == FactorTag::B2).count(),
        tags.iter().filter(|t| **t == FactorTag::K3).count(),
        tags.iter().filter(|t| **t == FactorTag::M1).count(),
    );
    let decomposition =
        FactorDecomposition { y_points: y, tags, swapped, counts, iso };
    decomposition.revalidate(m).map_err(|detail| DualityError::InternalInvariant {
        what: "decompose",
        detail,
    })?;
    Ok(DecomposeOutcome::Decomposed(decomposition))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdirectFailure {
    pub factor: usize,
    pub missing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchworkFailure {
    pub a: usize,
    pub b: usize,
    /// The singleton position K = {position} at which the patch fails.
    pub position: usize,
    /// The patched tuple a↾K ∪ b↾(Y∖K) that is missing from A.
    pub patch: Vec<usize>,
}

/// Report of the Boolean-product test over a finite index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanProductReport {
    pub holds: bool,
    /// Condition (i), clopen equalizers, is vacuous over a finite
    /// discrete index set; recorded rather than checked.
    pub equalizer_condition_vacuous: bool,
    pub subdirect: bool,
    pub subdirect_failure: Option<SubdirectFailure>,
    pub patchwork: bool,
    pub patchwork_failure: Option<PatchworkFailure>,
    /// Over a finite discrete index set, holds ⟺ A is the full
    /// product; reported for cross-checking.
    pub is_full_product: bool,
}

/// Checks subdirectness and the patchwork property for a set of tuples
/// over finite Y. Patchwork is checked over all singleton sets K;
/// arbitrary clopen K follow by iterating singleton patches.
pub fn boolean_product_check(
    elements: &[Vec<usize>],
    factors: &[DeMorganAlgebra],
) -> Result<BooleanProductReport, DualityError> {
    if elements.is_empty() {
        return Err(DualityError::MalformedInput {
            detail: String::from("element list is empty; an algebra has at least one element"),
        });
    }
    let width = factors.len();
    let mut seen = alloc::collections::BTreeSet::new();
    for (i, t) in elements.iter().enumerate() {
        if t.len() != width {
            return Err(DualityError::MalformedInput {
                detail: format!("tuple {i} has {} entries for {width} factors", t.len()),
            });
        }
        for (k, &e) in t.iter().enumerate() {
            if e >= factors[k].size() {
                return Err(DualityError::MalformedInput {
                    detail: format!("tuple {i} entry {e} out of range for factor {k}"),
                });
            }
        }
        if !seen.insert(t.clone()) {
            return Err(DualityError::MalformedInput {
                detail: format!("tuple {i} duplicates an earlier tuple"),
            });
        }
    }
    let mut subdirect = true;
    let mut subdirect_failure = None;
    'factors: for (k, fac) in factors.iter().enumerate() {
        for value in 0..fac.size() {
            if !elements.iter().any(|t| t[k] == value) {
                subdirect = false;
                subdirect_failure = Some(SubdirectFailure { factor: k, missing: value });
                break 'factors;
            }
        }
    }
    let mut patchwork = true;
    let mut patchwork_failure = None;
    'pairs: for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            for position in 0..width {
                let mut patch = b.clone();
                patch[position] = a[position];
                if !seen.contains(&patch) {
                    patchwork = false;
                    patchwork_failure =
                        Some(PatchworkFailure { a: i, b: j, position, patch });
                    break 'pairs;
                }
            }
        }
    }
    let full: usize = factors.iter().map(|f| f.size()).product();
    Ok(BooleanProductReport {
        holds: subdirect && patchwork,
        equalizer_condition_vacuous: true,
        subdirect,
        subdirect_failure,
        patchwork,
        patchwork_failure,
        is_full_product: elements.len() == full,
    })
}

/// Certificate extracted from a condition-(3) violation: two distinct
/// congruences of the morphism algebra with equal skeleton
/// restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationCertificate {
    pub morphism_algebra: MorphismAlgebra,
    /// Agreement kernel on {x, f(x)}.
    pub alpha: Congruence,
    /// Agreement kernel on {y, f(y)}.
    pub beta: Congruence,
}

/// Builds the proof's congruences α, β from a violating pair x ≼ y
/// with x ≠ y and x ≠ f(y): morphisms are identified when they agree
/// on {x, f(x)} (resp. {y, f(y)}). Verifies α ≠ β, that both really
/// are congruences, and that they coincide on the skeleton.
pub fn congruence_witnesses_from_violation(
    x_space: &DualSpace,
    x: usize,
    y: usize,
    limits: &Limits,
) -> Result<ViolationCertificate, DualityError> {
    let m = x_space.size();
    if x >= m || y >= m {
        return Err(DualityError::PreconditionViolated {
            what: "congruence_witnesses_from_violation",
            detail: format!("points ({x},{y}) out of range for {m} points"),
        });
    }
    if !x_space.leq(x, y) || x == y || x == x_space.f(y) {
        return Err(DualityError::PreconditionViolated {
            what: "congruence_witnesses_from_violation",
            detail: format!("({x},{y}) is not a condition-(3) violation"),
        });
    }
    let ma = algebra_of(x_space, limits)?;
    let kernel = |p: usize| -> Congruence {
        let fp = x_space.f(p);
        let mut first: BTreeMap<(u8, u8), usize> = BTreeMap::new();
        let blocks: Vec<usize> = ma
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, phi)| *first.entry((phi[p], phi[fp])).or_insert(i))
            .collect();
        Congruence::from_blocks(
            ma.algebra.size(),
            &group_by_representative(&blocks),
        )
        .expect("agreement kernel is a partition by construction")
    };
    let alpha = kernel(x);
    let beta = kernel(y);
    if alpha == beta {
        return Err(DualityError::InternalInvariant {
            what: "congruence_witnesses_from_violation",
            detail: String::from("kernels coincide despite distinct substructures"),
        });
    }
    for (name, theta) in [("alpha", &alpha), ("beta", &beta)] {
        if !is_congruence(&ma.algebra, theta) {
            return Err(DualityError::InternalInvariant {
                what: "congruence_witnesses_from_violation",
                detail: format!("{name} is not a congruence"),
            });
        }
    }
    let skeleton = crate::algebra::skeleton(&ma.algebra);
    if restrict(&alpha, &skeleton) != restrict(&beta, &skeleton) {
        return Err(DualityError::InternalInvariant {
            what: "congruence_witnesses_from_violation",
            detail: String::from("skeleton restrictions differ"),
        });
    }
    Ok(ViolationCertificate { morphism_algebra: ma, alpha, beta })
}

fn group_by_representative(block_of: &[usize]) -> Vec<Vec<usize>> {
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &b) in block_of.iter().enumerate() {
        map.entry(b).or_default().push(i);
    }
    map.into_values().collect()
}

/// Verifies the duality round trip on `m` directly: the evaluation map
/// x ↦ (value of x at each dual point) must be an isomorphism onto
/// algebra_of(dual_space(m)). The witness is the evaluation map itself,
/// re-verified table-by-table; failure is an implementation bug.
pub fn double_dual_check(m: &DeMorganAlgebra, limits: &Limits) -> Result<IsoWitness, DualityError> {
    let dual = dual_space(m)?;
    let ma = algebra_of(&dual.space, limits)?;
    let n = m.size();
    if ma.algebra.size() != n {
        return Err(DualityError::InternalInvariant {
            what: "double_dual_check",
            detail: format!("double dual has {} elements, expected {n}", ma.algebra.size()),
        });
    }
    let index: BTreeMap<&[u8], usize> =
        ma.morphisms.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let v = evaluation_matrix(m, &dual);
    let mut mapping = vec![0usize; n];
    let mut hit = vec![false; n];
    for x in 0..n {
        let i = *index.get(&v[x].as_slice()).ok_or_else(|| DualityError::InternalInvariant {
            what: "double_dual_check",
            detail: format!("evaluation of element {x} is not a morphism"),
        })?;
        if hit[i] {
            return Err(DualityError::InternalInvariant {
                what: "double_dual_check",
                detail: format!("evaluation map is not injective at element {x}"),
            });
        }
        hit[i] = true;
        mapping[x] = i;
    }
    for x in 0..n {
        if ma.algebra.neg(mapping[x]) != mapping[m.neg(x)] {
            return Err(DualityError::InternalInvariant {
                what: "double_dual_check",
                detail: format!("evaluation does not commute with negation at {x}"),
            });
        }
        for z in 0..n {
            if ma.algebra.join(mapping[x], mapping[z]) != mapping[m.join(x, z)]
                || ma.algebra.meet(mapping[x], mapping[z]) != mapping[m.meet(x, z)]
            {
                return Err(DualityError::InternalInvariant {
                    what: "double_dual_check",
                    detail: format!("evaluation is not a homomorphism at pair ({x},{z})"),
                });
            }
        }
    }
    if mapping[m.bottom()] != ma.algebra.bottom() || mapping[m.top()] != ma.algebra.top() {
        return Err(DualityError::InternalInvariant {
            what: "double_dual_check",
            detail: String::from("evaluation does not preserve the bounds"),
        });
    }
    Ok(IsoWitness { kind: StructureKind::Algebra, mapping, verified: true })
}

/// Independent realization of the dual: all homs M → M₁ enumerated
/// directly, ordered pointwise by the alter-ego order, with involution
/// φ ↦ f∘φ. Cross-validates the prime-filter construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDual {
    pub space: DualSpace,
    /// `homs[i][x]` = value of hom i at algebra element x, in
    /// lexicographic order.
    pub homs: Vec<Vec<u8>>,
}

pub fn hom_dual_space(m: &DeMorganAlgebra, limits: &Limits) -> Result<HomDual, DualityError> {
    let n = m.size();
    if n > limits.max_algebra_size {
        return Err(DualityError::SizeLimit {
            what: "hom_dual_space",
            size: n,
            limit: limits.max_algebra_size,
        });
    }
    let base = m1();
    let mut homs: Vec<Vec<u8>> = Vec::new();
    let mut cur = vec![0u8; n];
    enumerate_homs(m, &base, 0, &mut cur, &mut homs);
    let k = homs.len();
    let index: BTreeMap<&[u8], usize> =
        homs.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut leq = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            leq.push((0..n).all(|x| AE_LEQ[homs[i][x] as usize][homs[j][x] as usize]));
        }
    }
    let mut f = vec![0usize; k];
    let mut buf = vec![0u8; n];
    for i in 0..k {
        for x in 0..n {
            buf[x] = AE_F[homs[i][x] as usize] as u8;
        }
        f[i] = *index.get(&buf.as_slice()).ok_or_else(|| DualityError::InternalInvariant {
            what: "hom_dual_space",
            detail: format!("f-image of hom {i} is not a hom"),
        })?;
    }
    let space = DualSpace { size: k, leq, f, labels: None };
    let violations = space.axiom_violations();
    if !violations.is_empty() {
        return Err(DualityError::InternalInvariant {
            what: "hom_dual_space",
            detail: format!("hom space violates {:?}", violations[0].axiom),
        });
    }
    Ok(HomDual { space, homs })
}

fn enumerate_homs(
    m: &DeMorganAlgebra,
    base: &DeMorganAlgebra,
    e: usize,
    cur: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    let n = m.size();
    if e == n {
        // deferred pair constraints: joins/meets landing on elements
        // assigned before both operands
        for x in 0..n {
            for y in 0..n {
                if cur[m.join(x, y)] != base.join(cur[x] as usize, cur[y] as usize) as u8
                    || cur[m.meet(x, y)] != base.meet(cur[x] as usize, cur[y] as usize) as u8
                {
                    return;
                }
            }
        }
        out.push(cur.clone());
        return;
    }
    'values: for v in 0u8..4 {
        if e == m.bottom() && v != 0 {
            continue;
        }
        if e == m.top() && v != 3 {
            continue;
        }
        let ne = m.neg(e);
        if ne == e {
            if base.neg(v as usize) != v as usize {
                continue;
            }
        } else if ne < e && base.neg(cur[ne] as usize) != v as usize {
            continue;
        }
        for d in 0..e {
            if m.leq(d, e) && !base.leq(cur[d] as usize, v as usize) {
                continue 'values;
            }
            if m.leq(e, d) && !base.leq(v as usize, cur[d] as usize) {
                continue 'values;
            }
            let t = m.join(d, e);
            if t <= e && cur_or(cur, t, e, v) != base.join(cur[d] as usize, v as usize) as u8 {
                continue 'values;
            }
            let t = m.meet(d, e);
            if t <= e && cur_or(cur, t, e, v) != base.meet(cur[d] as usize, v as usize) as u8 {
                continue 'values;
            }
        }
        cur[e] = v;
        enumerate_homs(m, base, e + 1, cur, out);
    }
}

/// Value of element `t` in the partial assignment where `e` (the
/// element being placed) holds `v`.
fn cur_or(cur: &[u8], t: usize, e: usize, v: u8) -> u8 {
    if t == e {
        v
    } else {
        cur[t]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{c4, product, trivial};
    use crate::congruence::{all_congruences, skeleton_determination_check};
    use crate::iso::find_algebra_isomorphism;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn alter_ego_matches_fixed_tables() {
        let ae = alter_ego();
        assert_eq!(ae.size(), 4);
        // b is the bottom, a the top, 0 and 1 incomparable
        assert!(ae.leq(2, 0) && ae.leq(2, 3) && ae.leq(0, 1) && ae.leq(3, 1));
        assert!(!ae.leq(0, 3) && !ae.leq(3, 0));
        assert_eq!((ae.f(0), ae.f(1), ae.f(2), ae.f(3)), (0, 2, 1, 3));
    }

    #[test]
    fn join_irreducibles_examples() {
        assert_eq!(join_irreducibles(&m1()), vec![1, 2]);
        assert_eq!(join_irreducibles(&b2()), vec![1]);
        assert_eq!(join_irreducibles(&c4()), vec![1, 2, 3]);
        assert_eq!(join_irreducibles(&trivial()), Vec::<usize>::new());
    }

    #[test]
    fn dual_of_b2_is_single_fixed_point() {
        let d = dual_space(&b2()).unwrap();
        assert_eq!(d.space.size(), 1);
        assert_eq!(d.space.f(0), 0);
    }

    #[test]
    fn dual_of_m1_is_swapped_antichain() {
        let d = dual_space(&m1()).unwrap();
        assert_eq!(d.space.size(), 2);
        assert!(!d.space.leq(0, 1) && !d.space.leq(1, 0));
        assert_eq!(d.space.f(0), 1);
        assert_eq!(d.generators, vec![1, 2]);
    }

    #[test]
    fn dual_of_c4_is_chain_with_swapped_ends() {
        let d = dual_space(&c4()).unwrap();
        assert_eq!(d.space.size(), 3);
        // index order is a linear extension: 0 ≼ 1 ≼ 2
        assert!(d.space.leq(0, 1) && d.space.leq(1, 2) && d.space.leq(0, 2));
        assert_eq!((d.space.f(0), d.space.f(1), d.space.f(2)), (2, 1, 0));
        // registry: smallest filter first
        assert_eq!(d.generators, vec![3, 2, 1]);
    }

    #[test]
    fn dual_of_trivial_is_empty() {
        let d = dual_space(&trivial()).unwrap();
        assert_eq!(d.space.size(), 0);
    }

    #[test]
    fn algebra_of_single_fixed_point_is_b2() {
        let d = dual_space(&b2()).unwrap();
        let ma = algebra_of(&d.space, &limits()).unwrap();
        assert_eq!(ma.algebra.size(), 2);
        assert!(find_algebra_isomorphism(&ma.algebra, &b2()).unwrap().is_some());
    }

    #[test]
    fn algebra_of_swapped_antichain_is_m1() {
        let d = dual_space(&m1()).unwrap();
        let ma = algebra_of(&d.space, &limits()).unwrap();
        assert_eq!(ma.algebra.size(), 4);
        assert!(find_algebra_isomorphism(&ma.algebra, &m1()).unwrap().is_some());
    }

    #[test]
    fn algebra_of_swapped_two_chain_is_k3() {
        let raw = RawDualSpace {
            size: 2,
            leq: vec![vec![true, true], vec![false, true]],
            f: vec![1, 0],
            labels: None,
        };
        let x = validate_dual_space(&raw).unwrap();
        let ma = algebra_of(&x, &limits()).unwrap();
        assert_eq!(ma.algebra.size(), 3);
        assert!(find_algebra_isomorphism(&ma.algebra, &k3()).unwrap().is_some());
    }

    #[test]
    fn algebra_of_empty_space_is_trivial() {
        let raw = RawDualSpace { size: 0, leq: vec![], f: vec![], labels: None };
        let x = validate_dual_space(&raw).unwrap();
        let ma = algebra_of(&x, &limits()).unwrap();
        assert_eq!(ma.algebra.size(), 1);
    }

    #[test]
    fn validate_rejects_non_reversing_involution() {
        // 2-chain with identity involution: 0 ≼ 1 but f(1) = 1 ⋠ 0 = f(0)
        let raw = RawDualSpace {
            size: 2,
            leq: vec![vec![true, true], vec![false, true]],
            f: vec![0, 1],
            labels: None,
        };
        match validate_dual_space(&raw) {
            Err(DualityError::Axioms(vs)) => {
                assert!(vs.iter().any(|v| v.axiom == DualAxiom::InvolutionOrderReversing));
            }
            other => panic!("expected axiom violations, got {other:?}"),
        }
    }

    #[test]
    fn condition3_examples() {
        assert!(condition3_holds(&dual_space(&m1()).unwrap().space).holds);
        assert!(condition3_holds(&dual_space(&k3()).unwrap().space).holds);
        let r = condition3_holds(&dual_space(&c4()).unwrap().space);
        assert!(!r.holds);
        assert_eq!(r.witness, Some((0, 1)));
    }

    #[test]
    fn select_y_examples() {
        let b2_dual = dual_space(&b2()).unwrap();
        assert_eq!(select_y(&b2_dual.space), vec![0]);
        let m1_dual = dual_space(&m1()).unwrap();
        assert_eq!(select_y(&m1_dual.space), vec![0]);
        let c4_dual = dual_space(&c4()).unwrap();
        assert_eq!(select_y(&c4_dual.space), vec![0, 1]);
    }

    #[test]
    fn select_y_covers_space_with_f() {
        for m in [b2(), k3(), m1(), c4()] {
            let d = dual_space(&m).unwrap();
            let y = select_y(&d.space);
            let fixed = (0..d.space.size()).filter(|&p| d.space.f(p) == p).count();
            let orbits = (d.space.size() - fixed) / 2;
            assert_eq!(y.len(), fixed + orbits);
            let mut covered: Vec<bool> = vec![false; d.space.size()];
            for &p in &y {
                covered[p] = true;
                covered[d.space.f(p)] = true;
            }
            assert!(covered.into_iter().all(|c| c));
        }
    }

    #[test]
    fn decompose_m1() {
        match decompose(&m1(), &limits()).unwrap() {
            DecomposeOutcome::Decomposed(d) => {
                assert_eq!(d.counts(), (0, 0, 1));
                assert_eq!(d.y_points().len(), 1);
            }
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn decompose_triple_product() {
        let lim = limits();
        let p = product(&product(&m1(), &k3(), &lim).unwrap(), &b2(), &lim).unwrap();
        match decompose(&p, &lim).unwrap() {
            DecomposeOutcome::Decomposed(d) => {
                assert_eq!(d.counts(), (1, 1, 1));
                assert_eq!(d.product_size(), 24);
            }
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn decompose_c4_is_obstructed() {
        match decompose(&c4(), &limits()).unwrap() {
            DecomposeOutcome::Obstructed(o) => assert_eq!(o.witness, (0, 1)),
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn decompose_trivial_is_empty_product() {
        match decompose(&trivial(), &limits()).unwrap() {
            DecomposeOutcome::Decomposed(d) => {
                assert_eq!(d.counts(), (0, 0, 0));
                assert_eq!(d.product_size(), 1);
            }
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn skeleton_determination_on_decomposed_products() {
        let lim = limits();
        let p = product(&product(&m1(), &k3(), &lim).unwrap(), &b2(), &lim).unwrap();
        let d = match decompose(&p, &lim).unwrap() {
            DecomposeOutcome::Decomposed(d) => d,
            other => panic!("expected decomposition, got {other:?}"),
        };
        let con = all_congruences(&p, &lim).unwrap();
        assert_eq!(con.len(), 8);
        for theta in &con {
            let r = skeleton_determination_check(&p, &d, theta).unwrap();
            assert!(r.holds, "failed for {:?}", theta.blocks());
        }
    }

    #[test]
    fn boolean_product_check_full_product() {
        let lim = limits();
        let p = product(&m1(), &k3(), &lim).unwrap();
        let d = match decompose(&p, &lim).unwrap() {
            DecomposeOutcome::Decomposed(d) => d,
            other => panic!("expected decomposition, got {other:?}"),
        };
        let tuples: Vec<Vec<usize>> = (0..p.size()).map(|x| d.coordinates(x)).collect();
        let factors: Vec<DeMorganAlgebra> = d.tags().iter().map(|t| t.algebra()).collect();
        let report = boolean_product_check(&tuples, &factors).unwrap();
        assert!(report.holds && report.subdirect && report.patchwork && report.is_full_product);
    }

    #[test]
    fn boolean_product_check_diagonal_fails_patchwork() {
        let report =
            boolean_product_check(&[vec![0, 0], vec![1, 1]], &[b2(), b2()]).unwrap();
        assert!(!report.holds);
        assert!(report.subdirect);
        let f = report.patchwork_failure.unwrap();
        assert_eq!((f.a, f.b, f.position), (0, 1, 0));
        assert_eq!(f.patch, vec![0, 1]);
        assert!(!report.is_full_product);
    }

    #[test]
    fn boolean_product_check_singleton_index() {
        let report = boolean_product_check(&[vec![0], vec![1], vec![2]], &[k3()]).unwrap();
        assert!(report.holds && report.is_full_product);
    }

    #[test]
    fn boolean_product_check_rejects_duplicates() {
        let err = boolean_product_check(&[vec![0], vec![0]], &[b2()]).unwrap_err();
        assert!(matches!(err, DualityError::MalformedInput { .. }));
    }

    #[test]
    fn violation_certificate_for_c4() {
        let lim = limits();
        let d = dual_space(&c4()).unwrap();
        let w = condition3_holds(&d.space).witness.unwrap();
        let cert = congruence_witnesses_from_violation(&d.space, w.0, w.1, &lim).unwrap();
        assert_ne!(cert.alpha, cert.beta);
        assert_eq!(cert.alpha.blocks(), vec![vec![0], vec![1, 2], vec![3]]);
        assert_eq!(cert.beta.blocks(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn violation_certificate_rejects_bad_pair() {
        let d = dual_space(&c4()).unwrap();
        // (0, 2) has 0 = f(2): not a violation
        let err = congruence_witnesses_from_violation(&d.space, 0, 2, &limits()).unwrap_err();
        assert!(matches!(err, DualityError::PreconditionViolated { .. }));
    }

    #[test]
    fn double_dual_check_named() {
        for m in [b2(), k3(), m1(), c4(), trivial()] {
            let w = double_dual_check(&m, &limits()).unwrap();
            assert!(w.verified);
            assert_eq!(w.mapping.len(), m.size());
        }
    }

    #[test]
    fn hom_dual_matches_prime_filter_dual_for_c4() {
        let lim = limits();
        let m = c4();
        let hd = hom_dual_space(&m, &lim).unwrap();
        let pd = dual_space(&m).unwrap();
        assert_eq!(hd.space.size(), pd.space.size());
        // the evaluation columns are exactly the homs
        let v = evaluation_matrix(&m, &pd);
        for p in 0..pd.space.size() {
            let column: Vec<u8> = v.iter().map(|row| row[p]).collect();
            assert!(hd.homs.contains(&column), "column {p} is not a hom");
        }
    }
}
