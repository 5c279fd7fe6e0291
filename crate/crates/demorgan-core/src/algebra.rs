//! Construction, validation and basic manipulation of finite de Morgan
//! algebras.
//!
//! Elements are dense indices `0..n`. The lattice order is derived, not
//! stored: `x ≤ y ⟺ x ∧ y = x`. Bottom and top are explicit fields and
//! are not required to be indices `0` and `n-1`, which keeps subalgebra
//! re-indexing simple.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Limits;

/// Unvalidated operation tables, as read from external input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebra {
    pub size: usize,
    pub bottom: usize,
    pub top: usize,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub labels: Option<Vec<String>>,
}

/// A finite de Morgan algebra over indices `0..size`.
///
/// Values of this type always satisfy the bounded-distributive-lattice
/// axioms, `x°° = x`, `(x ∧ y)° = x° ∨ y°` and `1° = 0`; construction
/// goes through [`validate_algebra`], which scans every axiom
/// exhaustively. All values are immutable after construction and safe to
/// share between threads.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeMorganAlgebra {
    size: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
    neg: Vec<usize>,
    bottom: usize,
    top: usize,
    labels: Option<Vec<String>>,
}

/// Names of the axioms checked by [`validate_algebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    JoinCommutative,
    MeetCommutative,
    JoinAssociative,
    MeetAssociative,
    JoinAbsorption,
    MeetAbsorption,
    BottomIdentity,
    TopIdentity,
    MeetDistributive,
    JoinDistributive,
    Involution,
    DeMorganMeet,
    DeMorganJoin,
    TopNegation,
    BottomNegation,
    NegationAntitone,
}

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::JoinCommutative => "join_commutative",
            Axiom::MeetCommutative => "meet_commutative",
            Axiom::JoinAssociative => "join_associative",
            Axiom::MeetAssociative => "meet_associative",
            Axiom::JoinAbsorption => "join_absorption",
            Axiom::MeetAbsorption => "meet_absorption",
            Axiom::BottomIdentity => "bottom_identity",
            Axiom::TopIdentity => "top_identity",
            Axiom::MeetDistributive => "meet_distributive",
            Axiom::JoinDistributive => "join_distributive",
            Axiom::Involution => "involution",
            Axiom::DeMorganMeet => "de_morgan_meet",
            Axiom::DeMorganJoin => "de_morgan_join",
            Axiom::TopNegation => "top_negation",
            Axiom::BottomNegation => "bottom_negation",
            Axiom::NegationAntitone => "negation_antitone",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A violated axiom together with the first witnessing element tuple, in
/// scan order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

/// A structural defect that makes the tables unscannable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Malformation {
    EmptyCarrier,
    TableRows { table: &'static str, expected: usize, got: usize },
    RaggedRow { table: &'static str, row: usize, expected: usize, got: usize },
    EntryOutOfRange { table: &'static str, row: usize, col: usize, entry: usize },
    BoundOutOfRange { bound: &'static str, value: usize },
    LabelCount { expected: usize, got: usize },
}

impl fmt::Display for Malformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Malformation::EmptyCarrier => write!(f, "carrier must have at least one element"),
            Malformation::TableRows { table, expected, got } => {
                write!(f, "{table} table has {got} rows, expected {expected}")
            }
            Malformation::RaggedRow { table, row, expected, got } => {
                write!(f, "{table} table row {row} has {got} entries, expected {expected}")
            }
            Malformation::EntryOutOfRange { table, row, col, entry } => {
                write!(f, "{table}[{row}][{col}] = {entry} is out of range")
            }
            Malformation::BoundOutOfRange { bound, value } => {
                write!(f, "{bound} = {value} is out of range")
            }
            Malformation::LabelCount { expected, got } => {
                write!(f, "{got} labels given for {expected} elements")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// Tables are not even well-formed; nothing could be scanned.
    Malformed(Vec<Malformation>),
    /// Well-formed tables violating the listed axioms.
    Axioms(Vec<AxiomViolation>),
    /// A construction would exceed the configured carrier limit.
    SizeOverflow { requested: usize, limit: usize },
    /// A subset handed to [`SubalgebraEmbedding::new`] is not a
    /// subuniverse.
    NotASubuniverse { op: &'static str, args: Vec<usize>, missing: usize },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Malformed(issues) => {
                write!(f, "malformed tables: ")?;
                for (i, issue) in issues.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{issue}")?;
                }
                Ok(())
            }
            AlgebraError::Axioms(violations) => {
                write!(f, "axiom violations: ")?;
                for (i, v) in violations.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{} at {:?}", v.axiom, v.witness)?;
                }
                Ok(())
            }
            AlgebraError::SizeOverflow { requested, limit } => {
                write!(f, "carrier of size {requested} exceeds limit {limit}")
            }
            AlgebraError::NotASubuniverse { op, args, missing } => {
                write!(f, "subset not closed: {op}{args:?} = {missing} is outside")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// Validates candidate tables and returns the algebra, or the complete
/// list of violated axioms with witnessing tuples.
pub fn validate_algebra(raw: &RawAlgebra) -> Result<DeMorganAlgebra, AlgebraError> {
    let issues = well_formedness_issues(raw);
    if !issues.is_empty() {
        return Err(AlgebraError::Malformed(issues));
    }
    let n = raw.size;
    let mut flat_join = Vec::with_capacity(n * n);
    let mut flat_meet = Vec::with_capacity(n * n);
    for row in &raw.join {
        flat_join.extend_from_slice(row);
    }
    for row in &raw.meet {
        flat_meet.extend_from_slice(row);
    }
    let candidate = DeMorganAlgebra {
        size: n,
        join: flat_join,
        meet: flat_meet,
        neg: raw.neg.clone(),
        bottom: raw.bottom,
        top: raw.top,
        labels: raw.labels.clone(),
    };
    let violations = candidate.axiom_violations();
    if violations.is_empty() {
        Ok(candidate)
    } else {
        Err(AlgebraError::Axioms(violations))
    }
}

fn well_formedness_issues(raw: &RawAlgebra) -> Vec<Malformation> {
    let mut issues = Vec::new();
    let n = raw.size;
    if n == 0 {
        issues.push(Malformation::EmptyCarrier);
        return issues;
    }
    for (name, table) in [("join", &raw.join), ("meet", &raw.meet)] {
        if table.len() != n {
            issues.push(Malformation::TableRows { table: name, expected: n, got: table.len() });
            continue;
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                issues.push(Malformation::RaggedRow {
                    table: name,
                    row: r,
                    expected: n,
                    got: row.len(),
                });
                continue;
            }
            for (c, &entry) in row.iter().enumerate() {
                if entry >= n {
                    issues.push(Malformation::EntryOutOfRange { table: name, row: r, col: c, entry });
                }
            }
        }
    }
    if raw.neg.len() != n {
        issues.push(Malformation::TableRows { table: "neg", expected: n, got: raw.neg.len() });
    } else {
        for (r, &entry) in raw.neg.iter().enumerate() {
            if entry >= n {
                issues.push(Malformation::EntryOutOfRange { table: "neg", row: r, col: 0, entry });
            }
        }
    }
    if raw.bottom >= n {
        issues.push(Malformation::BoundOutOfRange { bound: "bottom", value: raw.bottom });
    }
    if raw.top >= n {
        issues.push(Malformation::BoundOutOfRange { bound: "top", value: raw.top });
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != n {
            issues.push(Malformation::LabelCount { expected: n, got: labels.len() });
        }
    }
    issues
}

impl DeMorganAlgebra {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    /// Derived order: `x ≤ y ⟺ x ∧ y = x`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x].as_str())
    }

    /// Label when present, index otherwise.
    pub fn display_element(&self, x: usize) -> String {
        match self.label(x) {
            Some(l) => l.to_string(),
            None => x.to_string(),
        }
    }

    /// Elements covered by `x` (maximal elements strictly below `x`).
    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        (0..self.size)
            .filter(|&y| self.lt(y, x) && !(0..self.size).any(|z| self.lt(y, z) && self.lt(z, x)))
            .collect()
    }

    pub fn raw(&self) -> RawAlgebra {
        let n = self.size;
        RawAlgebra {
            size: n,
            bottom: self.bottom,
            top: self.top,
            join: (0..n).map(|x| (0..n).map(|y| self.join(x, y)).collect()).collect(),
            meet: (0..n).map(|x| (0..n).map(|y| self.meet(x, y)).collect()).collect(),
            neg: self.neg.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Scans every axiom over the whole carrier; empty result means the
    /// tables are a de Morgan algebra. Distributivity is a full triple
    /// scan, acceptable at desk scale.
    fn axiom_violations(&self) -> Vec<AxiomViolation> {
        let n = self.size;
        let mut out = Vec::new();
        let mut seen = [false; 16];
        let record = |out: &mut Vec<AxiomViolation>, seen: &mut [bool; 16], axiom: Axiom, witness: Vec<usize>| {
            let slot = axiom as usize;
            if !seen[slot] {
                seen[slot] = true;
                out.push(AxiomViolation { axiom, witness });
            }
        };
        for x in 0..n {
            for y in 0..n {
                if self.join(x, y) != self.join(y, x) {
                    record(&mut out, &mut seen, Axiom::JoinCommutative, vec![x, y]);
                }
                if self.meet(x, y) != self.meet(y, x) {
                    record(&mut out, &mut seen, Axiom::MeetCommutative, vec![x, y]);
                }
                if self.join(x, self.meet(x, y)) != x {
                    record(&mut out, &mut seen, Axiom::JoinAbsorption, vec![x, y]);
                }
                if self.meet(x, self.join(x, y)) != x {
                    record(&mut out, &mut seen, Axiom::MeetAbsorption, vec![x, y]);
                }
                if self.neg(self.meet(x, y)) != self.join(self.neg(x), self.neg(y)) {
                    record(&mut out, &mut seen, Axiom::DeMorganMeet, vec![x, y]);
                }
                if self.neg(self.join(x, y)) != self.meet(self.neg(x), self.neg(y)) {
                    record(&mut out, &mut seen, Axiom::DeMorganJoin, vec![x, y]);
                }
                if self.leq(x, y) && !self.leq(self.neg(y), self.neg(x)) {
                    record(&mut out, &mut seen, Axiom::NegationAntitone, vec![x, y]);
                }
                for z in 0..n {
                    if self.join(self.join(x, y), z) != self.join(x, self.join(y, z)) {
                        record(&mut out, &mut seen, Axiom::JoinAssociative, vec![x, y, z]);
                    }
                    if self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z)) {
                        record(&mut out, &mut seen, Axiom::MeetAssociative, vec![x, y, z]);
                    }
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        record(&mut out, &mut seen, Axiom::MeetDistributive, vec![x, y, z]);
                    }
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), self.join(x, z)) {
                        record(&mut out, &mut seen, Axiom::JoinDistributive, vec![x, y, z]);
                    }
                }
            }
            if self.join(self.bottom, x) != x {
                record(&mut out, &mut seen, Axiom::BottomIdentity, vec![x]);
            }
            if self.meet(self.top, x) != x {
                record(&mut out, &mut seen, Axiom::TopIdentity, vec![x]);
            }
            if self.neg(self.neg(x)) != x {
                record(&mut out, &mut seen, Axiom::Involution, vec![x]);
            }
        }
        if self.neg(self.top) != self.bottom {
            record(&mut out, &mut seen, Axiom::TopNegation, vec![self.top]);
        }
        if self.neg(self.bottom) != self.top {
            record(&mut out, &mut seen, Axiom::BottomNegation, vec![self.bottom]);
        }
        out.sort_by_key(|v| v.axiom);
        out
    }
}

/// A closed subset of a parent algebra with its induced algebra.
///
/// `subset` is sorted; the inclusion map sends induced index `i` to
/// parent index `subset[i]` and is an injective homomorphism by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraEmbedding {
    parent: DeMorganAlgebra,
    subset: Vec<usize>,
    induced: DeMorganAlgebra,
}

impl SubalgebraEmbedding {
    /// Builds the embedding for a subset that must contain the bounds
    /// and be closed under join, meet and negation.
    pub fn new(parent: &DeMorganAlgebra, subset: &[usize]) -> Result<Self, AlgebraError> {
        let mut sorted: Vec<usize> = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let position = |p: usize| sorted.binary_search(&p).ok();
        for (bound, name) in [(parent.bottom(), "bottom"), (parent.top(), "top")] {
            if position(bound).is_none() {
                return Err(AlgebraError::NotASubuniverse { op: name, args: vec![], missing: bound });
            }
        }
        let k = sorted.len();
        let mut join = vec![0usize; k * k];
        let mut meet = vec![0usize; k * k];
        let mut neg = vec![0usize; k];
        for i in 0..k {
            for j in 0..k {
                let jv = parent.join(sorted[i], sorted[j]);
                let mv = parent.meet(sorted[i], sorted[j]);
                join[i * k + j] = position(jv).ok_or(AlgebraError::NotASubuniverse {
                    op: "join",
                    args: vec![sorted[i], sorted[j]],
                    missing: jv,
                })?;
                meet[i * k + j] = position(mv).ok_or(AlgebraError::NotASubuniverse {
                    op: "meet",
                    args: vec![sorted[i], sorted[j]],
                    missing: mv,
                })?;
            }
            let nv = parent.neg(sorted[i]);
            neg[i] = position(nv).ok_or(AlgebraError::NotASubuniverse {
                op: "neg",
                args: vec![sorted[i]],
                missing: nv,
            })?;
        }
        let labels = parent
            .labels()
            .map(|l| sorted.iter().map(|&p| l[p].clone()).collect::<Vec<_>>());
        let induced = DeMorganAlgebra {
            size: k,
            join,
            meet,
            neg,
            bottom: position(parent.bottom()).unwrap(),
            top: position(parent.top()).unwrap(),
            labels,
        };
        Ok(SubalgebraEmbedding { parent: parent.clone(), subset: sorted, induced })
    }

    pub fn parent(&self) -> &DeMorganAlgebra {
        &self.parent
    }

    /// Sorted parent indices; this is also the inclusion map.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn induced(&self) -> &DeMorganAlgebra {
        &self.induced
    }

    pub fn size(&self) -> usize {
        self.subset.len()
    }

    /// Parent index of induced element `i`.
    pub fn parent_index(&self, i: usize) -> usize {
        self.subset[i]
    }

    /// Induced index of parent element `p`, when `p` is in the subset.
    pub fn induced_index(&self, p: usize) -> Option<usize> {
        self.subset.binary_search(&p).ok()
    }
}

/// The Boolean skeleton `B(M) = {x | x ∨ x° = 1}` as a subalgebra.
pub fn skeleton(m: &DeMorganAlgebra) -> SubalgebraEmbedding {
    let members: Vec<usize> = (0..m.size())
        .filter(|&x| m.join(x, m.neg(x)) == m.top())
        .collect();
    SubalgebraEmbedding::new(m, &members)
        .expect("skeleton of a validated algebra is always a subuniverse")
}

/// Identity classes of a validated algebra. `de_morgan` always holds;
/// the tags nest: boolean ⊆ kleene ⊆ de_morgan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub boolean: bool,
    pub kleene: bool,
}

impl Classification {
    pub fn tags(&self) -> Vec<&'static str> {
        let mut tags = Vec::new();
        if self.boolean {
            tags.push("boolean");
        }
        if self.kleene {
            tags.push("kleene");
        }
        tags.push("de_morgan");
        tags
    }
}

/// Exhaustive check of the Boolean identity `x ∨ x° = 1` and the Kleene
/// identity `(x ∧ x°) ∨ y ∨ y° = y ∨ y°`.
pub fn classify(m: &DeMorganAlgebra) -> Classification {
    let n = m.size();
    let boolean = (0..n).all(|x| m.join(x, m.neg(x)) == m.top());
    let kleene = (0..n).all(|x| {
        let xm = m.meet(x, m.neg(x));
        (0..n).all(|y| {
            let yy = m.join(y, m.neg(y));
            m.join(xm, yy) == yy
        })
    });
    Classification { boolean, kleene }
}

/// Componentwise product with row-major pair encoding:
/// `(i, j) ↦ i · |B| + j`. The encoding is fixed so serialized output is
/// bit-stable.
pub fn product(
    a: &DeMorganAlgebra,
    b: &DeMorganAlgebra,
    limits: &Limits,
) -> Result<DeMorganAlgebra, AlgebraError> {
    let n = a.size().checked_mul(b.size()).filter(|&n| n <= limits.max_algebra_size).ok_or(
        AlgebraError::SizeOverflow {
            requested: a.size().saturating_mul(b.size()),
            limit: limits.max_algebra_size,
        },
    )?;
    let bs = b.size();
    let enc = |i: usize, j: usize| i * bs + j;
    let mut join = vec![0usize; n * n];
    let mut meet = vec![0usize; n * n];
    let mut neg = vec![0usize; n];
    for i in 0..a.size() {
        for j in 0..bs {
            let x = enc(i, j);
            neg[x] = enc(a.neg(i), b.neg(j));
            for k in 0..a.size() {
                for l in 0..bs {
                    let y = enc(k, l);
                    join[x * n + y] = enc(a.join(i, k), b.join(j, l));
                    meet[x * n + y] = enc(a.meet(i, k), b.meet(j, l));
                }
            }
        }
    }
    let labels = match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => Some(
            (0..a.size())
                .flat_map(|i| (0..bs).map(move |j| format!("({},{})", la[i], lb[j])))
                .collect(),
        ),
        _ => None,
    };
    Ok(DeMorganAlgebra {
        size: n,
        join,
        meet,
        neg,
        bottom: enc(a.bottom(), b.bottom()),
        top: enc(a.top(), b.top()),
        labels,
    })
}

/// Least subuniverse containing `seeds` and the bounds; fixed-point
/// closure under join, meet and negation.
pub fn subalgebra_generated(m: &DeMorganAlgebra, seeds: &[usize]) -> SubalgebraEmbedding {
    let n = m.size();
    let mut member = vec![false; n];
    member[m.bottom()] = true;
    member[m.top()] = true;
    for &s in seeds {
        member[s] = true;
    }
    loop {
        let mut grew = false;
        let current: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
        for &x in &current {
            if !member[m.neg(x)] {
                member[m.neg(x)] = true;
                grew = true;
            }
            for &y in &current {
                for v in [m.join(x, y), m.meet(x, y)] {
                    if !member[v] {
                        member[v] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let subset: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
    SubalgebraEmbedding::new(m, &subset).expect("closure is a subuniverse by construction")
}

fn chain_algebra(labels: &[&str], neg: Vec<usize>) -> DeMorganAlgebra {
    let n = labels.len();
    let raw = RawAlgebra {
        size: n,
        bottom: 0,
        top: n - 1,
        join: (0..n).map(|x| (0..n).map(|y| x.max(y)).collect()).collect(),
        meet: (0..n).map(|x| (0..n).map(|y| x.min(y)).collect()).collect(),
        neg,
        labels: Some(labels.iter().map(|s| s.to_string()).collect()),
    };
    validate_algebra(&raw).expect("named chain algebra is valid")
}

/// The two-element Boolean algebra `{0, 1}`.
pub fn b2() -> DeMorganAlgebra {
    chain_algebra(&["0", "1"], vec![1, 0])
}

/// The three-element Kleene algebra `{0, a, 1}` with `a° = a`.
pub fn k3() -> DeMorganAlgebra {
    chain_algebra(&["0", "a", "1"], vec![2, 1, 0])
}

/// The four-element chain `0 < p < q < 1` with fixed-point-free
/// negation `p° = q`.
pub fn c4() -> DeMorganAlgebra {
    chain_algebra(&["0", "p", "q", "1"], vec![3, 2, 1, 0])
}

/// The four-element subdirectly irreducible de Morgan algebra: diamond
/// lattice `0 < a, b < 1` with `a° = a`, `b° = b`, `1° = 0`.
///
/// Element indices are `0 = 0`, `1 = a`, `2 = b`, `3 = 1` throughout the
/// crate; the duality module reuses the same indices for alter-ego
/// values.
pub fn m1() -> DeMorganAlgebra {
    let raw = RawAlgebra {
        size: 4,
        bottom: 0,
        top: 3,
        join: vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 3, 3],
            vec![2, 3, 2, 3],
            vec![3, 3, 3, 3],
        ],
        meet: vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 2, 2],
            vec![0, 1, 2, 3],
        ],
        neg: vec![3, 1, 2, 0],
        labels: Some(vec!["0".to_string(), "a".to_string(), "b".to_string(), "1".to_string()]),
    };
    validate_algebra(&raw).expect("M1 is valid")
}

/// The one-element algebra (empty product); accepted as valid.
pub fn trivial() -> DeMorganAlgebra {
    let raw = RawAlgebra {
        size: 1,
        bottom: 0,
        top: 0,
        join: vec![vec![0]],
        meet: vec![vec![0]],
        neg: vec![0],
        labels: Some(vec!["1".to_string()]),
    };
    validate_algebra(&raw).expect("trivial algebra is valid")
}
