//! JSON documents for every input and output of the CLI.
//!
//! Field order in the serialized output follows struct declaration
//! order, and all collections are emitted in canonical order upstream,
//! so identical inputs produce byte-identical documents. Unknown keys
//! are rejected on input.

use serde::{Deserialize, Serialize};

use demorgan_core::algebra::{DeMorganAlgebra, RawAlgebra};
use demorgan_core::congruence::Congruence;
use demorgan_core::duality::{DualSpace, RawDualSpace};
use demorgan_core::generator::{CorpusEntry, CorpusSource};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub size: usize,
    pub bottom: usize,
    pub top: usize,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraDoc {
    pub fn from_algebra(m: &DeMorganAlgebra) -> Self {
        let raw = m.raw();
        AlgebraDoc {
            size: raw.size,
            bottom: raw.bottom,
            top: raw.top,
            join: raw.join,
            meet: raw.meet,
            neg: raw.neg,
            labels: raw.labels,
        }
    }

    pub fn into_raw(self) -> RawAlgebra {
        RawAlgebra {
            size: self.size,
            bottom: self.bottom,
            top: self.top,
            join: self.join,
            meet: self.meet,
            neg: self.neg,
            labels: self.labels,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualSpaceDoc {
    pub size: usize,
    /// Row-major order matrix with 0/1 entries.
    pub leq: Vec<Vec<u8>>,
    pub f: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl DualSpaceDoc {
    pub fn from_space(x: &DualSpace) -> Self {
        let raw = x.raw();
        DualSpaceDoc {
            size: raw.size,
            leq: raw.leq.iter().map(|row| row.iter().map(|&b| b as u8).collect()).collect(),
            f: raw.f,
            labels: raw.labels,
        }
    }

    /// Fails on entries other than 0 or 1.
    pub fn into_raw(self) -> Result<RawDualSpace, String> {
        let mut leq = Vec::with_capacity(self.leq.len());
        for (i, row) in self.leq.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row.into_iter().enumerate() {
                match v {
                    0 => out.push(false),
                    1 => out.push(true),
                    other => {
                        return Err(format!("leq[{i}][{j}] is {other}; entries must be 0 or 1"))
                    }
                }
            }
            leq.push(out);
        }
        Ok(RawDualSpace { size: self.size, leq, f: self.f, labels: self.labels })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceDoc {
    pub algebra_size: usize,
    /// Blocks sorted by their smallest element; elements ascending.
    pub blocks: Vec<Vec<usize>>,
}

impl CongruenceDoc {
    pub fn from_congruence(c: &Congruence) -> Self {
        CongruenceDoc { algebra_size: c.algebra_size(), blocks: c.blocks() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolationDoc {
    pub axiom: String,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidateResponse {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom_violations: Option<Vec<AxiomViolationDoc>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonResponse {
    /// Parent indices of the skeleton elements, ascending.
    pub subset: Vec<usize>,
    pub algebra: AlgebraDoc,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleDisagreement {
    pub agree: bool,
    pub only_principal_join: Vec<CongruenceDoc>,
    pub only_brute_force: Vec<CongruenceDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberDoc {
    pub base: CongruenceDoc,
    pub extensions: Vec<CongruenceDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReportDoc {
    pub skeleton_subset: Vec<usize>,
    pub con_m: Vec<CongruenceDoc>,
    pub con_b: Vec<CongruenceDoc>,
    pub fibers: Vec<FiberDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckPerfectResponse {
    pub perfect: bool,
    /// Indices into `report.fibers` with extension count != 1.
    pub offending_fibers: Vec<usize>,
    pub report: ExtensionReportDoc,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckCond3Response {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorCounts {
    pub b2: usize,
    pub k3: usize,
    pub m1: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionDoc {
    pub y_points: Vec<usize>,
    pub tags: Vec<String>,
    /// Per factor, whether the a↔b renaming was applied.
    pub swapped: Vec<bool>,
    pub counts: FactorCounts,
    /// `iso[x]` = row-major index of x in the tagged product.
    pub iso: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeResponse {
    pub decomposed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
    /// Congruence certificate on the input algebra: distinct
    /// congruences with equal skeleton restrictions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<CongruenceDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<CongruenceDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyResponse {
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceDoc {
    Named { name: String },
    Enumerated { points: usize, index: usize },
    Random { seed: u64, index: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntryDoc {
    pub id: String,
    pub source: SourceDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_space: Option<DualSpaceDoc>,
    pub algebra: AlgebraDoc,
}

impl CorpusEntryDoc {
    pub fn from_entry(e: &CorpusEntry) -> Self {
        CorpusEntryDoc {
            id: e.id.clone(),
            source: match &e.source {
                CorpusSource::Named { name } => SourceDoc::Named { name: name.clone() },
                CorpusSource::Enumerated { points, index } => {
                    SourceDoc::Enumerated { points: *points, index: *index }
                }
                CorpusSource::Random { seed, index } => {
                    SourceDoc::Random { seed: *seed, index: *index }
                }
            },
            dual_space: e.dual.as_ref().map(DualSpaceDoc::from_space),
            algebra: AlgebraDoc::from_algebra(&e.algebra),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceDoc {
    pub index: usize,
    pub points: usize,
    pub algebra_size: usize,
    /// None when the perfect-extension check could not finish (a
    /// congruence-extension failure, which is an implementation bug).
    pub perfect: Option<bool>,
    pub condition3: bool,
    pub decomposes: bool,
    pub agree: bool,
    pub cep_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub instances: usize,
    pub perfect: usize,
    pub imperfect: usize,
    pub disagreements: usize,
    pub cep_violations: usize,
    pub all_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyTheoremResponse {
    pub instances: Vec<InstanceDoc>,
    pub summary: VerifySummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    /// One of "parse", "input", "size_limit", "internal".
    pub kind: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problems: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorResponse {
    pub error: ErrorBody,
}

/// Serializes any response with the fixed layout used everywhere:
/// two-space pretty printing and a trailing newline.
pub fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}
