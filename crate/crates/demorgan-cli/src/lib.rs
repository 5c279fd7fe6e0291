//! Command dispatch for the `demorgan` binary.
//!
//! Every command reads JSON (a file path or `-` for standard input),
//! writes one JSON document to standard output, and exits with:
//! 0 = success / property holds, 1 = property fails (witness in the
//! output), 2 = input error, 3 = size limit exceeded. Identical inputs
//! produce byte-identical output.

pub mod formats;

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use demorgan_core::algebra::{classify, skeleton, validate_algebra, AlgebraError, DeMorganAlgebra};
use demorgan_core::congruence::{
    all_congruences, brute_force_congruences, is_perfect_extension, Congruence, CongruenceError,
};
use demorgan_core::duality::{
    algebra_of, condition3_holds, congruence_witnesses_from_violation, decompose, dual_space,
    evaluation_matrix, validate_dual_space, DecomposeOutcome, DualSpace, DualityError,
};
use demorgan_core::generator::{corpus, enumerate_dual_spaces, CorpusSpec, GeneratorError};
use demorgan_core::Limits;

use formats::*;

const EXIT_TRUE: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;

const AFTER_HELP: &str = "Exit codes:\n  \
    0  success, or the checked property holds\n  \
    1  the checked property fails; a witness is part of the output\n  \
    2  input error (unreadable, unparseable, or invalid input)\n  \
    3  a size limit was exceeded\n\n\
    All commands write a single JSON document to standard output.\n\
    FILE arguments accept '-' for standard input.";

#[derive(Parser)]
#[command(
    name = "demorgan",
    version,
    about = "Finite de Morgan algebras: skeletons, congruence lattices, dual spaces, \
             and perfect-extension certificates",
    after_help = AFTER_HELP
)]
struct Cli {
    /// Largest algebra carrier accepted or constructed
    #[arg(long = "max-size", default_value_t = 64, global = true)]
    max_size: usize,

    /// Largest carrier for the brute-force partition oracle
    #[arg(long = "bell-cap", default_value_t = 10, global = true)]
    bell_cap: usize,

    /// Hard cap on dual-space point counts
    #[arg(long = "points-cap", default_value_t = 7, global = true)]
    points_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the de Morgan axioms of an algebra document
    Validate { input: String },
    /// Compute the Boolean skeleton as an embedded subalgebra
    Skeleton { input: String },
    /// Compute the congruence lattice
    Congruences {
        input: String,
        /// Also run the brute-force partition oracle and fail on any
        /// disagreement
        #[arg(long)]
        oracle: bool,
    },
    /// Compute the natural dual space (prime filters)
    Dual { input: String },
    /// Compute the algebra of morphisms of a dual space
    Primal { input: String },
    /// Decide whether the algebra is a perfect extension of its skeleton
    CheckPerfect { input: String },
    /// Decide condition (3) on a dual space: x ≼ y forces x = y or x = f(y)
    CheckCond3 { input: String },
    /// Decompose into a direct product of {0,1}, {0,a,1} and M1 factors
    Decompose { input: String },
    /// Report identity classes: boolean, kleene, de_morgan
    Classify { input: String },
    /// Emit the deduplicated corpus manifest
    Generate {
        /// Enumerate dual spaces with up to this many points
        #[arg(long = "max-points", default_value_t = 5)]
        max_points: usize,
        /// Seed for the random instances
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeded random instances to append
        #[arg(long = "random", default_value_t = 0)]
        random: usize,
        /// Skip the named algebras and their products
        #[arg(long = "no-named")]
        no_named: bool,
    },
    /// Check the three-way theorem equivalence over all dual spaces
    /// with up to the given number of points
    VerifyTheorem {
        #[arg(long = "max-points", default_value_t = 4)]
        max_points: usize,
        /// Worker threads (default: all cores); never changes output
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// Rendered JSON body plus exit code.
type Outcome = (String, u8);

fn failure(kind: &str, detail: String, problems: Option<Vec<String>>, code: u8) -> Outcome {
    let doc = ErrorResponse {
        error: ErrorBody { kind: kind.to_string(), detail, problems },
    };
    (render(&doc), code)
}

fn parse_failure(e: serde_json::Error) -> Outcome {
    failure("parse", format!("invalid JSON: {e}"), None, EXIT_INPUT)
}

fn input_failure(detail: String, problems: Option<Vec<String>>) -> Outcome {
    failure("input", detail, problems, EXIT_INPUT)
}

fn limit_failure(what: &str, size: usize, limit: usize) -> Outcome {
    failure("size_limit", format!("{what}: {size} exceeds limit {limit}"), None, EXIT_LIMIT)
}

fn internal_failure(detail: String) -> Outcome {
    failure("internal", detail, None, EXIT_INPUT)
}

fn algebra_error_outcome(e: AlgebraError) -> Outcome {
    match e {
        AlgebraError::Malformed(ms) => input_failure(
            String::from("algebra document is malformed"),
            Some(ms.iter().map(|m| m.to_string()).collect()),
        ),
        AlgebraError::Axioms(vs) => input_failure(
            String::from("input is not a de Morgan algebra"),
            Some(vs.iter().map(|v| format!("{} at {:?}", v.axiom, v.witness)).collect()),
        ),
        AlgebraError::SizeOverflow { requested, limit } => {
            limit_failure("algebra size", requested, limit)
        }
        other => internal_failure(other.to_string()),
    }
}

fn duality_error_outcome(e: DualityError) -> Outcome {
    match e {
        DualityError::Malformed(ms) => input_failure(
            String::from("dual-space document is malformed"),
            Some(ms.iter().map(|m| m.to_string()).collect()),
        ),
        DualityError::Axioms(vs) => input_failure(
            String::from("input is not a dual space"),
            Some(vs.iter().map(|v| format!("{} at {:?}", v.axiom, v.witness)).collect()),
        ),
        DualityError::MalformedInput { detail } => input_failure(detail, None),
        DualityError::SizeLimit { what, size, limit } => limit_failure(what, size, limit),
        other => internal_failure(other.to_string()),
    }
}

fn congruence_error_outcome(e: CongruenceError) -> Outcome {
    match e {
        CongruenceError::SizeLimit { what, size, limit } => limit_failure(what, size, limit),
        CongruenceError::InvalidPartition(d) => input_failure(d.to_string(), None),
        other => internal_failure(other.to_string()),
    }
}

fn generator_error_outcome(e: GeneratorError) -> Outcome {
    match e {
        GeneratorError::SizeLimit { what, size, limit } => limit_failure(what, size, limit),
        GeneratorError::EmptyPointCount => input_failure(e.to_string(), None),
        GeneratorError::Internal(detail) => internal_failure(detail),
    }
}

fn read_input(path: &str) -> Result<String, Outcome> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| input_failure(format!("cannot read standard input: {e}"), None))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| input_failure(format!("cannot read {path}: {e}"), None))
    }
}

fn load_algebra_doc(path: &str, limits: &Limits) -> Result<AlgebraDoc, Outcome> {
    let text = read_input(path)?;
    let doc: AlgebraDoc = serde_json::from_str(&text).map_err(parse_failure)?;
    if doc.size > limits.max_algebra_size {
        return Err(limit_failure("algebra size", doc.size, limits.max_algebra_size));
    }
    Ok(doc)
}

fn load_algebra(path: &str, limits: &Limits) -> Result<DeMorganAlgebra, Outcome> {
    let doc = load_algebra_doc(path, limits)?;
    validate_algebra(&doc.into_raw()).map_err(algebra_error_outcome)
}

fn load_dual_space(path: &str, limits: &Limits) -> Result<DualSpace, Outcome> {
    let text = read_input(path)?;
    let doc: DualSpaceDoc = serde_json::from_str(&text).map_err(parse_failure)?;
    if doc.size > limits.max_dual_points {
        return Err(limit_failure("dual-space points", doc.size, limits.max_dual_points));
    }
    let raw = doc.into_raw().map_err(|detail| input_failure(detail, None))?;
    validate_dual_space(&raw).map_err(duality_error_outcome)
}

fn cmd_validate(input: &str, limits: &Limits) -> Result<Outcome, Outcome> {
    let doc = load_algebra_doc(input, limits)?;
    match validate_algebra(&doc.into_raw()) {
        Ok(m) => {
            let body = ValidateResponse {
                valid: true,
                algebra: Some(AlgebraDoc::from_algebra(&m)),
                axiom_violations: None,
            };
            Ok((render(&body), EXIT_TRUE))
        }
        Err(AlgebraError::Axioms(vs)) => {
            let body = ValidateResponse {
                valid: false,
                algebra: None,
                axiom_violations: Some(
                    vs.into_iter()
                        .map(|v| AxiomViolationDoc {
                            axiom: v.axiom.as_str().to_string(),
                            witness: v.witness,
                        })
                        .collect(),
                ),
            };
            Ok((render(&body), EXIT_FALSE))
        }
        Err(e) => Err(algebra_error_outcome(e)),
    }
}

fn cmd_skeleton(input: &str, limits: &Limits) -> Result<Outcome, Outcome> {
    let m = load_algebra(input, limits)?;
    let sk = skeleton(&m);
    let body = SkeletonResponse {
        subset: sk.subset().to_vec(),
        algebra: AlgebraDoc::from_algebra(sk.induced()),
    };
    Ok((render(&body), EXIT_TRUE))
}

fn cmd_congruences(input: &str, oracle: bool, limits: &Limits) -> Result<Outcome, Outcome> {
    let m = load_algebra(input, limits)?;
    let fast = all_congruences(&m, limits).map_err(congruence_error_outcome)?;
    if oracle {
        let slow = brute_force_congruences(&m, limits).map_err(congruence_error_outcome)?;
        if fast != slow {
            let only = |a: &demorgan_core::congruence::CongruenceSet,
                        b: &demorgan_core::congruence::CongruenceSet| {
                a.iter()
                    .filter(|c| !b.contains(c))
                    .map(CongruenceDoc::from_congruence)
                    .collect::<Vec<_>>()
            };
            let body = OracleDisagreement {
                agree: false,
                only_principal_join: only(&fast, &slow),
                only_brute_force: only(&slow, &fast),
            };
            return Ok((render(&body), EXIT_FALSE));
        }
    }
    let docs: Vec<CongruenceDoc> = fast.iter().map(CongruenceDoc::from_congruence).collect();
    Ok((render(&docs), EXIT_TRUE))
}

fn cmd_dual(input: &str, limits: &Limits) -> Result<Outcome, Outcome> {
    let m = load_algebra(input, limits)?;
    let dual = dual_space(&m).map_err(duality_error_outcome)?;
    Ok((render(&DualSpaceDoc::from_space(&dual.space)), EXIT_TRUE))
}

fn cmd_primal(input: &str, limits: &Limits) -> Result<Outcome, Outcome> {
    let x = load_dual_space(input, limits)?;
    let ma = algebra_of(&x, limits).map_err(duality_error_outcome)?;
    if ma.algebra.size() > limits.max_algebra_size {
        return Err(limit_failure("algebra size", ma.algebra.size(), limits.max_algebra_size));
    }
    Ok((render(&AlgebraDoc::from_algebra(&ma.algebra)), EXIT_TRUE))
}

fn extension_report_doc(
    report: &demorgan_core::congruence::ExtensionReport,
) -> ExtensionReportDoc {
    ExtensionReportDoc {
        skeleton_subset: report.skeleton.subset().to_vec(),
        con_m: report.con_m.iter().map(CongruenceDoc::from_congruence).collect(),
        con_b: report.con_b.iter().map(CongruenceDoc::from_congruence).collect(),
        fibers: report
            .fibers
            .iter()
            .map(|f| FiberDoc {
                base: CongruenceDoc::from_congruence(&f.base),
                extensions: f.extensions.iter().map(CongruenceDoc::from_congruence).collect(),
            })
            .collect(),
    }
}

fn cmd_check_perfect(input: &str, limits: &Limits) -> Result<Outcome, Outcome> {
    let m = load_algebra(input, limits)?;
    let verdict = is_perfect_extension(&m, limits).map_err(congruence_error_outcome)?;
    let body = CheckPerfectResponse {
        perfect: verdict.perfect,
        offending_fibers: verdict.offending_fibers.clone(),
        report: extension_report_doc(&verdict.report),
    };
    let code = if verdict.perfect { EXIT_TRUE } else { EXIT_FALSE };
    Ok((render(&body), code))
}

fn cmd_check_cond3(input: &str, limits: &Limits) -> Result<Outcome, Outcome> {
    let x = load_dual_space(input, limits)?;
    let report = condition3_holds(&x);
    let body = CheckCond3Response { holds: report.holds, witness: report.witness };
    let code = if report.holds { EXIT_TRUE } else { EXIT_FALSE };
    Ok((render(&body), code))
}

/// Pulls a congruence on the morphism algebra back along the
/// evaluation bijection to a congruence on the input algebra.
fn pull_back(
    theta: &Congruence,
    eval_index: &[usize],
    n: usize,
) -> Result<Congruence, Outcome> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &ix) in eval_index.iter().enumerate() {
        groups.entry(theta.representative(ix)).or_default().push(x);
    }
    let blocks: Vec<Vec<usize>> = groups.into_values().collect();
    Congruence::from_blocks(n, &blocks)
        .map_err(|e| internal_failure(format!("certificate pull-back failed: {e}")))
}

fn cmd_decompose(input: &str, limits: &Limits) -> Result<Outcome, Outcome> {
    let m = load_algebra(input, limits)?;
    match decompose(&m, limits).map_err(duality_error_outcome)? {
        DecomposeOutcome::Decomposed(d) => {
            let (b2, k3, m1) = d.counts();
            let body = DecomposeResponse {
                decomposed: true,
                decomposition: Some(DecompositionDoc {
                    y_points: d.y_points().to_vec(),
                    tags: d.tags().iter().map(|t| t.as_str().to_string()).collect(),
                    swapped: d.swapped().to_vec(),
                    counts: FactorCounts { b2, k3, m1 },
                    iso: d.iso().to_vec(),
                }),
                witness: None,
                alpha: None,
                beta: None,
            };
            Ok((render(&body), EXIT_TRUE))
        }
        DecomposeOutcome::Obstructed(o) => {
            let (x, y) = o.witness;
            let cert = congruence_witnesses_from_violation(&o.dual.space, x, y, limits)
                .map_err(duality_error_outcome)?;
            // identify each element with its evaluation morphism so the
            // certificate is phrased in the input algebra's indices
            let v = evaluation_matrix(&m, &o.dual);
            let index_of: BTreeMap<&Vec<u8>, usize> = cert
                .morphism_algebra
                .morphisms
                .iter()
                .enumerate()
                .map(|(i, row)| (row, i))
                .collect();
            let mut eval_index = Vec::with_capacity(m.size());
            for (xi, row) in v.iter().enumerate() {
                match index_of.get(row) {
                    Some(&i) => eval_index.push(i),
                    None => {
                        return Err(internal_failure(format!(
                            "evaluation image of element {xi} is not a morphism"
                        )))
                    }
                }
            }
            let alpha = pull_back(&cert.alpha, &eval_index, m.size())?;
            let beta = pull_back(&cert.beta, &eval_index, m.size())?;
            let body = DecomposeResponse {
                decomposed: false,
                decomposition: None,
                witness: Some((x, y)),
                alpha: Some(CongruenceDoc::from_congruence(&alpha)),
                beta: Some(CongruenceDoc::from_congruence(&beta)),
            };
            Ok((render(&body), EXIT_FALSE))
        }
    }
}

fn cmd_classify(input: &str, limits: &Limits) -> Result<Outcome, Outcome> {
    let m = load_algebra(input, limits)?;
    let tags = classify(&m).tags().iter().map(|t| t.to_string()).collect();
    Ok((render(&ClassifyResponse { tags }), EXIT_TRUE))
}

fn cmd_generate(
    max_points: usize,
    seed: u64,
    random: usize,
    no_named: bool,
    limits: &Limits,
) -> Result<Outcome, Outcome> {
    let spec = CorpusSpec {
        max_dual_points: max_points,
        max_algebra_size: limits.max_algebra_size,
        seed,
        include_named: !no_named,
        random_count: random,
    };
    let entries = corpus(&spec, limits).map_err(generator_error_outcome)?;
    let docs: Vec<CorpusEntryDoc> = entries.iter().map(CorpusEntryDoc::from_entry).collect();
    Ok((render(&docs), EXIT_TRUE))
}

fn theorem_instance(
    index: usize,
    x: &DualSpace,
    limits: &Limits,
) -> Result<InstanceDoc, Outcome> {
    let ma = algebra_of(x, limits).map_err(duality_error_outcome)?;
    let m = &ma.algebra;
    let (perfect, cep_ok) = match is_perfect_extension(m, limits) {
        Ok(report) => (Some(report.perfect), true),
        Err(CongruenceError::CepViolated { .. }) => (None, false),
        Err(e) => return Err(congruence_error_outcome(e)),
    };
    let condition3 = condition3_holds(x).holds;
    let decomposes = matches!(
        decompose(m, limits).map_err(duality_error_outcome)?,
        DecomposeOutcome::Decomposed(_)
    );
    let agree = cep_ok && perfect == Some(condition3) && condition3 == decomposes;
    Ok(InstanceDoc {
        index,
        points: x.size(),
        algebra_size: m.size(),
        perfect,
        condition3,
        decomposes,
        agree,
        cep_ok,
    })
}

fn cmd_verify_theorem(
    max_points: usize,
    jobs: Option<usize>,
    limits: &Limits,
) -> Result<Outcome, Outcome> {
    // every algebra of an n-point dual has at most 2^n elements; raise
    // the carrier limit so the run is self-contained
    let work = Limits {
        max_algebra_size: limits.max_algebra_size.max(1usize << max_points),
        ..*limits
    };
    let spaces = enumerate_dual_spaces(max_points, &work).map_err(generator_error_outcome)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| internal_failure(format!("cannot build worker pool: {e}")))?;
    let instances: Result<Vec<InstanceDoc>, Outcome> = pool.install(|| {
        spaces
            .par_iter()
            .enumerate()
            .map(|(i, x)| theorem_instance(i, x, &work))
            .collect()
    });
    let instances = instances?;
    let perfect = instances.iter().filter(|i| i.perfect == Some(true)).count();
    let imperfect = instances.iter().filter(|i| i.perfect == Some(false)).count();
    let disagreements = instances.iter().filter(|i| !i.agree).count();
    let cep_violations = instances.iter().filter(|i| !i.cep_ok).count();
    let all_agree = disagreements == 0 && cep_violations == 0;
    let body = VerifyTheoremResponse {
        instances,
        summary: VerifySummary {
            instances: perfect + imperfect + cep_violations,
            perfect,
            imperfect,
            disagreements,
            cep_violations,
            all_agree,
        },
    };
    let code = if all_agree { EXIT_TRUE } else { EXIT_FALSE };
    Ok((render(&body), code))
}

fn dispatch(cli: Cli) -> Outcome {
    let limits = Limits {
        max_algebra_size: cli.max_size,
        max_dual_points: cli.points_cap,
        bell_cap: cli.bell_cap,
    };
    let result = match &cli.command {
        Command::Validate { input } => cmd_validate(input, &limits),
        Command::Skeleton { input } => cmd_skeleton(input, &limits),
        Command::Congruences { input, oracle } => cmd_congruences(input, *oracle, &limits),
        Command::Dual { input } => cmd_dual(input, &limits),
        Command::Primal { input } => cmd_primal(input, &limits),
        Command::CheckPerfect { input } => cmd_check_perfect(input, &limits),
        Command::CheckCond3 { input } => cmd_check_cond3(input, &limits),
        Command::Decompose { input } => cmd_decompose(input, &limits),
        Command::Classify { input } => cmd_classify(input, &limits),
        Command::Generate { max_points, seed, random, no_named } => {
            cmd_generate(*max_points, *seed, *random, *no_named, &limits)
        }
        Command::VerifyTheorem { max_points, jobs } => {
            cmd_verify_theorem(*max_points, *jobs, &limits)
        }
    };
    match result {
        Ok(outcome) => outcome,
        Err(outcome) => outcome,
    }
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not errors; usage problems exit 2
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (body, code) = dispatch(cli);
    print!("{body}");
    ExitCode::from(code)
}
