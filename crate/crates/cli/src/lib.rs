//! Problem-file parsing, validation, task dispatch, and report assembly
//! for the `wkf` binary.
//!
//! A problem file is a JSON document:
//!
//! ```json
//! {
//!   "dim": 2,
//!   "frames": { "F": [[1, 0], [0, 1]] },
//!   "operators": { "K": [[1, 0], [0, 0]] },
//!   "task": { "op": "kbounds", "frames": ["F"], "k": "K" }
//! }
//! ```
//!
//! Scalars are either bare reals or `[re, im]` pairs; matrices are
//! row-major lists of rows; operators are square `dim` by `dim`. The
//! `task.frames` entries and the `k`/`t`/`subspace` fields refer to the
//! named maps, and every reference is resolved during parsing. Erased
//! indices in files are 1-based.
//!
//! [`parse_problem`] validates, [`run_task`] executes, [`emit_problem`]
//! round-trips a parsed file back to text.

pub mod report;

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use wkf_core::certify::{
    symmetric_perturbed_cert, erasure_woven_cert, perturbation_residual, perturbed_woven_cert,
    pullback_frame, pushforward_frame, range_equivalence_k, range_equivalence_kstar,
    woven_pullback, woven_pushforward, CertificateReport, Direction, ErasureMode,
};
use wkf_core::frame::{frame_bounds, kframe_bounds, FrameFamily};
use wkf_core::numeric::ComplexMatrix;
use wkf_core::weave::{kwoven_report, woven_report, SweepOptions};
use wkf_core::DEFAULT_BUDGET;

use report::Report;

/// Number of extra start vectors for perturbation residual searches when a
/// file does not say otherwise.
const DEFAULT_PROBES: usize = 8;

/// A complex number as it appears in problem files: a bare real or an
/// `[re, im]` pair. The distinction survives a round trip.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Pair([f64; 2]),
}

impl Scalar {
    fn value(self) -> Complex64 {
        match self {
            Scalar::Real(re) => Complex64::new(re, 0.0),
            Scalar::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

/// The task descriptor exactly as written in the file.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct TaskSpec {
    /// One of `bounds`, `kbounds`, `woven`, `kwoven`, `cert`.
    pub op: String,
    /// Names of the frame families the task acts on.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub frames: Vec<String>,
    /// Weight-operator name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    /// Transport-operator name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    /// Name of an operator whose columns span the restriction subspace.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<String>,
    /// Certificate identifier (`cert` tasks only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result_id: Option<String>,
    /// `forward` or `backward` (certificates with two directions).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    /// 1-based indices to erase (erasure certificates).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erased: Option<Vec<usize>>,
    /// Perturbation parameters: `[a1, a2, a3]` or `[a1, a2]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
    /// Start count for residual searches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<usize>,
    /// Partition budget for sweeps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Seed for sampled sweeps and residual searches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A fully validated problem file. The named maps are kept in their raw
/// textual form so that [`emit_problem`] reproduces the parsed structure
/// exactly.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct ProblemFile {
    /// Ambient dimension.
    pub dim: usize,
    /// Named frame families: lists of `dim`-long vectors.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub frames: BTreeMap<String, Vec<Vec<Scalar>>>,
    /// Named operators: `dim` by `dim` row-major matrices.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub operators: BTreeMap<String, Vec<Vec<Scalar>>>,
    /// What to compute.
    pub task: TaskSpec,
}

impl ProblemFile {
    /// The named family, converted to the computational representation.
    pub fn family(&self, name: &str) -> Result<FrameFamily> {
        let raw = self
            .frames
            .get(name)
            .ok_or_else(|| anyhow!("validation error: frame \"{name}\" is not defined"))?;
        let vectors: Vec<Vec<Complex64>> =
            raw.iter().map(|v| v.iter().map(|s| s.value()).collect()).collect();
        FrameFamily::new(self.dim, vectors)
            .with_context(|| format!("validation error: frame \"{name}\""))
    }

    /// The named operator, converted to the computational representation.
    pub fn operator(&self, name: &str) -> Result<ComplexMatrix> {
        let raw = self
            .operators
            .get(name)
            .ok_or_else(|| anyhow!("validation error: operator \"{name}\" is not defined"))?;
        let entries: Vec<Complex64> =
            raw.iter().flat_map(|row| row.iter().map(|s| s.value())).collect();
        ComplexMatrix::new(self.dim, self.dim, entries)
            .with_context(|| format!("validation error: operator \"{name}\""))
    }
}

/// Parses and validates a problem file: JSON syntax, finite entries,
/// consistent dimensions, and resolvable references.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let problem: ProblemFile = serde_json::from_str(text).context("parse error")?;
    validate(&problem)?;
    Ok(problem)
}

/// Serializes a parsed problem file; [`parse_problem`] on the output yields
/// an identical structure.
pub fn emit_problem(problem: &ProblemFile) -> String {
    let mut text = serde_json::to_string_pretty(problem).expect("problem files serialize");
    text.push('\n');
    text
}

fn check_finite(kind: &str, name: &str, rows: &[Vec<Scalar>]) -> Result<()> {
    for row in rows {
        for s in row {
            let z = s.value();
            if !z.re.is_finite() || !z.im.is_finite() {
                bail!("validation error: {kind} \"{name}\" has a non-finite entry");
            }
        }
    }
    Ok(())
}

fn validate(problem: &ProblemFile) -> Result<()> {
    if problem.dim == 0 {
        bail!("validation error: dim must be at least 1");
    }
    for (name, vectors) in &problem.frames {
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != problem.dim {
                bail!(
                    "validation error: frame \"{name}\" vector {} has length {}, expected {}",
                    i + 1,
                    v.len(),
                    problem.dim
                );
            }
        }
        check_finite("frame", name, vectors)?;
    }
    for (name, rows) in &problem.operators {
        if rows.len() != problem.dim {
            bail!(
                "validation error: operator \"{name}\" has {} rows, expected {}",
                rows.len(),
                problem.dim
            );
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != problem.dim {
                bail!(
                    "validation error: operator \"{name}\" row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    problem.dim
                );
            }
        }
        check_finite("operator", name, rows)?;
    }

    let task = &problem.task;
    match task.op.as_str() {
        "bounds" | "kbounds" | "woven" | "kwoven" | "cert" => {}
        other => bail!("validation error: unknown task op \"{other}\""),
    }
    for name in &task.frames {
        if !problem.frames.contains_key(name) {
            bail!("validation error: task references undefined frame \"{name}\"");
        }
    }
    for (field, reference) in
        [("k", &task.k), ("t", &task.t), ("subspace", &task.subspace)]
    {
        if let Some(name) = reference {
            if !problem.operators.contains_key(name) {
                bail!("validation error: task field \"{field}\" references undefined operator \"{name}\"");
            }
        }
    }
    Ok(())
}

/// Command-line overrides applied on top of the file's task parameters.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    /// Replacement verdict threshold: positivity cutoff for frame verdicts
    /// and relative slack for certificate comparisons.
    pub tol: Option<f64>,
}

fn sweep_options(task: &TaskSpec, overrides: &Overrides) -> SweepOptions {
    SweepOptions {
        budget: overrides.budget.or(task.budget).unwrap_or(DEFAULT_BUDGET),
        seed: overrides.seed.or(task.seed).unwrap_or(0),
    }
}

fn one_family(problem: &ProblemFile) -> Result<FrameFamily> {
    let names = &problem.task.frames;
    if names.len() != 1 {
        bail!(
            "task \"{}\" needs exactly one frame name, got {}",
            problem.task.op,
            names.len()
        );
    }
    problem.family(&names[0])
}

fn family_list(problem: &ProblemFile) -> Result<Vec<FrameFamily>> {
    if problem.task.frames.is_empty() {
        bail!("task \"{}\" needs at least one frame name", problem.task.op);
    }
    problem.task.frames.iter().map(|n| problem.family(n)).collect()
}

fn two_families(problem: &ProblemFile) -> Result<(FrameFamily, FrameFamily)> {
    let names = &problem.task.frames;
    if names.len() != 2 {
        bail!("certificate \"{}\" needs exactly two frame names, got {}", id(problem)?, names.len());
    }
    Ok((problem.family(&names[0])?, problem.family(&names[1])?))
}

fn required_operator(problem: &ProblemFile, field: &str) -> Result<ComplexMatrix> {
    let name = match field {
        "k" => &problem.task.k,
        "t" => &problem.task.t,
        _ => unreachable!("only k and t are required operators"),
    };
    let name = name
        .as_ref()
        .ok_or_else(|| anyhow!("task \"{}\" needs the \"{field}\" operator", problem.task.op))?;
    problem.operator(name)
}

fn optional_subspace(problem: &ProblemFile) -> Result<Option<ComplexMatrix>> {
    problem.task.subspace.as_ref().map(|n| problem.operator(n)).transpose()
}

fn id(problem: &ProblemFile) -> Result<&str> {
    problem
        .task
        .result_id
        .as_deref()
        .ok_or_else(|| anyhow!("cert tasks need a result_id"))
}

fn direction(problem: &ProblemFile) -> Result<Direction> {
    match problem.task.direction.as_deref() {
        Some("forward") => Ok(Direction::Forward),
        Some("backward") => Ok(Direction::Backward),
        Some(other) => bail!("unknown direction \"{other}\" (expected forward or backward)"),
        None => bail!("certificate \"{}\" needs a direction", id(problem)?),
    }
}

/// 1-based indices from the file converted to 0-based.
fn erased_indices(problem: &ProblemFile) -> Result<Vec<usize>> {
    let cert_id = id(problem)?;
    let raw = problem
        .task
        .erased
        .as_ref()
        .ok_or_else(|| anyhow!("certificate \"{cert_id}\" needs erased indices"))?;
    raw.iter()
        .map(|&i| {
            if i == 0 {
                bail!("erased indices are 1-based; 0 is not a valid index")
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn alphas(problem: &ProblemFile, expected: usize) -> Result<Vec<f64>> {
    let cert_id = id(problem)?;
    let raw = problem
        .task
        .alpha
        .as_ref()
        .ok_or_else(|| anyhow!("certificate \"{cert_id}\" needs alpha parameters"))?;
    if raw.len() != expected {
        bail!(
            "certificate \"{cert_id}\" needs exactly {expected} alpha parameters, got {}",
            raw.len()
        );
    }
    Ok(raw.clone())
}

/// Executes the problem's task. `cli_task` is the task named on the command
/// line; it must match the file's declaration.
pub fn run_task(problem: &ProblemFile, cli_task: &str, overrides: &Overrides) -> Result<Report> {
    if problem.task.op != cli_task {
        bail!(
            "task mismatch: command line says \"{cli_task}\" but the file declares \"{}\"",
            problem.task.op
        );
    }
    let opts = sweep_options(&problem.task, overrides);
    match cli_task {
        "bounds" => {
            let family = one_family(problem)?;
            let subspace = optional_subspace(problem)?;
            let bounds = frame_bounds(&family, subspace.as_ref())?;
            let verdict = match overrides.tol {
                Some(tol) => bounds.lower > tol,
                None => bounds.is_frame,
            };
            Ok(Report::bounds(&bounds, verdict))
        }
        "kbounds" => {
            let family = one_family(problem)?;
            let k = required_operator(problem, "k")?;
            let bounds = kframe_bounds(&family, &k)?;
            let verdict = match overrides.tol {
                Some(tol) => bounds.lower > tol,
                None => bounds.is_kframe,
            };
            Ok(Report::kbounds(&bounds, verdict))
        }
        "woven" => {
            let families = family_list(problem)?;
            let subspace = optional_subspace(problem)?;
            let sweep = woven_report(&families, subspace.as_ref(), opts)?;
            let verdict = match overrides.tol {
                Some(tol) => sweep.exhaustive && sweep.universal_lower > tol,
                None => sweep.verdict,
            };
            Ok(Report::weaving("woven", &sweep, verdict))
        }
        "kwoven" => {
            let families = family_list(problem)?;
            let k = required_operator(problem, "k")?;
            let subspace = optional_subspace(problem)?;
            let sweep = kwoven_report(&families, &k, subspace.as_ref(), opts)?;
            let verdict = match overrides.tol {
                Some(tol) => sweep.exhaustive && sweep.universal_lower > tol,
                None => sweep.verdict,
            };
            Ok(Report::weaving("kwoven", &sweep, verdict))
        }
        "cert" => {
            let cert = run_cert(problem, opts)?;
            Ok(Report::certificate(&cert, overrides.tol))
        }
        other => bail!("unknown task \"{other}\""),
    }
}

fn run_cert(problem: &ProblemFile, opts: SweepOptions) -> Result<CertificateReport> {
    let seed = opts.seed;
    let probes = problem.task.probes.unwrap_or(DEFAULT_PROBES);
    match id(problem)? {
        "L2.1" => {
            let family = one_family(problem)?;
            let k = required_operator(problem, "k")?;
            let t = required_operator(problem, "t")?;
            let (_, cert) = pushforward_frame(&family, &k, &t)?;
            Ok(cert)
        }
        "L2.2" => {
            let family = one_family(problem)?;
            let k = required_operator(problem, "k")?;
            let t = required_operator(problem, "t")?;
            Ok(pullback_frame(&family, &t, &k)?)
        }
        "P2.3" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            let t = required_operator(problem, "t")?;
            Ok(woven_pushforward(&f, &g, &k, &t, opts)?)
        }
        "P2.4" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            let t = required_operator(problem, "t")?;
            Ok(woven_pullback(&f, &g, &t, &k, opts)?)
        }
        "P2.5" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            Ok(range_equivalence_kstar(&f, &g, &k, direction(problem)?, opts)?)
        }
        "P2.6" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            Ok(range_equivalence_k(&f, &g, &k, direction(problem)?, opts)?)
        }
        "T2.7" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            let t = required_operator(problem, "t")?;
            let a = alphas(problem, 3)?;
            let params = perturbation_residual(&t, &k, a[0], a[1], a[2], probes, seed)?;
            Ok(perturbed_woven_cert(&f, &g, &t, &k, &params, opts)?)
        }
        "C2.7" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            let t = required_operator(problem, "t")?;
            let a = alphas(problem, 2)?;
            Ok(symmetric_perturbed_cert(&f, &g, &t, &k, a[0], a[1], probes, seed, opts)?)
        }
        "T2.8" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            let t = required_operator(problem, "t")?;
            let j = erased_indices(problem)?;
            Ok(erasure_woven_cert(&f, &g, &j, &k, Some(&t), ErasureMode::Pushforward, opts)?)
        }
        "C2.9" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            let j = erased_indices(problem)?;
            Ok(erasure_woven_cert(&f, &g, &j, &k, None, ErasureMode::Identity, opts)?)
        }
        "T2.10" => {
            let (f, g) = two_families(problem)?;
            let k = required_operator(problem, "k")?;
            let t = required_operator(problem, "t")?;
            let j = erased_indices(problem)?;
            Ok(erasure_woven_cert(&f, &g, &j, &k, Some(&t), ErasureMode::Pullback, opts)?)
        }
        other => bail!("unknown result_id \"{other}\""),
    }
}
