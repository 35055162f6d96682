use std::path::{Path, PathBuf};

use knr_core::geometry::sweep_boundary;
use knr_core::oracle::{containment_check, sample_range, ContainmentReport};
use knr_core::{certify, classify_range, eig_dense, tol, CMatrix, Complex64, Metric, RangeKind, Sign};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{parse_input, Input};
use crate::output::{boundary_csv, cloud_csv, to_sorted_json, Plot};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Certify,
    Classify,
    Boundary,
    Sample,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Certify => "certify",
            Command::Classify => "classify",
            Command::Boundary => "boundary",
            Command::Sample => "sample",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub command: Command,
    pub input: PathBuf,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub grid: usize,
    /// Samples per sign class.
    pub samples: usize,
    pub seed: u64,
    /// Containment tolerance for the sampling cross-check.
    pub tol: f64,
}

impl Job {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Job {
            command,
            input: input.into(),
            out: None,
            svg: None,
            grid: tol::DEFAULT_GRID,
            samples: tol::DEFAULT_SAMPLES,
            seed: tol::DEFAULT_SEED,
            tol: 1e-6,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid < tol::MIN_GRID {
            return Err(CliError::Job(format!("--grid must be at least {}, got {}", tol::MIN_GRID, self.grid)));
        }
        if self.samples == 0 {
            return Err(CliError::Job("--samples must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Job(format!("--tol must be positive, got {}", self.tol)));
        }
        if !self.input.is_file() {
            return Err(CliError::Job(format!("input file {} does not exist", self.input.display())));
        }
        Ok(())
    }
}

/// Result of a successful job. `stdout` holds the primary output when no `--out`
/// path was given; `messages` go to stderr.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub exit_code: u8,
    pub stdout: Option<String>,
    pub messages: Vec<String>,
}

pub fn run(job: &Job) -> Result<Outcome, CliError> {
    job.validate()?;
    match job.command {
        Command::Certify => run_certify(job),
        Command::Classify => run_classify(job),
        Command::Boundary => run_boundary(job),
        Command::Sample => run_sample(job),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(job: &Job, text: String, outcome: &mut Outcome) -> Result<(), CliError> {
    match &job.out {
        Some(p) => write_file(p, &text),
        None => {
            outcome.stdout = Some(text);
            Ok(())
        }
    }
}

fn sorted_eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>, CliError> {
    let mut ev: Vec<Complex64> = eig_dense(a, tol::DEFAULT_TOL)?.into_iter().map(|p| p.value).collect();
    ev.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(ev)
}

fn sign_classes(j: &Metric) -> Vec<Sign> {
    let mut out = Vec::new();
    if j.r() > 0 {
        out.push(Sign::Plus);
    }
    if j.r() < j.n() {
        out.push(Sign::Minus);
    }
    out
}

fn class_seed(seed: u64, sign: Sign) -> u64 {
    match sign {
        Sign::Plus => seed,
        Sign::Minus => seed.wrapping_add(1),
    }
}

fn input_json(input: &Input) -> Value {
    match input {
        Input::Tridiagonal(spec) => json!({ "kind": "tridiagonal", "spec": spec }),
        Input::Dense { a, j } => json!({ "kind": "dense", "A": a, "J": j }),
    }
}

#[derive(Serialize)]
struct OracleSummary {
    sign: Sign,
    seed: u64,
    clipped: usize,
    rejected: usize,
    max_constraint_error: f64,
    report: ContainmentReport,
}

/// Certificate for a tridiagonal spec of order 3 to 6, the downstream
/// classification and a sampling cross-check of the classified region.
/// The verdict is the certificate verdict, and false whenever the range is the
/// whole plane.
pub fn run_certify(job: &Job) -> Result<Outcome, CliError> {
    let input = parse_input(&job.input)?;
    let Input::Tridiagonal(spec) = &input else {
        return Err(CliError::Job("certify needs a tridiagonal input".into()));
    };
    let cert = certify(spec)?;
    let (a, j) = input.matrix_metric();
    let classification = classify_range(&a, &j, job.grid);
    let whole_plane = matches!(classification.kind, RangeKind::WholePlane);
    let verdict = cert.verdict() && !whole_plane;

    let oracle = if whole_plane {
        json!({ "skipped": "containment in the whole plane is vacuous" })
    } else {
        let mut reports = Vec::new();
        for sign in sign_classes(&j) {
            let seed = class_seed(job.seed, sign);
            let cloud = sample_range(&a, &j, job.samples, sign, seed)?;
            reports.push(OracleSummary {
                sign,
                seed,
                clipped: cloud.clipped,
                rejected: cloud.rejected,
                max_constraint_error: cloud.max_constraint_error,
                report: containment_check(&cloud, &classification, job.tol)?,
            });
        }
        let agrees = reports.iter().all(|r| r.report.verdict);
        json!({ "samples": job.samples, "tol": job.tol, "clouds": reports, "consistent": agrees })
    };

    let mut outcome = Outcome {
        exit_code: if verdict { 0 } else { 1 },
        ..Outcome::default()
    };
    if oracle.get("consistent") == Some(&Value::Bool(false)) {
        outcome.messages.push("warning: sampled points fall outside the classified region".into());
    }
    let report = json!({
        "command": "certify",
        "input": input_json(&input),
        "certificate": cert,
        "certificate_verdict": cert.verdict(),
        "classification": classification,
        "eigenvalues": sorted_eigenvalues(&a)?,
        "oracle": oracle,
        "verdict": verdict,
    });
    emit(job, to_sorted_json(&report)?, &mut outcome)?;
    if let Some(svg) = &job.svg {
        let curve = sweep_boundary(&a, &j, job.grid)?;
        write_file(svg, &boundary_plot(&job.input, &curve, sorted_eigenvalues(&a)?).to_svg())?;
    }
    Ok(outcome)
}

pub fn run_classify(job: &Job) -> Result<Outcome, CliError> {
    let input = parse_input(&job.input)?;
    let (a, j) = input.matrix_metric();
    let classification = classify_range(&a, &j, job.grid);
    let mut outcome = Outcome::default();
    let report = json!({
        "command": "classify",
        "input": input_json(&input),
        "classification": classification,
        "eigenvalues": sorted_eigenvalues(&a)?,
    });
    emit(job, to_sorted_json(&report)?, &mut outcome)?;
    if let Some(svg) = &job.svg {
        let curve = sweep_boundary(&a, &j, job.grid)?;
        write_file(svg, &boundary_plot(&job.input, &curve, sorted_eigenvalues(&a)?).to_svg())?;
    }
    Ok(outcome)
}

fn boundary_plot(path: &Path, curve: &knr_core::geometry::BoundaryCurve, eigenvalues: Vec<Complex64>) -> Plot {
    Plot {
        title: format!("boundary points of {}", path.display()),
        points: curve.points.iter().map(|p| (p.z, p.sign)).collect(),
        eigenvalues,
    }
}

/// Boundary points over a uniform angle grid as CSV `theta,re,im,sign`.
pub fn run_boundary(job: &Job) -> Result<Outcome, CliError> {
    let input = parse_input(&job.input)?;
    let (a, j) = input.matrix_metric();
    let curve = sweep_boundary(&a, &j, job.grid)?;
    let mut outcome = Outcome::default();
    if curve.points.is_empty() {
        outcome.messages.push(format!(
            "no valid angle on the {}-point grid; no support lines exist",
            job.grid
        ));
    }
    emit(
        job,
        boundary_csv(curve.points.iter().map(|p| (p.theta, p.z, p.sign))),
        &mut outcome,
    )?;
    if let Some(svg) = &job.svg {
        write_file(svg, &boundary_plot(&job.input, &curve, sorted_eigenvalues(&a)?).to_svg())?;
    }
    Ok(outcome)
}

/// Sampled clouds of both sign classes as CSV `re,im,sign`; `--samples` is per class.
pub fn run_sample(job: &Job) -> Result<Outcome, CliError> {
    let input = parse_input(&job.input)?;
    let (a, j) = input.matrix_metric();
    let mut points = Vec::new();
    let mut outcome = Outcome::default();
    for sign in sign_classes(&j) {
        let cloud = sample_range(&a, &j, job.samples, sign, class_seed(job.seed, sign))?;
        if cloud.clipped > 0 {
            outcome
                .messages
                .push(format!("{} samples of class {sign} clipped", cloud.clipped));
        }
        points.extend(cloud.points.into_iter().map(|p| (p.z, p.sign)));
    }
    emit(job, cloud_csv(points.iter().copied()), &mut outcome)?;
    if let Some(svg) = &job.svg {
        let plot = Plot {
            title: format!("sampled range of {}", job.input.display()),
            points,
            eigenvalues: sorted_eigenvalues(&a)?,
        };
        write_file(svg, &plot.to_svg())?;
    }
    Ok(outcome)
}
