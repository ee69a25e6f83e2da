//! Command-line surface: serialized documents, run reports, and the
//! executors behind the `orthoplex` binary.
//!
//! Every command prints one JSON report to stdout. Reports are
//! deterministic byte-for-byte given identical arguments, except for the
//! `wall_clock_ms` field, which [`RunReport::canonical_body`] omits so
//! callers can compare runs.
//!
//! Exit codes: 0 success (and `true` verdicts), 1 a certificate came back
//! `false`, 2 usage or input errors, 3 parameters outside the supported
//! range (e.g. container radii for `k > 2 * dim`).

use std::f64::consts::SQRT_2;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certify::{
    certify_cross_polytope, certify_packing, certify_simplex, find_close_pair, Certificate,
};
use crate::constructions::{
    cross_polytope_vertices, optimal_packing, packing_radius, simplex_vertices, PackingSpec,
};
use crate::error::{Error, Result};
use crate::geometry::{Ball, PointSet, Tolerance, Vector};
use crate::optimizer::{maximin_optimize, sample_unit_ball, OptimizerConfig};

/// Stored form of a point configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSetDocument {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl PointSetDocument {
    pub fn new(points: &PointSet) -> Self {
        Self {
            dim: points.dim(),
            points: points.to_rows(),
            label: None,
            seed: None,
            generator: None,
        }
    }

    pub fn to_point_set(&self) -> Result<PointSet> {
        if self.points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for row in &self.points {
            if row.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    left: self.dim,
                    right: row.len(),
                });
            }
        }
        PointSet::from_rows(self.points.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// Stored form of a container-and-centers packing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingDocument {
    pub dim: usize,
    pub container_center: Vec<f64>,
    pub container_radius: f64,
    pub unit_ball_centers: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl PackingDocument {
    pub fn new(packing: &PackingSpec) -> Self {
        Self {
            dim: packing.container().dim(),
            container_center: packing.container().center().coords().to_vec(),
            container_radius: packing.container().radius(),
            unit_ball_centers: packing.unit_ball_centers().to_rows(),
            label: None,
            generator: None,
        }
    }

    pub fn to_packing_spec(&self) -> Result<PackingSpec> {
        if self.container_center.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: self.container_center.len(),
            });
        }
        for row in &self.unit_ball_centers {
            if row.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    left: self.dim,
                    right: row.len(),
                });
            }
        }
        let container = Ball::new(
            Vector::new(self.container_center.clone())?,
            self.container_radius,
        )?;
        let centers = PointSet::from_rows(self.unit_ball_centers.clone())?;
        PackingSpec::new(container, centers)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// One line of a `verify` run: a named check, what was observed, the bound
/// it was held to, and whether it passed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyDetail {
    pub check: String,
    pub observed: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Construct {
        shape: String,
        dim: usize,
        k: usize,
        radius: f64,
        point_count: usize,
        min_pairwise_distance: f64,
        max_pairwise_distance: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        document: Option<PointSetDocument>,
        #[serde(skip_serializing_if = "Option::is_none")]
        written_to: Option<String>,
    },
    Radius {
        k: usize,
        dim: usize,
        radius: f64,
        /// Which closed form applies: "simplex" for k <= dim + 1,
        /// "cross-polytope" for dim + 2 <= k <= 2 dim.
        regime: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        packing: Option<PackingDocument>,
        #[serde(skip_serializing_if = "Option::is_none")]
        packing_written_to: Option<String>,
    },
    Optimize {
        k: usize,
        dim: usize,
        surface_only: bool,
        restarts: usize,
        achieved_min_distance: f64,
        per_restart_values: Vec<f64>,
        iterations_used: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        certificate: Option<Certificate>,
        #[serde(skip_serializing_if = "Option::is_none")]
        document: Option<PointSetDocument>,
        #[serde(skip_serializing_if = "Option::is_none")]
        written_to: Option<String>,
    },
    Certify {
        shape: String,
        input: String,
        eps_cert: f64,
        certificate: Certificate,
        #[serde(skip_serializing_if = "Option::is_none")]
        pair: Option<[usize; 2]>,
        #[serde(skip_serializing_if = "Option::is_none")]
        distance: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        circumradius: Option<f64>,
    },
    Verify {
        theorem: u8,
        dims: Vec<usize>,
        trials: usize,
        checks_passed: usize,
        checks_failed: usize,
        details: Vec<VerifyDetail>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub body: ReportBody,
    pub wall_clock_ms: f64,
}

#[derive(Serialize)]
struct ReportCore<'a> {
    command: &'a str,
    version: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    body: &'a ReportBody,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// The report without its wall-clock field: byte-identical across
    /// repeated runs with the same arguments.
    pub fn canonical_body(&self) -> String {
        serde_json::to_string_pretty(&ReportCore {
            command: &self.command,
            version: &self.version,
            seed: self.seed,
            body: &self.body,
        })
        .expect("reports always serialize")
    }
}

#[derive(Debug)]
pub struct CommandOutcome {
    pub report: RunReport,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructShape {
    CrossPolytope,
    Simplex,
}

impl fmt::Display for ConstructShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructShape::CrossPolytope => "cross-polytope",
            ConstructShape::Simplex => "simplex",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertifyShape {
    CrossPolytope,
    Simplex,
    Packing,
    ClosePair,
}

impl fmt::Display for CertifyShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertifyShape::CrossPolytope => "cross-polytope",
            CertifyShape::Simplex => "simplex",
            CertifyShape::Packing => "packing",
            CertifyShape::ClosePair => "close-pair",
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "orthoplex",
    version,
    about = "Maximally dispersed point sets in the unit ball, their certificates, \
             and minimum containers for unit-ball packings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Emit the vertex set of a reference shape as a point-set document.
    Construct {
        #[arg(long, value_enum)]
        shape: ConstructShape,
        #[arg(long)]
        dim: usize,
        /// Vertex count; required for simplex, implied (2 * dim) for
        /// cross-polytope.
        #[arg(long)]
        k: Option<usize>,
        /// Circumradius of the construction.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Write the document here instead of inlining it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the coordinates as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Minimum container radius for k unit balls in dimension dim.
    Radius {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        dim: usize,
        /// Write the radius-attaining packing to this path.
        #[arg(long)]
        emit_packing: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Search for k points in the unit ball maximizing the least pairwise
    /// distance.
    Optimize {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        dim: usize,
        /// Keep points on the unit sphere instead of the full ball.
        #[arg(long)]
        surface: bool,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Certification tolerance for the attached certificate.
        #[arg(long, default_value_t = 1e-5)]
        tolerance: f64,
        /// Write the best configuration here instead of inlining it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write per-restart values as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check a stored document against a shape and report a certificate.
    Certify {
        #[arg(long, value_enum)]
        shape: CertifyShape,
        /// Path to the point-set (or packing) document.
        #[arg(long = "in")]
        input: PathBuf,
        /// Certification tolerance.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Write the residuals as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Rerun the numerical checks behind the three headline facts:
    /// 1 = the dispersion optimum for 2*dim points, 2 = the sqrt(2) close
    /// pair among dim+2 points, 3 = the container radius table.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        /// Restrict to a single dimension (defaults to the standard sweep
        /// for the chosen theorem).
        #[arg(long)]
        dim: Option<usize>,
        /// Random trials per dimension (theorem 2).
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the per-check results as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Exit code for an error bubbled out of [`execute`].
pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Unsupported(_) => 3,
        _ => 2,
    }
}

pub fn execute(command: Command) -> Result<CommandOutcome> {
    let start = Instant::now();
    let (echo, seed, body, exit_code) = match command {
        Command::Construct {
            shape,
            dim,
            k,
            radius,
            out,
            csv,
        } => cmd_construct(shape, dim, k, radius, out, csv)?,
        Command::Radius {
            k,
            dim,
            emit_packing,
            csv,
        } => cmd_radius(k, dim, emit_packing, csv)?,
        Command::Optimize {
            k,
            dim,
            surface,
            restarts,
            seed,
            tolerance,
            out,
            csv,
        } => cmd_optimize(k, dim, surface, restarts, seed, tolerance, out, csv)?,
        Command::Certify {
            shape,
            input,
            tolerance,
            csv,
        } => cmd_certify(shape, input, tolerance, csv)?,
        Command::Verify {
            theorem,
            dim,
            trials,
            seed,
            csv,
        } => cmd_verify(theorem, dim, trials, seed, csv)?,
    };
    Ok(CommandOutcome {
        report: RunReport {
            command: echo,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            body,
            wall_clock_ms: start.elapsed().as_secs_f64() * 1e3,
        },
        exit_code,
    })
}

type HandlerOutput = (String, Option<u64>, ReportBody, i32);

fn cmd_construct(
    shape: ConstructShape,
    dim: usize,
    k: Option<usize>,
    radius: f64,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
) -> Result<HandlerOutput> {
    let (points, k_used) = match shape {
        ConstructShape::CrossPolytope => {
            if let Some(k) = k {
                if k != 2 * dim {
                    return Err(Error::InvalidParameter(format!(
                        "a cross-polytope in dimension {dim} has {} vertices, got --k {k}",
                        2 * dim
                    )));
                }
            }
            (cross_polytope_vertices(dim, radius)?, 2 * dim)
        }
        ConstructShape::Simplex => {
            let k = k.ok_or_else(|| {
                Error::InvalidParameter("--k is required for --shape simplex".into())
            })?;
            (simplex_vertices(k, dim, radius)?, k)
        }
    };

    let echo = format!("construct --shape {shape} --dim {dim} --k {k_used} --radius {radius}");
    let (min_d, _) = points.min_pairwise_distance()?;
    let (max_d, _) = points.max_pairwise_distance()?;

    let mut document = PointSetDocument::new(&points);
    document.generator = Some(echo.clone());

    if let Some(path) = &csv {
        write_file(path, &point_set_csv(&points))?;
    }
    let written_to = match &out {
        Some(path) => {
            write_file(path, &format!("{}\n", document.to_json()))?;
            Some(path.display().to_string())
        }
        None => None,
    };

    let body = ReportBody::Construct {
        shape: shape.to_string(),
        dim,
        k: k_used,
        radius,
        point_count: points.len(),
        min_pairwise_distance: min_d,
        max_pairwise_distance: max_d,
        document: written_to.is_none().then_some(document),
        written_to,
    };
    Ok((echo, None, body, 0))
}

fn cmd_radius(
    k: usize,
    dim: usize,
    emit_packing: Option<PathBuf>,
    csv: Option<PathBuf>,
) -> Result<HandlerOutput> {
    let radius = packing_radius(k, dim)?;
    let regime = if k <= dim + 1 {
        "simplex"
    } else {
        "cross-polytope"
    };
    let echo = format!("radius --k {k} --dim {dim}");

    let packing = optimal_packing(k, dim)?;
    let mut document = PackingDocument::new(&packing);
    document.generator = Some(echo.clone());

    if let Some(path) = &csv {
        write_file(path, &format!("k,dim,radius\n{k},{dim},{radius}\n"))?;
    }
    let packing_written_to = match &emit_packing {
        Some(path) => {
            write_file(path, &format!("{}\n", document.to_json()))?;
            Some(path.display().to_string())
        }
        None => None,
    };

    let body = ReportBody::Radius {
        k,
        dim,
        radius,
        regime: regime.to_string(),
        packing: packing_written_to.is_none().then_some(document),
        packing_written_to,
    };
    Ok((echo, None, body, 0))
}

#[allow(clippy::too_many_arguments)]
fn cmd_optimize(
    k: usize,
    dim: usize,
    surface: bool,
    restarts: usize,
    seed: u64,
    tolerance: f64,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
) -> Result<HandlerOutput> {
    let cfg = OptimizerConfig::new(k, dim)
        .with_restarts(restarts)
        .with_seed(seed)
        .with_surface_only(surface);
    cfg.validate()?;
    let tol = Tolerance::with_eps_cert(tolerance)?;
    let echo = format!(
        "optimize --k {k} --dim {dim}{} --restarts {restarts} --seed {seed} --tolerance {tolerance}",
        if surface { " --surface" } else { "" }
    );

    let result = maximin_optimize(&cfg)?;

    // Attach the certificate matching the shape the optimum is known to
    // take: a cross-polytope at k = 2 dim, a regular simplex up to dim + 1
    // points on the sphere.
    let certificate = if k == 2 * dim {
        Some(certify_cross_polytope(&result.best, tol)?)
    } else if k <= dim + 1 && surface {
        Some(certify_simplex(&result.best, tol)?)
    } else {
        None
    };
    let exit_code = match &certificate {
        Some(cert) if !cert.verdict => 1,
        _ => 0,
    };

    let mut document = PointSetDocument::new(&result.best);
    document.seed = Some(seed);
    document.generator = Some(echo.clone());

    if let Some(path) = &csv {
        let mut text = String::from("restart,min_distance\n");
        for (i, v) in result.per_restart_values.iter().enumerate() {
            text.push_str(&format!("{i},{v}\n"));
        }
        write_file(path, &text)?;
    }
    let written_to = match &out {
        Some(path) => {
            write_file(path, &format!("{}\n", document.to_json()))?;
            Some(path.display().to_string())
        }
        None => None,
    };

    let body = ReportBody::Optimize {
        k,
        dim,
        surface_only: surface,
        restarts,
        achieved_min_distance: result.achieved_min_distance,
        per_restart_values: result.per_restart_values,
        iterations_used: result.iterations_used,
        certificate,
        document: written_to.is_none().then_some(document),
        written_to,
    };
    Ok((echo, Some(seed), body, exit_code))
}

fn cmd_certify(
    shape: CertifyShape,
    input: PathBuf,
    tolerance: f64,
    csv: Option<PathBuf>,
) -> Result<HandlerOutput> {
    let tol = Tolerance::with_eps_cert(tolerance)?;
    let echo = format!(
        "certify --shape {shape} --in {} --tolerance {tolerance}",
        input.display()
    );
    let text = read_file(&input)?;

    let (certificate, pair, distance, circumradius) = match shape {
        CertifyShape::Packing => {
            let doc = PackingDocument::from_json(&text)?;
            let packing = doc.to_packing_spec()?;
            (certify_packing(&packing, tol)?, None, None, None)
        }
        CertifyShape::ClosePair => {
            let doc = PointSetDocument::from_json(&text)?;
            let points = doc.to_point_set()?;
            let outcome = find_close_pair(&points, tol)?;
            (
                outcome.certificate,
                Some([outcome.pair.0, outcome.pair.1]),
                Some(outcome.distance),
                Some(outcome.circumradius),
            )
        }
        CertifyShape::CrossPolytope => {
            let doc = PointSetDocument::from_json(&text)?;
            let points = doc.to_point_set()?;
            (certify_cross_polytope(&points, tol)?, None, None, None)
        }
        CertifyShape::Simplex => {
            let doc = PointSetDocument::from_json(&text)?;
            let points = doc.to_point_set()?;
            (certify_simplex(&points, tol)?, None, None, None)
        }
    };

    if let Some(path) = &csv {
        let mut text = String::from("residual,value\n");
        for (name, value) in &certificate.residuals {
            text.push_str(&format!("{name},{value}\n"));
        }
        write_file(path, &text)?;
    }

    let exit_code = if certificate.verdict { 0 } else { 1 };
    let body = ReportBody::Certify {
        shape: shape.to_string(),
        input: input.display().to_string(),
        eps_cert: tol.eps_cert(),
        certificate,
        pair,
        distance,
        circumradius,
    };
    Ok((echo, None, body, exit_code))
}

fn cmd_verify(
    theorem: u8,
    dim: Option<usize>,
    trials: usize,
    seed: u64,
    csv: Option<PathBuf>,
) -> Result<HandlerOutput> {
    let default_dims: Vec<usize> = match theorem {
        1 => (2..=4).collect(),
        2 => (2..=6).collect(),
        _ => (2..=10).collect(),
    };
    let dims = match dim {
        Some(d) => {
            if d < 2 {
                return Err(Error::InvalidParameter(
                    "verification needs --dim >= 2".into(),
                ));
            }
            vec![d]
        }
        None => default_dims,
    };
    let echo = format!(
        "verify --theorem {theorem} --dims {} --trials {trials} --seed {seed}",
        dims.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );

    let mut details = Vec::new();
    match theorem {
        1 => verify_dispersion_optimum(&dims, seed, &mut details)?,
        2 => verify_close_pair_bound(&dims, trials, seed, &mut details)?,
        _ => verify_radius_table(&dims, &mut details)?,
    }

    let checks_passed = details.iter().filter(|d| d.passed).count();
    let checks_failed = details.len() - checks_passed;

    if let Some(path) = &csv {
        let mut text = String::from("check,observed,bound,passed\n");
        for d in &details {
            text.push_str(&format!(
                "{},{},{},{}\n",
                d.check, d.observed, d.bound, d.passed
            ));
        }
        write_file(path, &text)?;
    }

    let body = ReportBody::Verify {
        theorem,
        dims,
        trials,
        checks_passed,
        checks_failed,
        details,
    };
    let exit_code = if checks_failed == 0 { 0 } else { 1 };
    Ok((echo, Some(seed), body, exit_code))
}

/// Theorem-1 style check: 2*dim maximally dispersed points reach sqrt(2)
/// and certify as a cross-polytope.
fn verify_dispersion_optimum(
    dims: &[usize],
    seed: u64,
    details: &mut Vec<VerifyDetail>,
) -> Result<()> {
    for &dim in dims {
        let cfg = OptimizerConfig::new(2 * dim, dim).with_seed(seed);
        let result = maximin_optimize(&cfg)?;
        details.push(VerifyDetail {
            check: format!("dim={dim} dispersion optimum reaches sqrt(2)"),
            observed: result.achieved_min_distance,
            bound: SQRT_2 - 1e-6,
            passed: result.achieved_min_distance >= SQRT_2 - 1e-6,
        });
        let cert = certify_cross_polytope(&result.best, Tolerance::with_eps_cert(1e-5)?)?;
        let worst = cert.residuals.values().copied().fold(0.0f64, f64::max);
        details.push(VerifyDetail {
            check: format!("dim={dim} optimum certifies as cross-polytope"),
            observed: worst,
            bound: 1e-5,
            passed: cert.verdict,
        });
    }
    Ok(())
}

/// Theorem-2 style check: any dim + 2 points in the unit ball contain a
/// pair within sqrt(2) of each other, found constructively.
fn verify_close_pair_bound(
    dims: &[usize],
    trials: usize,
    seed: u64,
    details: &mut Vec<VerifyDetail>,
) -> Result<()> {
    let tol = Tolerance::default();
    for &dim in dims {
        let stream = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(dim as u64 + 1));
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let mut worst_excess = 0.0f64;
        let mut failures = 0usize;
        for _ in 0..trials {
            let points = PointSet::new(
                (0..dim + 2)
                    .map(|_| sample_unit_ball(dim, &mut rng))
                    .collect(),
            )?;
            let outcome = find_close_pair(&points, tol)?;
            let excess = outcome.distance - SQRT_2 * outcome.circumradius;
            worst_excess = worst_excess.max(excess);
            if excess > 1e-12 {
                failures += 1;
            }
        }
        details.push(VerifyDetail {
            check: format!(
                "dim={dim} close pair within sqrt(2)*circumradius over {trials} trials \
                 ({failures} failures)"
            ),
            observed: worst_excess,
            bound: 1e-12,
            passed: failures == 0,
        });

        // The dispersion search agrees: dim + 2 points can never do better
        // than sqrt(2).
        let cfg = OptimizerConfig::new(dim + 2, dim)
            .with_seed(seed)
            .with_restarts(16);
        let result = maximin_optimize(&cfg)?;
        details.push(VerifyDetail {
            check: format!("dim={dim} optimizer stays below sqrt(2) for k=dim+2"),
            observed: result.achieved_min_distance,
            bound: SQRT_2 + 1e-9,
            passed: result.achieved_min_distance <= SQRT_2 + 1e-9,
        });
    }
    Ok(())
}

/// Theorem-3 style check: the closed-form radii are attained by packings
/// that certify with essentially zero residuals.
fn verify_radius_table(dims: &[usize], details: &mut Vec<VerifyDetail>) -> Result<()> {
    let tight = Tolerance::new(1e-13, 1e-12)?;
    for &dim in dims {
        let mut worst = 0.0f64;
        let mut all_pass = true;
        for k in 2..=(2 * dim) {
            let expected = if k <= dim + 1 {
                1.0 + (2.0 - 2.0 / k as f64).sqrt()
            } else {
                1.0 + SQRT_2
            };
            let radius = packing_radius(k, dim)?;
            if radius != expected {
                all_pass = false;
            }
            let packing = optimal_packing(k, dim)?;
            let cert = certify_packing(&packing, tight)?;
            let residual = cert.residuals.values().copied().fold(0.0f64, f64::max);
            worst = worst.max(residual);
            if !cert.verdict {
                all_pass = false;
            }
        }
        details.push(VerifyDetail {
            check: format!("dim={dim} container radii match closed form and certify"),
            observed: worst,
            bound: 1e-12,
            passed: all_pass && worst <= 1e-12,
        });
    }
    Ok(())
}

fn point_set_csv(points: &PointSet) -> String {
    let mut text = (0..points.dim())
        .map(|i| format!("x{i}"))
        .collect::<Vec<_>>()
        .join(",");
    text.push('\n');
    for p in points {
        let row = p
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        text.push_str(&row);
        text.push('\n');
    }
    text
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
