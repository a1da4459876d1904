//! The `intgeo` command line: formula tables, self-checks and Monte Carlo
//! runs written as JSON, CSV or LaTeX.
//!
//! Exit codes: 0 on success, 1 when a check fails or an estimate is more
//! than four standard errors off, 2 on usage errors.

pub mod args;
pub mod config;
pub mod emit;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use intgeo_core::euclid::{SoAlgebra, SoBasis};
use intgeo_core::hermitian::{FirstOrderFormula, HermitianAlgebra, Presentation, UnBasis};
use intgeo_core::space_forms::RealSpaceForm;
use intgeo_core::table::{MatrixDocument, Normalization};
use intgeo_core::verify::{self, CheckReport, SuiteBounds};
use intgeo_core::{AlgebraError, Rational};
use intgeo_mc::suite::{default_cases, DEFAULT_SEED, Z_FAIL, Z_PASS};
use intgeo_mc::{ConvexBody, McError, SampleConfig};
use thiserror::Error;

use args::*;
use emit::{emit, Artifact};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "INTGEO_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Clap(clap::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => 0,
            _ => 2,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Documents without `--out` go to `stdout`.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match try_run(args, stdout) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            match &e {
                CliError::Clap(c) => {
                    let _ = c.print();
                }
                other => eprintln!("error: {other}"),
            }
            e.exit_code()
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock())
}

fn try_run<I, T>(args: I, stdout: &mut dyn Write) -> Result<bool, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let first = Cli::try_parse_from(&args).map_err(CliError::Clap)?;
    let cli = match &first.config {
        Some(path) => {
            let entries = config::load_config(path)?;
            let merged = config::merge(&args, &entries)?;
            Cli::try_parse_from(&merged).map_err(CliError::Clap)?
        }
        None => first,
    };
    init_logging(cli.quiet);
    tracing::info!(configuration = ?cli, "resolved configuration");
    let (artifact, name) = execute(&cli)?;
    if let Artifact::Checks(reports) = &artifact {
        for r in reports {
            if r.passed {
                tracing::info!("{}", r.line());
            } else {
                tracing::warn!("{}", r.line());
            }
        }
    }
    let passed = artifact.passed();
    write_output(&cli, &artifact, &name, stdout)?;
    Ok(passed)
}

fn init_logging(quiet: bool) {
    let level = if quiet { tracing::Level::WARN } else { tracing::Level::INFO };
    let _ = tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_max_level(level)
        .with_target(false)
        .with_ansi(std::io::IsTerminal::is_terminal(&std::io::stderr()))
        .try_init();
}

fn resolve_format(cli: &Cli) -> Format {
    if let Some(f) = cli.format {
        return f;
    }
    match cli.out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("csv") => Format::Csv,
        Some("tex") => Format::Latex,
        _ => Format::Json,
    }
}

fn write_output(cli: &Cli, artifact: &Artifact, name: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let format = resolve_format(cli);
    let bytes = emit(artifact, format)?;
    let target: Option<PathBuf> = match &cli.out {
        Some(p) => Some(p.clone()),
        None => std::env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(format!("{name}.{}", format.extension()))),
    };
    match target {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
            }
            std::fs::write(&path, &bytes).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
            tracing::info!(path = %path.display(), "wrote output");
        }
        None => stdout.write_all(&bytes).map_err(|e| CliError::Output(e.to_string()))?,
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(Artifact, String), CliError> {
    match &cli.command {
        Command::So { op } => so(op),
        Command::Un { op } => un(op),
        Command::Spaceform { op } => spaceform(op),
        Command::Mc { op } => mc(cli, op),
        Command::Verify(v) => Ok((Artifact::Checks(verify_all(cli, v)?), "verify".into())),
    }
}

fn need_dim(dim: u32) -> Result<(), CliError> {
    if dim == 0 {
        return Err(CliError::Usage("--dim must be at least 1".into()));
    }
    Ok(())
}

fn so_basis(b: SoBasisArg) -> SoBasis {
    match b {
        SoBasisArg::T => SoBasis::T,
        SoBasisArg::Mu => SoBasis::Mu,
        SoBasisArg::Psi => SoBasis::Psi,
        SoBasisArg::NijenhuisPrime => SoBasis::NijenhuisPrime,
        SoBasisArg::Nijenhuis => SoBasis::Nijenhuis,
    }
}

fn so(op: &SoOp) -> Result<(Artifact, String), CliError> {
    match *op {
        SoOp::Kinematic { dim, basis, normalization } => {
            need_dim(dim)?;
            let norm = match normalization {
                NormalizationArg::Standard => Normalization::Standard,
                NormalizationArg::Unit => Normalization::Unit,
            };
            let doc = SoAlgebra::new(dim)?.kinematic_document(so_basis(basis), norm)?;
            Ok((Artifact::Table(doc), format!("so-kinematic-{dim}")))
        }
        SoOp::Additive { dim, basis } => {
            need_dim(dim)?;
            let doc = SoAlgebra::new(dim)?.additive_document(so_basis(basis))?;
            Ok((Artifact::Table(doc), format!("so-additive-{dim}")))
        }
    }
}

fn un(op: &UnOp) -> Result<(Artifact, String), CliError> {
    match *op {
        UnOp::Kinematic { dim, basis } => {
            need_dim(dim)?;
            let b = match basis {
                UnBasisArg::Monomial => UnBasis::Monomial,
                UnBasisArg::Tasaki => UnBasis::Tasaki,
                UnBasisArg::Hermitian => UnBasis::Hermitian,
            };
            let doc = HermitianAlgebra::new(dim, Presentation::Relations)?.kinematic_document(b)?;
            Ok((Artifact::Table(doc), format!("un-kinematic-{dim}")))
        }
        UnOp::TasakiMatrices { dim } => {
            need_dim(dim)?;
            let h = HermitianAlgebra::new(dim, Presentation::Relations)?;
            let docs = h
                .tasaki_matrices()?
                .into_iter()
                .map(|t| {
                    let labels = |hat: bool| -> Vec<String> {
                        (0..t.matrix.rows())
                            .map(|q| {
                                let k = if hat { 2 * dim - t.k } else { t.k };
                                let name = if hat { "\\hat\\tau" } else { "\\tau" };
                                format!("{name}_{{{k},{q}}}")
                            })
                            .collect()
                    };
                    MatrixDocument {
                        basis: "tasaki".into(),
                        col_labels: labels(true),
                        dimension: dim,
                        group: "U".into(),
                        normalization: Normalization::Standard.tag().into(),
                        row_labels: labels(false),
                        rows: t.matrix.to_rows(),
                        title: format!("T^{dim}_{}", t.k),
                    }
                })
                .collect();
            Ok((Artifact::Matrices(docs), format!("un-tasaki-matrices-{dim}")))
        }
        UnOp::Firstorder { dim, deg_a, deg_b, additive } => {
            need_dim(dim)?;
            let h = HermitianAlgebra::new(dim, Presentation::Relations)?;
            let mut docs = Vec::new();
            if additive {
                let f = h.additive_first_order(deg_a, deg_b)?;
                docs.push(klain_document(&f, format!("a(mu_{}) ({deg_a},{deg_b})", deg_a + deg_b), Normalization::Probability));
            } else {
                let f = h.first_order_formula(deg_a, deg_b)?;
                let d = deg_a + deg_b - 2 * dim;
                docs.push(klain_document(&f, format!("k(mu_{d}) ({deg_a},{deg_b})"), Normalization::Standard));
                let mut cp = klain_document(
                    &f.scaled(&h.projective_factor()),
                    format!("k(mu_{d}) ({deg_a},{deg_b}) times n!/pi^n"),
                    Normalization::Standard,
                );
                cp.group = "CP".into();
                docs.push(cp);
            }
            Ok((Artifact::Matrices(docs), format!("un-firstorder-{dim}-{deg_a}-{deg_b}")))
        }
        UnOp::Verify { dim } => {
            need_dim(dim)?;
            let reports = verify::exact_suite("un", SuiteBounds { max_dim: Some(dim) }).unwrap_or_default();
            Ok((Artifact::Checks(reports), format!("un-verify-{dim}")))
        }
    }
}

fn klain_document(f: &FirstOrderFormula, title: String, normalization: Normalization) -> MatrixDocument {
    let labels = |n: usize, complement: bool| -> Vec<String> {
        (0..n)
            .map(|i| if complement { format!("\\sigma_{{{i}}}^\\perp") } else { format!("\\sigma_{{{i}}}") })
            .collect()
    };
    MatrixDocument {
        basis: "klain".into(),
        col_labels: labels(f.coeffs.cols(), f.right_complement),
        dimension: f.n,
        group: "U".into(),
        normalization: normalization.tag().into(),
        row_labels: labels(f.coeffs.rows(), f.left_complement),
        rows: f.coeffs.to_rows(),
        title,
    }
}

fn spaceform(op: &SpaceformOp) -> Result<(Artifact, String), CliError> {
    match op {
        SpaceformOp::Real { dim, lambda_eval } => {
            need_dim(*dim)?;
            let lambda: Option<Rational> = match lambda_eval {
                Some(s) => Some(
                    s.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("--lambda-eval expects a rational, got `{s}`")))?,
                ),
                None => None,
            };
            let doc = RealSpaceForm::new(*dim)?.kinematic_document(lambda.as_ref())?;
            Ok((Artifact::Table(doc), format!("spaceform-real-{dim}")))
        }
        SpaceformOp::Complex { dim, check } => {
            need_dim(*dim)?;
            let report = match check {
                ComplexCheck::Bfs => verify::bfs_presentation(*dim),
                ComplexCheck::Conjecture => verify::fbar_relations(*dim),
                ComplexCheck::Chapoton => verify::chapoton(*dim),
            };
            Ok((Artifact::Checks(vec![report]), format!("spaceform-complex-{dim}")))
        }
    }
}

fn sample_config(cli: &Cli, samples: u64) -> SampleConfig {
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    SampleConfig::new(samples, cli.seed.unwrap_or(DEFAULT_SEED)).with_jobs(jobs)
}

fn load_bodies(common: &McCommon, count: usize) -> Result<Vec<ConvexBody>, CliError> {
    let text = std::fs::read_to_string(&common.bodies)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", common.bodies.display())))?;
    let bodies = intgeo_mc::parse_bodies(&text)?;
    if bodies.len() != count {
        return Err(CliError::Usage(format!("expected {count} bodies, found {}", bodies.len())));
    }
    if let Some(b) = bodies.iter().find(|b| b.dim() != common.dim) {
        return Err(CliError::Usage(format!("--dim {} but a body has dimension {}", common.dim, b.dim())));
    }
    Ok(bodies)
}

fn mc(cli: &Cli, op: &McOp) -> Result<(Artifact, String), CliError> {
    let (estimates, name) = match op {
        McOp::Kinematic(c) => {
            let b = load_bodies(c, 2)?;
            let e = intgeo_mc::estimate_principal_kinematic(&b[0], &b[1], sample_config(cli, c.samples), None)?;
            (vec![e], "mc-kinematic")
        }
        McOp::Crofton { common, k } => {
            let b = load_bodies(common, 1)?;
            (vec![intgeo_mc::estimate_crofton(&b[0], *k, sample_config(cli, common.samples))?], "mc-crofton")
        }
        McOp::Cauchy(c) => {
            let b = load_bodies(c, 1)?;
            (vec![intgeo_mc::cauchy_projection_check(&b[0], sample_config(cli, c.samples))?], "mc-cauchy")
        }
        McOp::Steiner { common, radius } => {
            let b = load_bodies(common, 1)?;
            (vec![intgeo_mc::steiner_mc(&b[0], *radius, sample_config(cli, common.samples))?], "mc-steiner")
        }
        McOp::Additive(c) => {
            let b = load_bodies(c, 2)?;
            (vec![intgeo_mc::estimate_additive(&b[0], &b[1], sample_config(cli, c.samples))?], "mc-additive")
        }
        McOp::Suite { samples } => (mc_cases(cli, *samples, None)?, "mc-suite"),
    };
    Ok((Artifact::Estimates(estimates), name.into()))
}

/// The default cases up to `max_dim`; case `i` keeps seed `seed + i`
/// whatever the filter.
fn mc_cases(cli: &Cli, samples: u64, max_dim: Option<u32>) -> Result<Vec<intgeo_mc::McEstimate>, CliError> {
    let base = sample_config(cli, samples);
    let mut out = Vec::new();
    for (i, (name, case)) in default_cases().into_iter().enumerate() {
        if max_dim.is_some_and(|m| case.dim() > m as usize) {
            continue;
        }
        let cfg = SampleConfig { seed: base.seed.wrapping_add(i as u64), ..base };
        out.push(case.run(cfg)?.named(name));
    }
    Ok(out)
}

fn verify_all(cli: &Cli, v: &VerifyArgs) -> Result<Vec<CheckReport>, CliError> {
    let suites: Vec<SuiteName> = if v.all {
        vec![SuiteName::So, SuiteName::Un, SuiteName::Spaceform, SuiteName::Mc]
    } else if v.suite.is_empty() {
        return Err(CliError::Usage("pass --all or at least one --suite".into()));
    } else {
        v.suite.clone()
    };
    if v.max_dim == Some(0) {
        return Err(CliError::Usage("--max-dim must be at least 1".into()));
    }
    let bounds = SuiteBounds { max_dim: v.max_dim };
    let mut reports = Vec::new();
    for s in suites {
        let name = match s {
            SuiteName::So => "so",
            SuiteName::Un => "un",
            SuiteName::Spaceform => "spaceform",
            SuiteName::Mc => {
                for e in mc_cases(cli, v.samples, v.max_dim)? {
                    reports.push(estimate_report(&e));
                }
                continue;
            }
        };
        reports.extend(verify::exact_suite(name, bounds).unwrap_or_default());
    }
    Ok(reports)
}

fn estimate_report(e: &intgeo_mc::McEstimate) -> CheckReport {
    let z = e.z.unwrap_or(0.0);
    CheckReport {
        suite: "mc".into(),
        name: e.test.clone(),
        passed: z.abs() <= Z_FAIL,
        detail: format!(
            "{} ± {} vs {} (z = {z:.3}, {} 3 standard errors)",
            e.mean,
            e.stderr,
            e.prediction_value.map_or("none".into(), |p| p.to_string()),
            if z.abs() <= Z_PASS { "within" } else { "outside" }
        ),
        millis: 0,
    }
}
