//! Command-line front end: compute and verify weighted core-EP style
//! generalized inverses on JSON matrix files, print matrix indices, and
//! reproduce the embedded reference examples.
//!
//! Exit codes: 0 success, 2 parse/shape error, 3 invalid weight,
//! 4 inverse does not exist, 5 verification failure, 1 internal error.

mod io;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wcep_core::classical::drazin;
use wcep_core::classical::InverseKind;
use wcep_core::compute::{compute_inverse, verify_candidate, Certificate};
use wcep_core::core_ep::{core_ep, core_ep_of_core_ep, dual_core_ep};
use wcep_core::reference::{example_one, example_two};
use wcep_core::verify::{check_axioms, Axiom};
use wcep_core::{Backend, Error, Matrix, Tolerance, Weight};

use io::MatrixFile;

#[derive(Debug)]
pub(crate) struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: String) -> Self {
        CliError { code: 2, message }
    }

    fn weight(message: String) -> Self {
        CliError { code: 3, message }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NoExist { .. } | Error::HypothesisFailed(_) => 4,
            Error::NotHermitian | Error::NotInvertible => 3,
            Error::Internal(_) | Error::Singular => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "wcep",
    version,
    about = "Weighted core-EP and related generalized inverses of complex matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a generalized inverse and write it with a certificate.
    Compute(ComputeArgs),
    /// Check a candidate matrix against the defining equations of a kind.
    Verify(VerifyArgs),
    /// Print the index of a square matrix.
    Index(IndexArgs),
    /// Recompute the embedded reference examples against golden values.
    PaperExamples(PaperExamplesArgs),
}

fn parse_kind(s: &str) -> Result<InverseKind, String> {
    s.parse::<InverseKind>().map_err(|e| {
        format!(
            "{e}; valid kinds: {}",
            InverseKind::ALL
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )
    })
}

#[derive(Args)]
struct ComputeArgs {
    /// Inverse family to compute (e.g. core-ep, drazin, moore-penrose).
    #[arg(long, value_parser = parse_kind)]
    kind: InverseKind,
    /// Input matrix file (JSON).
    #[arg(long)]
    matrix: PathBuf,
    /// Weight E (hermitian invertible), required by E-weighted kinds.
    #[arg(long = "weight-e")]
    weight_e: Option<PathBuf>,
    /// Weight F (hermitian invertible), required by F-weighted kinds.
    #[arg(long = "weight-f")]
    weight_f: Option<PathBuf>,
    /// Scalar backend; defaults to the matrix file's scalar type.
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    /// Float residual tolerance override (also via WCEP_TOL).
    #[arg(long)]
    tol: Option<f64>,
    /// Output file; the certificate goes to OUT.cert.json. Stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: InverseKind,
    #[arg(long)]
    matrix: PathBuf,
    /// Candidate inverse to verify.
    #[arg(long)]
    candidate: PathBuf,
    #[arg(long = "weight-e")]
    weight_e: Option<PathBuf>,
    #[arg(long = "weight-f")]
    weight_f: Option<PathBuf>,
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct IndexArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct PaperExamplesArgs {
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Corrupt one golden value to exercise the failure path (test mode).
    #[arg(long, hide = true)]
    corrupt_golden: bool,
}

fn env_tol() -> Option<f64> {
    std::env::var("WCEP_TOL").ok().and_then(|s| s.parse().ok())
}

fn tolerance_for(backend: Backend, flag: Option<f64>) -> Tolerance {
    match backend {
        Backend::Exact => Tolerance::exact(),
        Backend::Float => {
            let base = Tolerance::float_default();
            match flag.or_else(env_tol) {
                Some(t) if t > 0.0 => base.with_residual(t),
                _ => base,
            }
        }
    }
}

/// Backend selection: an explicit flag wins, otherwise the file's scalar
/// tag. Rational data promotes to float with a warning; float data cannot
/// be used on the exact backend.
fn load_matrix(path: &Path, want: Backend) -> Result<Matrix, CliError> {
    let file = MatrixFile::read(path)?;
    let m = file.to_matrix()?;
    match (m.backend(), want) {
        (Backend::Float, Backend::Exact) => Err(CliError::input(format!(
            "{}: float data cannot be used with the exact backend",
            path.display()
        ))),
        (Backend::Exact, Backend::Float) => {
            eprintln!(
                "warning: {} holds rational data; promoting to float",
                path.display()
            );
            Ok(m.to_float())
        }
        _ => Ok(m),
    }
}

fn pick_backend(path: &Path, flag: Option<BackendArg>) -> Result<Backend, CliError> {
    if let Some(b) = flag {
        return Ok(b.into());
    }
    let file = MatrixFile::read(path)?;
    Ok(match file.scalar {
        io::ScalarTag::Rational => Backend::Exact,
        io::ScalarTag::Float => Backend::Float,
    })
}

fn load_weight(path: &Path, want: Backend, tol: &Tolerance) -> Result<Weight, CliError> {
    let m = load_matrix(path, want)?;
    Weight::new(m, tol).map_err(|e| match e {
        Error::NotHermitian | Error::NotInvertible | Error::NotSquare { .. } => {
            CliError::weight(format!("{}: {e}", path.display()))
        }
        other => other.into(),
    })
}

fn certificate_json(
    kind: InverseKind,
    backend: Backend,
    index_used: usize,
    path: &str,
    tol: &Tolerance,
    cert: &Certificate,
) -> serde_json::Value {
    let checks: Vec<serde_json::Value> = cert
        .rows()
        .into_iter()
        .map(|(label, residual, passed, tolerance)| {
            serde_json::json!({
                "equation": label,
                "residual": residual,
                "passed": passed,
                "tolerance": if tolerance.is_nan() {
                    serde_json::Value::Null
                } else {
                    serde_json::json!(tolerance)
                },
            })
        })
        .collect();
    serde_json::json!({
        "kind": kind.as_str(),
        "backend": backend.to_string(),
        "index_used": index_used,
        "construction": path,
        "tolerance": { "rank_rel": tol.rank_rel, "residual_rel": tol.residual_rel },
        "all_passed": cert.passed(),
        "checks": checks,
    })
}

fn cmd_compute(args: ComputeArgs) -> Result<u8, CliError> {
    let backend = pick_backend(&args.matrix, args.backend)?;
    let tol = tolerance_for(backend, args.tol);
    let a = load_matrix(&args.matrix, backend)?;
    let (needs_e, needs_f) = args.kind.needs_weights();
    let e = match (&args.weight_e, needs_e) {
        (Some(p), _) => Some(load_weight(p, backend, &tol)?),
        (None, true) => {
            return Err(CliError::input(format!(
                "kind {} requires --weight-e",
                args.kind
            )))
        }
        (None, false) => None,
    };
    let f = match (&args.weight_f, needs_f) {
        (Some(p), _) => Some(load_weight(p, backend, &tol)?),
        (None, true) => {
            return Err(CliError::input(format!(
                "kind {} requires --weight-f",
                args.kind
            )))
        }
        (None, false) => None,
    };

    let computation = compute_inverse(args.kind, &a, e.as_ref(), f.as_ref(), &tol)?;
    let out_file = MatrixFile::from_matrix(&computation.value);
    let cert = certificate_json(
        args.kind,
        backend,
        computation.index_used,
        &computation.path,
        &tol,
        &computation.certificate,
    );
    match &args.out {
        Some(path) => {
            out_file.write(path)?;
            let cert_path = path.with_extension("cert.json");
            std::fs::write(&cert_path, format!("{:#}\n", cert)).map_err(|e| {
                CliError::input(format!("cannot write {}: {e}", cert_path.display()))
            })?;
        }
        None => {
            print_ignoring_closed_pipe(&out_file.to_canonical_string());
        }
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let backend = pick_backend(&args.matrix, args.backend)?;
    let tol = tolerance_for(backend, args.tol);
    let a = load_matrix(&args.matrix, backend)?;
    let x = load_matrix(&args.candidate, backend)?;
    let e = args
        .weight_e
        .as_ref()
        .map(|p| load_weight(p, backend, &tol))
        .transpose()?;
    let f = args
        .weight_f
        .as_ref()
        .map(|p| load_weight(p, backend, &tol))
        .transpose()?;

    let cert = verify_candidate(args.kind, &a, &x, e.as_ref(), f.as_ref(), &tol)?;
    let report = certificate_json(args.kind, backend, 0, "candidate verification", &tol, &cert);
    print_ignoring_closed_pipe(&format!("{report:#}\n"));
    Ok(if cert.passed() { 0 } else { 5 })
}

fn cmd_index(args: IndexArgs) -> Result<u8, CliError> {
    let backend = pick_backend(&args.matrix, args.backend)?;
    let tol = tolerance_for(backend, args.tol);
    let a = load_matrix(&args.matrix, backend)?;
    let k = a.index(&tol)?;
    println!("{k}");
    Ok(0)
}

struct GoldenCheck {
    name: &'static str,
    ok: bool,
}

fn matrices_match(computed: &Matrix, golden: &Matrix, backend: Backend) -> bool {
    match backend {
        Backend::Exact => computed == golden,
        Backend::Float => {
            let diff = computed
                .try_sub(golden)
                .map(|d| d.frobenius_norm())
                .unwrap_or(f64::INFINITY);
            diff <= 1e-10 * golden.frobenius_norm()
        }
    }
}

fn cmd_paper_examples(args: PaperExamplesArgs) -> Result<u8, CliError> {
    let backend: Backend = args.backend.into();
    let tol = match backend {
        Backend::Exact => Tolerance::exact(),
        Backend::Float => Tolerance::float_default().with_residual(1e-10),
    };
    let cast = |m: &Matrix| match backend {
        Backend::Exact => m.clone(),
        Backend::Float => m.to_float(),
    };
    let cast_w = |w: &Weight| match backend {
        Backend::Exact => w.clone(),
        Backend::Float => w.to_float(),
    };

    let ex1 = example_one();
    let ex2 = example_two();
    let (a1, e1, f1) = (cast(&ex1.a), cast_w(&ex1.e), cast_w(&ex1.f));
    let (a2, e2) = (cast(&ex2.a), cast_w(&ex2.e));

    let mut golden_core_ep_1 = cast(&ex1.core_ep);
    if args.corrupt_golden {
        // test mode: damage one golden entry so the driver must fail
        let bump = Matrix::identity(3, backend);
        golden_core_ep_1 = golden_core_ep_1.try_add(&bump).expect("same backend");
    }

    let membership = {
        let a_sq = a2.pow(2)?;
        let witness = cast(&ex2.one_three_of_a_squared);
        let report = check_axioms(
            &a_sq,
            &witness,
            &[Axiom::P1, Axiom::P3E],
            Some(&e2),
            None,
            &tol,
        )?;
        report.all_passed()
    };

    let double = core_ep_of_core_ep(&a2, &e2, &tol)?;
    let checks = vec![
        GoldenCheck {
            name: "example 1: E-weighted core-EP inverse",
            ok: matrices_match(&core_ep(&a1, &e1, &tol)?.value, &golden_core_ep_1, backend),
        },
        GoldenCheck {
            name: "example 1: F-weighted dual core-EP inverse",
            ok: matrices_match(
                &dual_core_ep(&a1, &f1, &tol)?.value,
                &cast(&ex1.dual_core_ep),
                backend,
            ),
        },
        GoldenCheck {
            name: "example 2: Drazin inverse",
            ok: matrices_match(&drazin(&a2, &tol)?, &cast(&ex2.drazin), backend),
        },
        GoldenCheck {
            name: "example 2: E-weighted core-EP inverse",
            ok: matrices_match(
                &core_ep(&a2, &e2, &tol)?.value,
                &cast(&ex2.core_ep),
                backend,
            ),
        },
        GoldenCheck {
            name: "example 2: published {1,3^E} inverse of A^2 (membership)",
            ok: membership,
        },
        GoldenCheck {
            name: "example 2: core-EP of the core-EP inverse (differs from A)",
            ok: matrices_match(&double, &cast(&ex2.core_ep_of_core_ep), backend)
                && !matrices_match(&double, &a2, backend),
        },
    ];

    let mut all_ok = true;
    println!("reference example checks ({backend} backend):");
    for check in &checks {
        let flag = if check.ok { "ok  " } else { "FAIL" };
        println!("  [{flag}] {}", check.name);
        all_ok &= check.ok;
    }
    Ok(if all_ok { 0 } else { 5 })
}

/// Consumers like `head` may close stdout early; that is not an error.
fn print_ignoring_closed_pipe(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Index(args) => cmd_index(args),
        Command::PaperExamples(args) => cmd_paper_examples(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
