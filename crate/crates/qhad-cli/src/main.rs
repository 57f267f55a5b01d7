//! `qhad` — generate, verify, transform, and classify quaternionic Hadamard
//! matrices from the command line.
//!
//! Matrices travel as JSON documents (see `qhad::io`); every subcommand that
//! takes a matrix accepts a file path or `-` for stdin and writes results to
//! stdout. Exit codes: 0 on success/verified, 1 when a matrix fails a check
//! (verification, classification, lifting), 2 on usage or parse errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qhad::butson::{bh45_emptiness, butson_profile, q_type_conjugate_to_complex, DEFAULT_R_MAX};
use qhad::families::{oneparam_a0_range, FamilyPoint, RootChoice, Sign};
use qhad::io::{emit_matrix, parse_matrix, Metadata};
use qhad::qmat::{
    apply_move, complex_adjoint, dephase, hadamard_check, is_circulant_core, lift_from_complex,
    lift_from_real, real_adjoint, Complex64, ComplexMatrix, EquivalenceMove, QMatrix, RealMatrix,
};
use qhad::search::{classify_core, solve_circulant, SolutionLabel};
use qhad::{Quaternion, DEFAULT_TOL};

/// Write a line to stdout, exiting quietly if the consumer closed the pipe
/// (e.g. `qhad scan ... | head`).
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "qhad",
    version,
    about = "Quaternionic Hadamard matrices: construction, verification, and search"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a matrix from a parametric family.
    Gen(GenArgs),
    /// Check the Hadamard conditions and report deviations.
    Verify(VerifyArgs),
    /// Apply an equivalence move.
    #[command(name = "move")]
    Move(MoveArgs),
    /// Compute the complex or real adjoint of a matrix.
    Adjoint(AdjointArgs),
    /// Lift a compliant complex/real Hadamard matrix to a quaternionic one.
    Lift(LiftArgs),
    /// Profile the root-of-unity structure of a matrix.
    Butson(ButsonArgs),
    /// Exhaustive emptiness check for order-5 rows over single-axis fourth
    /// roots of unity.
    Bh45,
    /// Search for circulant cores by damped least squares.
    Solve(SolveArgs),
    /// Label a circulant-core matrix by its family.
    Classify(ClassifyArgs),
    /// Generate and verify a family over a parameter grid.
    Scan(ScanArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family name: fourier, order3, order4-generic, order5-sphere,
    /// order5-oneparam, or order5-noncirc.
    family: String,
    /// Family parameter as `name=value` (repeatable).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Sign branch for order5-sphere.
    #[arg(long, allow_hyphen_values = true, default_value = "+")]
    sign_a: String,
    /// Sign branch for order5-oneparam.
    #[arg(long, allow_hyphen_values = true, default_value = "+")]
    sign_d: String,
    /// Quadratic root branch for order5-oneparam.
    #[arg(long, default_value = "principal")]
    root: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input document (path or `-` for stdin).
    #[arg(default_value = "-")]
    input: String,
    /// Largest deviation accepted as Hadamard.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("op").required(true).args(
    ["row_perm", "col_perm", "left_diag", "right_diag", "conjugate", "dephase"],
))]
struct MoveArgs {
    /// Input document (path or `-` for stdin).
    #[arg(default_value = "-")]
    input: String,
    /// Row permutation as comma-separated indices, e.g. `1,0,2`.
    #[arg(long, value_name = "PERM")]
    row_perm: Option<String>,
    /// Column permutation as comma-separated indices.
    #[arg(long, value_name = "PERM")]
    col_perm: Option<String>,
    /// Left diagonal as a JSON array of `[w,x,y,z]` unit quaternions.
    #[arg(long, value_name = "JSON")]
    left_diag: Option<String>,
    /// Right diagonal as a JSON array of `[w,x,y,z]` unit quaternions.
    #[arg(long, value_name = "JSON")]
    right_diag: Option<String>,
    /// Conjugate every entry by this quaternion, given as `w,x,y,z`.
    #[arg(long, value_name = "QUAT", allow_hyphen_values = true)]
    conjugate: Option<String>,
    /// Normalize the first row and column to ones.
    #[arg(long)]
    dephase: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AdjointTarget {
    Complex,
    Real,
}

#[derive(Args)]
struct AdjointArgs {
    /// Input document (path or `-` for stdin).
    #[arg(default_value = "-")]
    input: String,
    /// Adjoint to compute: `complex` (2n) or `real` (4n).
    #[arg(long, value_enum)]
    target: AdjointTarget,
}

#[derive(Args)]
struct LiftArgs {
    /// Input document (path or `-` for stdin); entries must be complex
    /// (`y = z = 0`) or real as appropriate.
    #[arg(default_value = "-")]
    input: String,
    /// Interpretation of the input: `complex` (order 2n) or `real` (4n).
    #[arg(long, value_enum)]
    from: AdjointTarget,
    /// Hadamard/compliance tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct ButsonArgs {
    /// Input document (path or `-` for stdin).
    #[arg(default_value = "-")]
    input: String,
    /// Largest root order probed.
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    r_max: u32,
    /// Entry comparison tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct SolveArgs {
    /// Matrix order to search (3, 4, or 5).
    #[arg(long)]
    order: usize,
    /// Number of random restarts.
    #[arg(long, default_value_t = 100)]
    restarts: usize,
    /// Seed for the restart streams (required for reproducibility).
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Input document (path or `-` for stdin); must have a circulant core.
    #[arg(default_value = "-")]
    input: String,
    /// Matching tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args)]
struct ScanArgs {
    /// Family name (same set as `gen`).
    family: String,
    /// Fixed value `name=value` or range `name=lo:hi:steps` (repeatable).
    #[arg(long = "param", value_name = "NAME=VALUE|NAME=LO:HI:STEPS")]
    params: Vec<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "+")]
    sign_a: String,
    #[arg(long, allow_hyphen_values = true, default_value = "+")]
    sign_d: String,
    #[arg(long, default_value = "principal")]
    root: String,
    /// Verification tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// `Err` means a usage/parse problem (exit 2); domain failures print their
/// own message and return `Ok(1)`.
fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Move(args) => cmd_move(args),
        Cmd::Adjoint(args) => cmd_adjoint(args),
        Cmd::Lift(args) => cmd_lift(args),
        Cmd::Butson(args) => cmd_butson(args),
        Cmd::Bh45 => {
            print_json(&bh45_emptiness());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Classify(args) => cmd_classify(args),
        Cmd::Scan(args) => cmd_scan(args),
    }
}

fn domain_failure(msg: impl std::fmt::Display) -> Result<ExitCode, String> {
    eprintln!("error: {msg}");
    Ok(ExitCode::from(1))
}

fn print_json<T: serde::Serialize>(value: &T) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization cannot fail")
    );
}

// ── Input/output plumbing ──────────────────────────────────────────────────

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn read_matrix(path: &str) -> Result<(QMatrix, Option<Metadata>), String> {
    let text = read_input(path)?;
    parse_matrix(&text).map_err(|e| format!("parsing matrix document: {e}"))
}

// ── gen/scan parameter handling ────────────────────────────────────────────

#[derive(Debug, Clone, Copy)]
enum ParamValue {
    Fixed(f64),
    Range { lo: f64, hi: f64, steps: usize },
}

fn parse_param(spec: &str) -> Result<(String, ParamValue), String> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| format!("parameter '{spec}' is not of the form name=value"))?;
    let parse = |s: &str| -> Result<f64, String> {
        s.parse::<f64>()
            .map_err(|_| format!("parameter '{name}': '{s}' is not a number"))
    };
    let parts: Vec<&str> = value.split(':').collect();
    let value = match parts.as_slice() {
        [v] => ParamValue::Fixed(parse(v)?),
        [lo, hi, steps] => {
            let steps: usize = steps
                .parse()
                .map_err(|_| format!("parameter '{name}': steps '{steps}' is not an integer"))?;
            if steps == 0 {
                return Err(format!("parameter '{name}': steps must be at least 1"));
            }
            ParamValue::Range {
                lo: parse(lo)?,
                hi: parse(hi)?,
                steps,
            }
        }
        _ => {
            return Err(format!(
                "parameter '{name}': expected value or lo:hi:steps, got '{value}'"
            ))
        }
    };
    Ok((name.to_string(), value))
}

fn expected_params(family: &str) -> Result<&'static [&'static str], String> {
    Ok(match family {
        "fourier" => &["n", "theta", "phi"],
        "order3" => &["theta", "phi"],
        "order4-generic" => &["theta", "phi", "gamma"],
        "order5-sphere" => &["t"],
        "order5-oneparam" => &["a0"],
        "order5-noncirc" => &["t"],
        other => {
            return Err(format!(
                "unknown family '{other}' (expected fourier, order3, order4-generic, \
                 order5-sphere, order5-oneparam, or order5-noncirc)"
            ))
        }
    })
}

struct FamilyArgs {
    family: String,
    sign_a: Sign,
    sign_d: Sign,
    root: RootChoice,
}

impl FamilyArgs {
    fn new(family: &str, sign_a: &str, sign_d: &str, root: &str) -> Result<FamilyArgs, String> {
        expected_params(family)?;
        Ok(FamilyArgs {
            family: family.to_string(),
            sign_a: sign_a.parse().map_err(|e| format!("--sign-a: {e}"))?,
            sign_d: sign_d.parse().map_err(|e| format!("--sign-d: {e}"))?,
            root: root.parse().map_err(|e| format!("--root: {e}"))?,
        })
    }

    /// Builds the family point for one full parameter assignment.
    fn point(&self, values: &BTreeMap<String, f64>) -> Result<FamilyPoint, String> {
        let get = |name: &str| -> Result<f64, String> {
            values
                .get(name)
                .copied()
                .ok_or_else(|| format!("family '{}' requires --param {name}=…", self.family))
        };
        Ok(match self.family.as_str() {
            "fourier" => {
                let n = get("n")?;
                if n < 1.0 || n.fract() != 0.0 {
                    return Err(format!("n must be a positive integer, got {n}"));
                }
                FamilyPoint::Fourier {
                    n: n as usize,
                    theta: get("theta")?,
                    phi: get("phi")?,
                }
            }
            "order3" => FamilyPoint::Order3 {
                theta: get("theta")?,
                phi: get("phi")?,
            },
            "order4-generic" => FamilyPoint::Order4Generic {
                theta: get("theta")?,
                phi: get("phi")?,
                gamma: get("gamma")?,
            },
            "order5-sphere" => FamilyPoint::Order5Sphere {
                t: get("t")?,
                sign_a: self.sign_a,
            },
            "order5-oneparam" => FamilyPoint::Order5OneParam {
                a0: get("a0")?,
                sign_d: self.sign_d,
                root: self.root,
            },
            "order5-noncirc" => FamilyPoint::Order5NonCirculant { t: get("t")? },
            _ => unreachable!("validated in FamilyArgs::new"),
        })
    }

    fn metadata(&self, values: &BTreeMap<String, f64>) -> Metadata {
        let mut params = serde_json::Map::new();
        for (k, v) in values {
            params.insert(k.clone(), serde_json::json!(v));
        }
        match self.family.as_str() {
            "order5-sphere" => {
                params.insert("sign_a".into(), serde_json::json!(self.sign_a.to_string()));
            }
            "order5-oneparam" => {
                params.insert("sign_d".into(), serde_json::json!(self.sign_d.to_string()));
                params.insert("root".into(), serde_json::json!(self.root.to_string()));
            }
            _ => {}
        }
        let mut meta = Metadata::new();
        meta.insert("family".into(), serde_json::json!(self.family));
        meta.insert(
            "generator_version".into(),
            serde_json::json!(env!("CARGO_PKG_VERSION")),
        );
        meta.insert("params".into(), serde_json::Value::Object(params));
        meta
    }

    /// Validates grid values that have family-specific admissible ranges.
    fn validate_values(&self, name: &str, values: &[f64]) -> Result<(), String> {
        if self.family == "order5-oneparam" && name == "a0" {
            let (min, max) = oneparam_a0_range();
            for &v in values {
                if !(min - 1e-12..=max + 1e-12).contains(&v) {
                    return Err(format!(
                        "a0 = {v} is outside the admissible range [{min:.12}, {max:.12}]"
                    ));
                }
            }
        }
        if self.family == "fourier" && name == "n" {
            for &v in values {
                if v < 1.0 || v.fract() != 0.0 {
                    return Err(format!("n must be a positive integer, got {v}"));
                }
            }
        }
        Ok(())
    }
}

// ── Subcommands ────────────────────────────────────────────────────────────

fn cmd_gen(args: GenArgs) -> Result<ExitCode, String> {
    let fam = FamilyArgs::new(&args.family, &args.sign_a, &args.sign_d, &args.root)?;
    let allowed = expected_params(&args.family)?;
    let mut values = BTreeMap::new();
    for spec in &args.params {
        let (name, value) = parse_param(spec)?;
        if !allowed.contains(&name.as_str()) {
            return Err(format!(
                "family '{}' has no parameter '{name}' (expected: {})",
                args.family,
                allowed.join(", ")
            ));
        }
        let ParamValue::Fixed(v) = value else {
            return Err(format!(
                "parameter '{name}': ranges are only valid with `scan`"
            ));
        };
        fam.validate_values(&name, &[v])?;
        values.insert(name, v);
    }
    let point = fam.point(&values)?;
    let h = point.generate().map_err(|e| e.to_string())?;
    outln!("{}", emit_matrix(&h, Some(fam.metadata(&values))));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let (h, _) = read_matrix(&args.input)?;
    let report = hadamard_check(&h, args.tol);
    print_json(&report);
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_perm(spec: &str) -> Result<Vec<usize>, String> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("permutation index '{s}' is not a nonnegative integer"))
        })
        .collect()
}

fn parse_diag(spec: &str) -> Result<Vec<Quaternion>, String> {
    serde_json::from_str::<Vec<Quaternion>>(spec)
        .map_err(|e| format!("diagonal must be a JSON array of [w,x,y,z] quadruples: {e}"))
}

fn parse_quat(spec: &str) -> Result<Quaternion, String> {
    let comps: Vec<f64> = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("quaternion component '{s}' is not a number"))
        })
        .collect::<Result<_, _>>()?;
    if comps.len() != 4 {
        return Err(format!(
            "quaternion must have 4 comma-separated components, got {}",
            comps.len()
        ));
    }
    Ok(Quaternion::new(comps[0], comps[1], comps[2], comps[3]))
}

fn cmd_move(args: MoveArgs) -> Result<ExitCode, String> {
    let (h, meta) = read_matrix(&args.input)?;
    if args.dephase {
        return match dephase(&h) {
            Ok((out, left, right)) => {
                let mut meta = meta.unwrap_or_default();
                meta.insert(
                    "dephase_left".into(),
                    serde_json::to_value(&left).expect("moves serialize"),
                );
                meta.insert(
                    "dephase_right".into(),
                    serde_json::to_value(&right).expect("moves serialize"),
                );
                outln!("{}", emit_matrix(&out, Some(meta)));
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => domain_failure(e),
        };
    }
    let mv = if let Some(spec) = &args.row_perm {
        EquivalenceMove::RowPermutation(parse_perm(spec)?)
    } else if let Some(spec) = &args.col_perm {
        EquivalenceMove::ColPermutation(parse_perm(spec)?)
    } else if let Some(spec) = &args.left_diag {
        EquivalenceMove::LeftDiagonal(parse_diag(spec)?)
    } else if let Some(spec) = &args.right_diag {
        EquivalenceMove::RightDiagonal(parse_diag(spec)?)
    } else if let Some(spec) = &args.conjugate {
        EquivalenceMove::GlobalConjugation(parse_quat(spec)?)
    } else {
        unreachable!("clap enforces exactly one operation");
    };
    match apply_move(&h, &mv) {
        Ok(out) => {
            outln!("{}", emit_matrix(&out, meta));
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => domain_failure(e),
    }
}

fn cmd_adjoint(args: AdjointArgs) -> Result<ExitCode, String> {
    let (h, _) = read_matrix(&args.input)?;
    let n = h.order();
    let mut meta = Metadata::new();
    meta.insert("source_order".into(), serde_json::json!(n));
    let out = match args.target {
        AdjointTarget::Complex => {
            meta.insert("adjoint".into(), serde_json::json!("complex"));
            let m = complex_adjoint(&h);
            QMatrix::from_fn(2 * n, |i, j| Quaternion::complex(m[(i, j)].re, m[(i, j)].im))
        }
        AdjointTarget::Real => {
            meta.insert("adjoint".into(), serde_json::json!("real"));
            let m = real_adjoint(&h);
            QMatrix::from_fn(4 * n, |i, j| Quaternion::real(m[(i, j)]))
        }
    };
    outln!("{}", emit_matrix(&out, Some(meta)));
    Ok(ExitCode::SUCCESS)
}

fn cmd_lift(args: LiftArgs) -> Result<ExitCode, String> {
    let (h, _) = read_matrix(&args.input)?;
    let n = h.order();
    let lifted = match args.from {
        AdjointTarget::Complex => {
            for (k, q) in h.entries().iter().enumerate() {
                if !q.is_complex(args.tol) {
                    return domain_failure(format!(
                        "entry ({}, {}) is not complex (y or z component exceeds {})",
                        k / n,
                        k % n,
                        args.tol
                    ));
                }
            }
            let m = ComplexMatrix::from_fn(n, |i, j| Complex64::new(h[(i, j)].w, h[(i, j)].x));
            lift_from_complex(&m, args.tol)
        }
        AdjointTarget::Real => {
            for (k, q) in h.entries().iter().enumerate() {
                if !q.is_real(args.tol) {
                    return domain_failure(format!(
                        "entry ({}, {}) is not real (imaginary component exceeds {})",
                        k / n,
                        k % n,
                        args.tol
                    ));
                }
            }
            let m = RealMatrix::from_fn(n, |i, j| h[(i, j)].w);
            lift_from_real(&m, args.tol)
        }
    };
    match lifted {
        Ok(out) => {
            let mut meta = Metadata::new();
            meta.insert(
                "lifted_from".into(),
                serde_json::json!(match args.from {
                    AdjointTarget::Complex => "complex",
                    AdjointTarget::Real => "real",
                }),
            );
            meta.insert("source_order".into(), serde_json::json!(n));
            outln!("{}", emit_matrix(&out, Some(meta)));
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => domain_failure(e),
    }
}

fn cmd_butson(args: ButsonArgs) -> Result<ExitCode, String> {
    let (h, _) = read_matrix(&args.input)?;
    let profile = butson_profile(&h, args.r_max, args.tol);
    let to_complex = q_type_conjugate_to_complex(&h, args.tol);
    let mut value = serde_json::to_value(&profile).expect("profile serializes");
    value
        .as_object_mut()
        .expect("profile is an object")
        .insert(
            "to_complex".into(),
            serde_json::to_value(to_complex).expect("quaternion serializes"),
        );
    print_json(&value);
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, String> {
    if !(3..=5).contains(&args.order) {
        return Err(format!(
            "--order must be 3, 4, or 5 (got {})",
            args.order
        ));
    }
    let report = solve_circulant(args.order, args.restarts, args.seed)
        .map_err(|e| format!("solve failed: {e}"))?;
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode, String> {
    let (h, _) = read_matrix(&args.input)?;
    if !is_circulant_core(&h, args.tol.max(1e-9)) {
        return domain_failure("matrix does not have a circulant core with a border of ones");
    }
    let n = h.order();
    let core: Vec<Quaternion> = (1..n).map(|j| h[(1, j)]).collect();
    match classify_core(n, &core, args.tol) {
        Ok(c) => {
            let unclassified = matches!(c.label, SolutionLabel::Unclassified);
            print_json(&c);
            Ok(if unclassified {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Err(e) => domain_failure(e),
    }
}

fn grid_values(v: ParamValue) -> Vec<f64> {
    match v {
        ParamValue::Fixed(x) => vec![x],
        ParamValue::Range { lo, hi, steps } => (0..steps)
            .map(|i| {
                if steps == 1 {
                    lo
                } else {
                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

fn cmd_scan(args: ScanArgs) -> Result<ExitCode, String> {
    let fam = FamilyArgs::new(&args.family, &args.sign_a, &args.sign_d, &args.root)?;
    let allowed = expected_params(&args.family)?;
    let mut axes: Vec<(String, Vec<f64>)> = Vec::new();
    for spec in &args.params {
        let (name, value) = parse_param(spec)?;
        if !allowed.contains(&name.as_str()) {
            return Err(format!(
                "family '{}' has no parameter '{name}' (expected: {})",
                args.family,
                allowed.join(", ")
            ));
        }
        if axes.iter().any(|(n, _)| n == &name) {
            return Err(format!("parameter '{name}' given more than once"));
        }
        let values = grid_values(value);
        fam.validate_values(&name, &values)?;
        axes.push((name, values));
    }
    for required in allowed {
        if !axes.iter().any(|(n, _)| n == required) {
            return Err(format!(
                "family '{}' requires --param {required}=…",
                args.family
            ));
        }
    }

    let mut header = String::new();
    for (name, _) in &axes {
        let _ = write!(header, "{name:>14}");
    }
    let _ = write!(header, "  {:<4}  {}", "pass", "max_dev");
    outln!("{header}");

    let total: usize = axes.iter().map(|(_, v)| v.len()).product();
    let mut passed = 0usize;
    let mut worst: f64 = 0.0;
    for flat in 0..total {
        let mut rem = flat;
        let mut values = BTreeMap::new();
        let mut row = String::new();
        for (name, axis) in &axes {
            let v = axis[rem % axis.len()];
            rem /= axis.len();
            values.insert(name.clone(), v);
            let _ = write!(row, "{v:>14.6}");
        }
        let point = fam.point(&values)?;
        match point.generate() {
            Ok(h) => {
                let report = hadamard_check(&h, args.tol);
                let dev = report.max_dev();
                worst = worst.max(dev);
                if report.pass {
                    passed += 1;
                }
                let _ = write!(row, "  {:<4}  {dev:.3e}", if report.pass { "yes" } else { "NO" });
            }
            Err(e) => {
                let _ = write!(row, "  {:<4}  {e}", "ERR");
            }
        }
        outln!("{row}");
    }
    outln!("points: {total}  passed: {passed}  worst max_dev: {worst:.3e}");
    Ok(if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
