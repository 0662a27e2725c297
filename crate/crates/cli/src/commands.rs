//! Subcommand dispatch.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ylocal_core::localmem::{
    coefficients_from_null_vector, common_null_test, example_family, pencil_decompose, span_over_f,
    span_over_l, verify_witness_bounds, ylocal_closure, ylocal_points, LinearSubspace,
};
use ylocal_core::matspace::{
    find_rank1_idempotent_bruteforce, flat, is_r1_free_closure, is_subspace_of_tracezero, perp,
    MatrixSubspace,
};
use ylocal_core::{Error, Field, Polynomial};

use crate::instance::{parse_instance, InstanceFile, Kind};
use crate::report::{self, digest, field_name, Options, Report};
use crate::verify::verify_report;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "ylocal",
    version,
    about = "Exact decisions for local membership of y and rank-1 idempotents in matrix subspaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Instance file (or JSON report for `verify`); standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Emit the report as one JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    /// Decision method for `decide-local`.
    #[arg(long, global = true, value_enum)]
    pub method: Option<Method>,
    /// Maximum number of enumerated candidates for exhaustive searches.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Report elapsed_ms as 0 so that reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closure,
    Points,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Closure => "closure",
            Method::Points => "points",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// The free family with the local property that misses `y`.
    Example,
    /// The n = 3 subspace spanned by (y1, 0, y3) and (0, y1, 0).
    Counterexample,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Local membership of y at every point (closure or rational points).
    DecideLocal,
    /// Membership of y in V over the base field.
    DecideSpanF,
    /// Membership of y in the span over the rational-function field.
    DecideSpanL,
    /// Degree and divisibility bounds of the Cramer witness.
    WitnessBounds,
    /// Pencil decomposition and common null vector for d = n - 1.
    Pencil,
    /// r1-freeness of a matrix subspace through the local property.
    R1free,
    /// Exhaustive rank-1 idempotent search over a prime field.
    IdempotentSearch,
    /// Orthogonal complement under the trace pairing.
    Perp,
    /// Containment in the trace-zero matrices.
    Tracezero,
    /// Print a built-in instance.
    Example {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Build the instance over F_p instead of Q.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, value_enum, default_value = "example")]
        family: Family,
    },
    /// Re-check a JSON report.
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::DecideLocal => "decide-local",
            Command::DecideSpanF => "decide-span-f",
            Command::DecideSpanL => "decide-span-l",
            Command::WitnessBounds => "witness-bounds",
            Command::Pencil => "pencil",
            Command::R1free => "r1free",
            Command::IdempotentSearch => "idempotent-search",
            Command::Perp => "perp",
            Command::Tracezero => "tracezero",
            Command::Example { .. } => "example",
            Command::Verify => "verify",
        }
    }
}

/// Failure to compute, as opposed to a computed negative outcome.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Result of a decision, before the report envelope is added.
#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    pub outcome: bool,
    pub witness: Value,
    pub failure_witness: Value,
    pub d: usize,
}

fn body(outcome: bool, witness: Value, failure_witness: Value, d: usize) -> Body {
    Body {
        outcome,
        witness,
        failure_witness,
        d,
    }
}

fn linear(inst: &InstanceFile) -> Result<LinearSubspace, CliError> {
    if inst.kind != Kind::LinearSubspace {
        return Err(CliError::Input(
            "this command needs a linear-subspace instance".into(),
        ));
    }
    Ok(inst.linear_subspace()?)
}

/// The matrix subspace `W` of an instance: given directly, or
/// `perp(flat(V))` for a linear-subspace instance.
pub fn matrix_side(inst: &InstanceFile) -> Result<MatrixSubspace, CliError> {
    match inst.kind {
        Kind::MatrixSubspace => Ok(inst.matrix_subspace()?),
        Kind::LinearSubspace => {
            let v = inst.linear_subspace()?;
            let w = flat(&v);
            if w.dim() != v.d() {
                return Err(CliError::Input("basis of V is linearly dependent".into()));
            }
            Ok(perp(&w))
        }
    }
}

/// Runs a decision command on a parsed instance.
pub fn execute(command: &str, inst: &InstanceFile, opts: &Options) -> Result<Body, CliError> {
    match command {
        "decide-local" => {
            let v = linear(inst)?;
            let dec = match opts.method.as_deref() {
                None | Some("closure") => ylocal_closure(&v)?,
                Some("points") => ylocal_points(&v, opts.budget)?,
                Some(other) => return Err(CliError::Input(format!("unknown method '{other}'"))),
            };
            let fw = dec.failure.as_ref().map_or(Value::Null, report::failure);
            Ok(body(dec.holds, Value::Null, fw, v.d()))
        }
        "decide-span-f" => {
            let v = linear(inst)?;
            let alpha = span_over_f(&v, None)?;
            let w = alpha.as_ref().map_or(
                Value::Null,
                |a| json!({ "coefficients": report::scalars(a) }),
            );
            Ok(body(alpha.is_some(), w, Value::Null, v.d()))
        }
        "decide-span-l" => {
            let v = linear(inst)?;
            let w = span_over_l(&v, None)?;
            let witness = w.as_ref().map_or(Value::Null, |w| {
                json!({
                    "index_set": report::one_based(&w.index_set),
                    "minor": report::poly(&w.minor),
                    "lambdas": w.lambdas.iter().map(report::ratfun).collect::<Vec<_>>(),
                    "m": report::poly(&w.m),
                })
            });
            Ok(body(w.is_some(), witness, Value::Null, v.d()))
        }
        "witness-bounds" => {
            let v = linear(inst)?;
            let Some(w) = span_over_l(&v, None)? else {
                return Ok(body(
                    false,
                    Value::Null,
                    json!({ "reason": "y is not in the span over L" }),
                    v.d(),
                ));
            };
            let b = verify_witness_bounds(&w, &v)?;
            let lambdas: Vec<Value> = w
                .lambdas
                .iter()
                .zip(&b.lambdas)
                .map(|(l, c)| {
                    json!({
                        "num": l.numerator().to_string(),
                        "den": l.denominator().to_string(),
                        "num_degree": c.numerator_degree,
                        "den_degree": c.denominator_degree,
                        "homogeneous": c.homogeneous,
                        "coprime": c.coprime,
                        "ok": c.ok,
                    })
                })
                .collect();
            let minors: Vec<Value> = b
                .minors
                .iter()
                .map(|m| {
                    json!({
                        "index_set": report::one_based(&m.index_set),
                        "minor": report::poly(&m.minor),
                        "m_divides": m.divisible,
                    })
                })
                .collect();
            let witness = json!({
                "m": report::poly(&w.m),
                "m_degree": b.m_degree,
                "lambdas": lambdas,
                "degrees_ok": b.degrees_ok,
                "minors": minors,
                "m_divides_minors": b.m_divides_minors,
                "m_degree_below_d": b.m_degree_below_d,
            });
            let all = b.all_hold();
            let fw = if all {
                Value::Null
            } else {
                json!({
                    "degrees_ok": b.degrees_ok,
                    "m_divides_minors": b.m_divides_minors,
                    "m_degree_below_d": b.m_degree_below_d,
                })
            };
            Ok(body(all, witness, fw, v.d()))
        }
        "pencil" => {
            let v = linear(inst)?;
            let pencil = pencil_decompose(&v)?;
            let kernel = common_null_test(&pencil)?;
            let coeffs = kernel.as_deref().and_then(coefficients_from_null_vector);
            let witness = json!({
                "pencil": pencil.iter().map(report::matrix).collect::<Vec<_>>(),
                "null_vector": kernel.as_deref().map_or(Value::Null, report::scalars),
                "coefficients": coeffs.as_deref().map_or(Value::Null, report::scalars),
            });
            Ok(body(kernel.is_some(), witness, Value::Null, v.d()))
        }
        "r1free" => {
            let w = matrix_side(inst)?;
            let dec = is_r1_free_closure(&w)?;
            let witness = dec.subspace.as_ref().map_or(Value::Null, |v| {
                json!({ "subspace": v.basis().iter().map(|q| report::polys(q)).collect::<Vec<_>>() })
            });
            let fw = match (
                &dec.idempotent,
                dec.local.as_ref().and_then(|l| l.failure.as_ref()),
            ) {
                (Some(e), _) => json!({ "idempotent": report::idempotent(e) }),
                (None, Some(f)) => json!({ "local": report::failure(f) }),
                (None, None) => Value::Null,
            };
            Ok(body(dec.r1_free, witness, fw, w.codim()))
        }
        "idempotent-search" => {
            let w = matrix_side(inst)?;
            let hit = find_rank1_idempotent_bruteforce(&w, opts.budget)?;
            let fw = hit.as_ref().map_or(Value::Null, report::idempotent);
            Ok(body(hit.is_none(), Value::Null, fw, w.codim()))
        }
        "perp" => {
            let w = matrix_side(inst)?;
            let p = perp(&w);
            let witness = json!({
                "dim": p.dim(),
                "codim": p.codim(),
                "basis": p.basis().iter().map(report::matrix).collect::<Vec<_>>(),
                "instance": InstanceFile::from_matrices(&p).to_string(),
            });
            Ok(body(true, witness, Value::Null, w.codim()))
        }
        "tracezero" => {
            let w = matrix_side(inst)?;
            let inside = is_subspace_of_tracezero(&w);
            let fw = w.basis().iter().position(|m| !m.trace().is_zero()).map_or(
                Value::Null,
                |i| json!({ "index": i + 1, "trace": report::scalar(&w.basis()[i].trace()) }),
            );
            Ok(body(inside, Value::Null, fw, w.codim()))
        }
        "example" => {
            let d = inst.entries.len();
            Ok(body(true, Value::Null, Value::Null, d))
        }
        other => Err(CliError::Input(format!(
            "'{other}' is not a decision command"
        ))),
    }
}

pub fn counterexample(field: Field) -> LinearSubspace {
    let n = 3;
    let y: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(field, n, i)).collect();
    let z = Polynomial::zero(field, n);
    LinearSubspace::new(
        field,
        n,
        vec![
            vec![y[0].clone(), z.clone(), y[2].clone()],
            vec![z.clone(), y[0].clone(), z],
        ],
    )
    .expect("valid basis")
}

fn example_instance(
    n: Option<usize>,
    d: Option<usize>,
    prime: Option<u64>,
    family: Family,
) -> Result<InstanceFile, CliError> {
    let field = match prime {
        Some(p) => {
            Field::prime(p).map_err(|_| CliError::Input(format!("modulus not prime: {p}")))?
        }
        None => Field::Rationals,
    };
    let v = match family {
        Family::Example => {
            let (Some(n), Some(d)) = (n, d) else {
                return Err(CliError::Input("example needs --n and --d".into()));
            };
            example_family(field, n, d)?
        }
        Family::Counterexample => {
            if n.is_some_and(|n| n != 3) || d.is_some_and(|d| d != 2) {
                return Err(CliError::Input(
                    "the counterexample has n = 3 and d = 2".into(),
                ));
            }
            counterexample(field)
        }
    };
    Ok(InstanceFile::from_linear(&v))
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Invocation {
    fn error(e: &CliError) -> Self {
        Invocation {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn read_input(path: &Option<PathBuf>, stdin: Option<&mut dyn Read>) -> Result<String, CliError> {
    match (path, stdin) {
        (Some(p), _) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display()))),
        (None, Some(r)) => {
            let mut s = String::new();
            r.read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("cannot read standard input: {e}")))?;
            if s.trim().is_empty() {
                return Err(CliError::Input(
                    "missing input: pass --input FILE or pipe an instance".into(),
                ));
            }
            Ok(s)
        }
        (None, None) => Err(CliError::Input(
            "missing input: pass --input FILE or pipe an instance".into(),
        )),
    }
}

/// Builds the report for `command` on instance text.
pub fn decide(command: &str, text: &str, opts: &Options, timing: bool) -> Result<Report, CliError> {
    let inst = parse_instance(text).map_err(|e| CliError::Input(e.to_string()))?;
    // the canonical print is what gets recorded and digested
    let canonical = inst.to_string();
    let start = Instant::now();
    let b = execute(command, &inst, opts)?;
    let elapsed_ms = if timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(Report {
        command: command.to_string(),
        outcome: b.outcome,
        witness: b.witness,
        failure_witness: b.failure_witness,
        field: field_name(inst.field),
        n: inst.n,
        d: b.d,
        elapsed_ms,
        instance_digest: digest(&canonical),
        instance: canonical,
        options: opts.clone(),
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: Option<&mut dyn Read>) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return Invocation {
                code,
                stdout: if code == 0 {
                    text.clone()
                } else {
                    String::new()
                },
                stderr: if code == 0 { String::new() } else { text },
            };
        }
    };
    match run_cli(&cli, stdin) {
        Ok(stdout) => Invocation {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Invocation::error(&e),
    }
}

fn run_cli(cli: &Cli, stdin: Option<&mut dyn Read>) -> Result<String, CliError> {
    let name = cli.command.name();
    if cli.method.is_some() && !matches!(cli.command, Command::DecideLocal | Command::Verify) {
        return Err(CliError::Input(format!(
            "--method does not apply to {name}"
        )));
    }
    let opts = Options {
        method: cli.method.map(|m| m.name().to_string()),
        budget: cli.budget.unwrap_or(DEFAULT_BUDGET),
    };
    let report = match &cli.command {
        Command::Example {
            n,
            d,
            prime,
            family,
        } => {
            let inst = example_instance(*n, *d, *prime, *family)?;
            if !cli.json {
                return Ok(inst.to_string());
            }
            decide(name, &inst.to_string(), &opts, !cli.no_timing)?
        }
        Command::Verify => {
            let text = read_input(&cli.input, stdin)?;
            verify_report(&text, !cli.no_timing)?
        }
        _ => {
            let text = read_input(&cli.input, stdin)?;
            decide(name, &text, &opts, !cli.no_timing)?
        }
    };
    Ok(if cli.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    })
}
