//! The `ore` command line: one command per invocation, JSON in, one line of
//! JSON out.
//!
//! Every invocation prints a single envelope to standard output, either
//! `{"ok":true,"result":...}` or `{"ok":false,"error":{"code":...,"message":...}}`.
//! Exit status is 0 on success, 2 when the input is not a derivation or an
//! `--assert`ed check is false, and 1 for every other failure.

use std::io::{Read, Write};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commutant;
use crate::derivation::DerivationMatrix;
use crate::error::Error;
use crate::json::*;
use crate::sparse_mode::{self, SparseDerivation};

#[derive(Parser, Debug)]
#[command(name = "ore", version, about = "Exact computations in Ore extensions of function algebras")]
struct Cli {
    /// JSON input file, or `-` for standard input.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Turn a false check into a failure (exit status 2).
    #[arg(long = "assert", global = true)]
    assert: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Twisted derivations of the finite function algebra.
    Derivation {
        #[command(subcommand)]
        action: DerivationAction,
    },
    /// Ore polynomial arithmetic.
    Poly {
        #[command(subcommand)]
        action: PolyAction,
    },
    /// Basis of the centralizer of the coefficient algebra up to a degree.
    Centralizer {
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "solver")]
        method: MethodArg,
    },
    /// Basis of the center up to a degree, or membership of one polynomial.
    Center {
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// The finite-support algebra on the integers.
    Sparse {
        #[command(subcommand)]
        action: SparseAction,
    },
    /// Truncated skew power series.
    Series {
        #[command(subcommand)]
        action: SeriesAction,
    },
    /// Skew Laurent polynomials.
    Laurent {
        #[command(subcommand)]
        action: LaurentAction,
    },
}

#[derive(Subcommand, Debug)]
enum DerivationAction {
    /// Matrix of the derivation with a given diagonal.
    Build,
    /// Check a matrix against the derivation conditions.
    Validate,
}

#[derive(Subcommand, Debug)]
enum PolyAction {
    /// Product `left * right`.
    Mul,
    /// Sum `left + right`.
    Add,
    /// Whether `poly` commutes with the coefficient algebra, or `left` with `right`.
    Commutes,
}

#[derive(Subcommand, Debug)]
enum SparseAction {
    Derivation {
        #[command(subcommand)]
        action: DerivationAction,
    },
    /// Apply the derivation of `context` to `f`.
    Apply,
    Mul,
    Add,
    Commutes,
    /// Centralizer window of a context, or membership of `poly`.
    Centralizer {
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Center membership of `poly`.
    Center,
    /// Leading coefficient vanishes where the top power of the bijection moves points.
    Leading,
}

#[derive(Subcommand, Debug)]
enum SeriesAction {
    Mul {
        #[arg(long)]
        order: Option<usize>,
    },
    Member {
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum LaurentAction {
    Mul,
    Member,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Solver,
    ClosedForm,
}

#[derive(Debug)]
struct Failure {
    code: &'static str,
    message: String,
    exit: i32,
}

impl Failure {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), exit: 1 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = if matches!(e, Error::NotADerivation(_)) { 2 } else { 1 };
        Failure { code: e.code(), message: e.to_string(), exit }
    }
}

/// A result plus, for checks, the boolean that `--assert` inspects.
struct Outcome {
    result: Value,
    verdict: Option<bool>,
}

impl Outcome {
    fn value(result: Value) -> Self {
        Outcome { result, verdict: None }
    }

    fn check(b: bool) -> Self {
        Outcome { result: Value::Bool(b), verdict: Some(b) }
    }
}

type Handled = std::result::Result<Outcome, Failure>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn payload<T: DeserializeOwned>(v: Value) -> std::result::Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::new("schema_violation", e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Pair<T> {
    left: T,
    right: T,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrPair<T> {
    One {
        poly: T,
    },
    Pair {
        left: T,
        right: T,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContextOnly<C> {
    context: C,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ContextOrPoly<C, P> {
    Context { context: C },
    Poly { poly: P },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyOnly<P> {
    poly: P,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SparseApply {
    context: SparseContextJson,
    f: SparseFuncJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SparseDiag {
    bijection: BijectionJson,
    #[serde(default)]
    diag: IntKeyed<JsonRational>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContextPair<T> {
    context: ContextJson,
    left: T,
    right: T,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContextElement<T> {
    context: ContextJson,
    element: T,
}

fn derivation(action: &DerivationAction, input: Value) -> Handled {
    match action {
        DerivationAction::Build => {
            let j: DiagJson = payload(input)?;
            let d = DerivationMatrix::build(decode_perm(j.perm)?, j.diag.into_iter().map(|r| r.0).collect())?;
            Ok(Outcome::value(to_value(&encode_derivation(&d))))
        }
        DerivationAction::Validate => {
            let d = decode_derivation(payload(input)?)?;
            let (valid, violation, witness) = match d.validate() {
                Ok(()) => (true, Value::Null, d.inner_witness()?.map(|a| to_value(&encode_func(&a)))),
                Err(v) => {
                    let (row, column) = v.position();
                    (false, json!({"condition": v.condition(), "row": row + 1, "column": column + 1}), None)
                }
            };
            Ok(Outcome {
                result: json!({"valid": valid, "violation": violation, "inner_witness": witness}),
                verdict: Some(valid),
            })
        }
    }
}

fn poly(action: &PolyAction, input: Value) -> Handled {
    match action {
        PolyAction::Mul | PolyAction::Add => {
            let j: Pair<PolyJson> = payload(input)?;
            let ps = decode_polys_same_context(vec![j.left, j.right])?;
            let out = match action {
                PolyAction::Mul => ps[0].multiply(&ps[1])?,
                _ => ps[0].add(&ps[1])?,
            };
            Ok(Outcome::value(to_value(&encode_poly(&out))))
        }
        PolyAction::Commutes => match payload::<OneOrPair<PolyJson>>(input)? {
            OneOrPair::One { poly } => Ok(Outcome::check(decode_poly(poly)?.commutes_with_coefficient_algebra())),
            OneOrPair::Pair { left, right } => {
                let ps = decode_polys_same_context(vec![left, right])?;
                Ok(Outcome::check(ps[0].commutes_with(&ps[1])?))
            }
        },
    }
}

fn centralizer(max_degree: usize, method: MethodArg, input: Value) -> Handled {
    let j: ContextOnly<ContextJson> = payload(input)?;
    let ctx = decode_context(j.context)?;
    let basis = match method {
        MethodArg::Solver => commutant::centralizer_solver(&ctx, max_degree),
        MethodArg::ClosedForm => commutant::centralizer_closed_form(&ctx, max_degree)?,
    };
    Ok(Outcome::value(to_value(&encode_basis(&basis))))
}

fn center(max_degree: Option<usize>, input: Value) -> Handled {
    match payload::<ContextOrPoly<ContextJson, PolyJson>>(input)? {
        ContextOrPoly::Context { context } => {
            let m = max_degree.ok_or_else(|| Failure::new("usage", "--max-degree is required for a center basis"))?;
            let basis = commutant::center_closed_form(&decode_context(context)?, m)?;
            Ok(Outcome::value(to_value(&encode_basis(&basis))))
        }
        ContextOrPoly::Poly { poly } => Ok(Outcome::check(commutant::center_membership(&decode_poly(poly)?)?)),
    }
}

fn sparse(action: &SparseAction, input: Value) -> Handled {
    match action {
        SparseAction::Derivation { action: DerivationAction::Build } => {
            let j: SparseDiag = payload(input)?;
            let bij = decode_bijection(j.bijection)?;
            let d = SparseDerivation::from_diagonal(bij, j.diag.0.into_iter().map(|(i, v)| (i, v.0)).collect())?;
            Ok(Outcome::value(to_value(&encode_sparse_derivation(&d))))
        }
        SparseAction::Derivation { action: DerivationAction::Validate } => {
            let j: SparseDerivationJson = payload(input)?;
            match decode_sparse_derivation(j) {
                Ok(_) => Ok(Outcome { result: json!({"valid": true, "message": null}), verdict: Some(true) }),
                Err(Error::NotADerivation(m)) => {
                    Ok(Outcome { result: json!({"valid": false, "message": m}), verdict: Some(false) })
                }
                Err(e) => Err(e.into()),
            }
        }
        SparseAction::Apply => {
            let j: SparseApply = payload(input)?;
            let ctx = decode_sparse_context(j.context)?;
            let out = ctx.derivation().apply(&decode_sparse_func(j.f));
            Ok(Outcome::value(to_value(&encode_sparse_func(&out))))
        }
        SparseAction::Mul | SparseAction::Add => {
            let j: Pair<SparsePolyJson> = payload(input)?;
            let ps = decode_sparse_polys_same_context(vec![j.left, j.right])?;
            let out = match action {
                SparseAction::Mul => ps[0].multiply(&ps[1])?,
                _ => ps[0].add(&ps[1])?,
            };
            Ok(Outcome::value(to_value(&encode_sparse_poly(&out))))
        }
        SparseAction::Commutes => match payload::<OneOrPair<SparsePolyJson>>(input)? {
            OneOrPair::One { poly } => {
                Ok(Outcome::check(decode_sparse_poly(poly)?.commutes_with_coefficient_algebra()))
            }
            OneOrPair::Pair { left, right } => {
                let ps = decode_sparse_polys_same_context(vec![left, right])?;
                Ok(Outcome::check(ps[0].commutes_with(&ps[1])?))
            }
        },
        SparseAction::Centralizer { max_degree } => {
            match payload::<ContextOrPoly<SparseContextJson, SparsePolyJson>>(input)? {
                ContextOrPoly::Context { context } => {
                    let m = max_degree
                        .ok_or_else(|| Failure::new("usage", "--max-degree is required for a centralizer window"))?;
                    let w = sparse_mode::sparse_centralizer(&*decode_sparse_context(context)?, m)?;
                    Ok(Outcome::value(to_value(&encode_window(&w))))
                }
                ContextOrPoly::Poly { poly } => {
                    let p = decode_sparse_poly(poly)?;
                    let m = p.degree().unwrap_or(0).max(max_degree.unwrap_or(0));
                    let w = sparse_mode::sparse_centralizer(p.context(), m)?;
                    Ok(Outcome::check(w.contains(&p)))
                }
            }
        }
        SparseAction::Center => {
            let j: PolyOnly<SparsePolyJson> = payload(input)?;
            Ok(Outcome::check(sparse_mode::sparse_center_membership(&decode_sparse_poly(j.poly)?)?))
        }
        SparseAction::Leading => {
            let j: PolyOnly<SparsePolyJson> = payload(input)?;
            Ok(Outcome::check(sparse_mode::sparse_leading_coefficient_check(&decode_sparse_poly(j.poly)?)))
        }
    }
}

fn series(action: &SeriesAction, input: Value) -> Handled {
    match action {
        SeriesAction::Mul { order } => {
            let j: ContextPair<SeriesJson> = payload(input)?;
            let ctx = decode_context(j.context)?;
            let a = decode_series(&ctx, j.left, *order)?;
            let b = decode_series(&ctx, j.right, *order)?;
            Ok(Outcome::value(to_value(&encode_series(&a.multiply(&b)?))))
        }
        SeriesAction::Member { order } => {
            let j: ContextElement<SeriesJson> = payload(input)?;
            let ctx = decode_context(j.context)?;
            let s = decode_series(&ctx, j.element, *order)?;
            let member = s.centralizer_membership();
            Ok(Outcome {
                result: json!({"centralizer": member, "center": s.center_membership(), "order": s.order()}),
                verdict: Some(member),
            })
        }
    }
}

fn laurent(action: &LaurentAction, input: Value) -> Handled {
    match action {
        LaurentAction::Mul => {
            let j: ContextPair<LaurentJson> = payload(input)?;
            let ctx = decode_context(j.context)?;
            let a = decode_laurent(&ctx, j.left)?;
            let b = decode_laurent(&ctx, j.right)?;
            Ok(Outcome::value(to_value(&encode_laurent(&a.multiply(&b)?))))
        }
        LaurentAction::Member => {
            let j: ContextElement<LaurentJson> = payload(input)?;
            let ctx = decode_context(j.context)?;
            let l = decode_laurent(&ctx, j.element)?;
            let member = l.centralizer_membership();
            Ok(Outcome {
                result: json!({"centralizer": member, "center": l.center_membership()}),
                verdict: Some(member),
            })
        }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> std::result::Result<Value, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::new("io", format!("standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{path}: {e}")))?;
    }
    serde_json::from_str(&text).map_err(|e| Failure::new("malformed_json", e.to_string()))
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Handled {
    let input = read_input(&cli.input, stdin)?;
    let outcome = match &cli.command {
        Command::Derivation { action } => derivation(action, input),
        Command::Poly { action } => poly(action, input),
        Command::Centralizer { max_degree, method } => centralizer(*max_degree, *method, input),
        Command::Center { max_degree } => center(*max_degree, input),
        Command::Sparse { action } => sparse(action, input),
        Command::Series { action } => series(action, input),
        Command::Laurent { action } => laurent(action, input),
    }?;
    if cli.assert && outcome.verdict == Some(false) {
        return Err(Failure { code: "assertion_failed", message: "the check evaluated to false".into(), exit: 2 });
    }
    Ok(outcome)
}

fn emit(out: &mut dyn Write, v: &Value) {
    let _ = writeln!(out, "{}", serde_json::to_string(v).expect("json values serialize"));
}

/// Runs one command; `args` includes the program name. Returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let code = match e.kind() {
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => "unknown_command",
                _ => "usage",
            };
            let _ = write!(stderr, "{}", e.render());
            let first = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                "a subcommand is required".to_string()
            } else {
                e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string()
            };
            emit(stdout, &json!({"ok": false, "error": {"code": code, "message": first}}));
            return 1;
        }
    };
    match dispatch(&cli, stdin) {
        Ok(o) => {
            emit(stdout, &json!({"ok": true, "result": o.result}));
            0
        }
        Err(f) => {
            let _ = writeln!(stderr, "ore: {}: {}", f.code, f.message);
            emit(stdout, &json!({"ok": false, "error": {"code": f.code, "message": f.message}}));
            f.exit
        }
    }
}
