//! Command-line front end.
//!
//! Exit codes: `0` success or pass, `1` an axiom failed or a fit was refused,
//! `2` usage or I/O error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::axioms::{arithmetic_mean, Audit, Auditor, Axiom, BlackBox, GridSpec, Verdict};
use crate::comono::Tuple;
use crate::decompose::{
    factorize_quasi_sugeno, fit_quasi_choquet, fit_signed_choquet, fit_symmetric_choquet, Fit, Refusal, Side,
};
use crate::error::{Error, Result};
use crate::gen::{random_set_function, rng, role_by_name};
use crate::integrals::{IValuedCapacity, Integral, TransformFn};
use crate::scalar::{self, Scalar};
use crate::selftest;
use crate::setfunc::{CapacityFile, Interval, Role, SetFunction};

#[derive(Parser, Debug)]
#[command(name = "comodular", version, about = "Discrete integrals, axiom audits and fits over exact rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputOptions,
}

#[derive(Args, Debug)]
struct OutputOptions {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `float` prints decimals and compares audit identities within `--eps`.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Rational)]
    mode: Mode,
    /// Tolerance for float mode.
    #[arg(long, global = true, default_value = "1/1000000000")]
    eps: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rational,
    Float,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an integral at one tuple.
    Eval(EvalArgs),
    /// Check axioms for a function on a grid.
    Audit(AuditArgs),
    /// Recover a capacity (and transform) from a function.
    Fit(FitArgs),
    /// Generate a seeded random capacity file.
    Gen(GenArgs),
    /// Run the built-in conformance suite.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IntegralKind {
    Choquet,
    Symmetric,
    Sugeno,
    QuasiChoquet,
    SymmetricQuasiChoquet,
    QuasiSugeno,
    Shilkret,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FunctionKind {
    Choquet,
    Symmetric,
    Sugeno,
    QuasiChoquet,
    SymmetricQuasiChoquet,
    QuasiSugeno,
    Shilkret,
    /// Arithmetic mean of `--n` arguments.
    Mean,
}

#[derive(Args, Debug)]
struct FunctionArgs {
    /// Capacity JSON file.
    #[arg(long)]
    capacity: Option<PathBuf>,
    /// Transform JSON file for the quasi- integrals.
    #[arg(long)]
    phi: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum)]
    integral: IntegralKind,
    #[command(flatten)]
    function: FunctionArgs,
    /// The tuple, e.g. "[1/5,7/10]".
    #[arg(long)]
    x: String,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// The box `I`, e.g. "[-1,1]".
    #[arg(long = "box", default_value = "[0,1]")]
    bounds: String,
    /// Equispaced points per axis.
    #[arg(long, default_value_t = 5)]
    k: usize,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long = "fn", value_enum)]
    function_kind: FunctionKind,
    #[command(flatten)]
    function: FunctionArgs,
    /// Arity for `--fn mean`.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[command(flatten)]
    grid: GridArgs,
    /// Comma-separated axiom ids; defaults to every axiom applicable on the box.
    #[arg(long)]
    axioms: Option<String>,
    /// Transform JSON file for the quasi- homogeneity axioms.
    #[arg(long)]
    aux: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FitKind {
    SignedChoquet,
    Symmetric,
    QuasiChoquet,
    QuasiSugeno,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Pos,
    Neg,
}

#[derive(Args, Debug)]
struct FitArgs {
    #[arg(long, value_enum)]
    fit: FitKind,
    #[arg(long = "fn", value_enum)]
    function_kind: FunctionKind,
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[command(flatten)]
    grid: GridArgs,
    /// Side for quasi-Choquet fits; inferred from the box when omitted.
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    /// Codomain `I` for quasi-Sugeno factorization; defaults to the box.
    #[arg(long)]
    codomain: Option<String>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    n: usize,
    /// capacity, signed or ivalued.
    #[arg(long)]
    role: String,
    /// Value range, e.g. "[0,1]"; the interval of an ivalued capacity.
    #[arg(long)]
    range: Option<String>,
}

/// Outcome of a verb before rendering.
struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let rendered = render(&cli.output, outcome.json, outcome.text);
            match rendered.and_then(|text| out.write_all(text.as_bytes()).map_err(|e| Error::Parse(e.to_string()))) {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let eps = match cli.output.mode {
        Mode::Float => Some(scalar::parse(&cli.output.eps)?),
        Mode::Rational => None,
    };
    match &cli.command {
        Command::Eval(args) => eval(args),
        Command::Audit(args) => audit(args, eps),
        Command::Fit(args) => fit(args),
        Command::Gen(args) => gen(args),
        Command::Selftest => Ok(self_test()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_capacity(args: &FunctionArgs) -> Result<(SetFunction, Role)> {
    let path = args.capacity.as_deref().ok_or_else(|| Error::Parse("--capacity is required".into()))?;
    CapacityFile::from_json(&read(path)?)?.into_set_function()
}

fn load_phi(path: Option<&Path>, flag: &str) -> Result<TransformFn> {
    let path = path.ok_or_else(|| Error::Parse(format!("{flag} is required")))?;
    TransformFn::from_json(&read(path)?)
}

fn ivalued(table: SetFunction, role: Role) -> Result<IValuedCapacity> {
    let interval = match role {
        Role::IValued(interval) => interval,
        _ => Interval::new(table.value(crate::setfunc::Subset::EMPTY).clone(), table.value(table.full_set()).clone())?,
    };
    IValuedCapacity::new(table, interval)
}

fn build_integral(kind: IntegralKind, args: &FunctionArgs) -> Result<Integral> {
    let (table, role) = load_capacity(args)?;
    let phi = || load_phi(args.phi.as_deref(), "--phi");
    Ok(match kind {
        IntegralKind::Choquet => Integral::Choquet(table),
        IntegralKind::Symmetric => Integral::Symmetric(table),
        IntegralKind::Sugeno => Integral::Sugeno(ivalued(table, role)?),
        IntegralKind::QuasiChoquet => Integral::QuasiChoquet(table, phi()?),
        IntegralKind::SymmetricQuasiChoquet => Integral::SymmetricQuasiChoquet(table, phi()?),
        IntegralKind::QuasiSugeno => Integral::QuasiSugeno(ivalued(table, role)?, phi()?),
        IntegralKind::Shilkret => Integral::Shilkret(table),
    })
}

fn build_function(kind: FunctionKind, args: &FunctionArgs, n: usize) -> Result<(String, Box<dyn BlackBox>)> {
    let integral = match kind {
        FunctionKind::Mean => {
            if n == 0 {
                return Err(Error::ZeroDimension);
            }
            return Ok(("mean".into(), Box::new(arithmetic_mean(n))));
        }
        FunctionKind::Choquet => IntegralKind::Choquet,
        FunctionKind::Symmetric => IntegralKind::Symmetric,
        FunctionKind::Sugeno => IntegralKind::Sugeno,
        FunctionKind::QuasiChoquet => IntegralKind::QuasiChoquet,
        FunctionKind::SymmetricQuasiChoquet => IntegralKind::SymmetricQuasiChoquet,
        FunctionKind::QuasiSugeno => IntegralKind::QuasiSugeno,
        FunctionKind::Shilkret => IntegralKind::Shilkret,
    };
    let f = build_integral(integral, args)?;
    Ok((f.name().to_string(), Box::new(f)))
}

fn grid_spec(args: &GridArgs) -> Result<GridSpec> {
    Ok(GridSpec::new(Interval::parse(&args.bounds)?, args.k))
}

fn eval(args: &EvalArgs) -> Result<Outcome> {
    let f = build_integral(args.integral, &args.function)?;
    let x = Tuple::new(scalar::parse_list(&args.x)?);
    let value = f.eval(&x)?;
    Ok(Outcome {
        json: json!({ "integral": f.name(), "x": x, "value": value.to_string() }),
        text: format!("{value}\n"),
        code: 0,
    })
}

fn audit(args: &AuditArgs, eps: Option<Scalar>) -> Result<Outcome> {
    let (name, f) = build_function(args.function_kind, &args.function, args.n)?;
    let spec = grid_spec(&args.grid)?;
    let aux = args.aux.as_deref().map(|p| load_phi(Some(p), "--aux")).transpose()?;
    let axioms = match &args.axioms {
        Some(csv) => Axiom::parse_list(csv)?,
        None => Axiom::battery(&spec.bounds, aux.is_some()),
    };
    let mut auditor = Auditor::new(f.as_ref(), &spec)?;
    if let Some(eps) = eps {
        auditor = auditor.with_tolerance(eps);
    }
    let audit = auditor.audit(&axioms, aux.as_ref())?;
    let all_pass = audit.reports.iter().all(|r| r.verdict == Verdict::Pass);
    let json = json!({
        "function": name,
        "box": spec.bounds,
        "k": spec.points_per_axis,
        "grid_points": auditor.grid().len(),
        "reports": audit.reports,
        "facts": audit.facts,
        "classifications": audit.classifications,
        "summary": audit.summary(),
    });
    Ok(Outcome { json, text: audit_text(&name, &spec, &audit), code: if all_pass { 0 } else { 1 } })
}

fn audit_text(name: &str, spec: &GridSpec, audit: &Audit) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "audit of {name} on {} (k = {})", spec.bounds, spec.points_per_axis);
    let width = audit.reports.iter().map(|r| r.axiom.id().len()).max().unwrap_or(0);
    for report in &audit.reports {
        let verdict = if report.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(
            text,
            "  {:width$}  {verdict}  tested={} skipped={}",
            report.axiom.id(),
            report.tested,
            report.skipped
        );
        if let Some(witness) = &report.witness {
            let operands = serde_json::to_string(&witness.operands).unwrap_or_default();
            let _ = writeln!(text, "  {:width$}  witness {operands}: lhs = {}, rhs = {}", "", witness.lhs, witness.rhs);
        }
    }
    for line in audit.summary() {
        let _ = writeln!(text, "{line}");
    }
    text
}

fn refusal_outcome(kind: &str, refusal: &Refusal) -> Outcome {
    let mut text = format!("{kind}: refused ({}): {}\n", refusal.condition, refusal.detail);
    if let Some(w) = &refusal.witness {
        let operands = serde_json::to_string(&w.operands).unwrap_or_default();
        let _ = writeln!(text, "  witness {operands}: lhs = {}, rhs = {}", w.lhs, w.rhs);
    }
    Outcome { json: json!({ "fit": kind, "outcome": "refused", "refusal": refusal }), text, code: 1 }
}

fn fitted_outcome(kind: &str, representation: Value, text: String) -> Outcome {
    Outcome { json: json!({ "fit": kind, "outcome": "fitted", "representation": representation }), text, code: 0 }
}

fn capacity_value(v: &SetFunction) -> Value {
    serde_json::to_value(CapacityFile::from_set_function(v, &Role::Signed)).expect("capacity serializes")
}

fn capacity_text(v: &SetFunction) -> String {
    let mut text = String::new();
    for set in crate::setfunc::Subset::all(v.n()) {
        let _ = writeln!(text, "  v({set}) = {}", v.value(set));
    }
    text
}

fn fit(args: &FitArgs) -> Result<Outcome> {
    let (_, f) = build_function(args.function_kind, &args.function, args.n)?;
    let spec = grid_spec(&args.grid)?;
    let kind = args.fit.to_possible_value().expect("named").get_name().to_string();
    match args.fit {
        FitKind::SignedChoquet | FitKind::Symmetric => {
            let fit = if args.fit == FitKind::SignedChoquet {
                fit_signed_choquet(f.as_ref(), &spec)?
            } else {
                fit_symmetric_choquet(f.as_ref(), &spec)?
            };
            Ok(match fit {
                Fit::Fitted(v) => fitted_outcome(
                    &kind,
                    json!({ "capacity": capacity_value(&v) }),
                    format!("{kind}: fitted\n{}", capacity_text(&v)),
                ),
                Fit::Refused(r) => refusal_outcome(&kind, &r),
            })
        }
        FitKind::QuasiChoquet => {
            let side = match args.side {
                Some(SideArg::Pos) => Side::Positive,
                Some(SideArg::Neg) => Side::Negative,
                None if spec.bounds.hi() <= &scalar::zero() => Side::Negative,
                None => Side::Positive,
            };
            Ok(match fit_quasi_choquet(f.as_ref(), &spec, side)? {
                Fit::Fitted(q) => {
                    let representation = json!({
                        "side": side,
                        "anchor": q.anchor,
                        "capacity": capacity_value(&q.capacity),
                        "phi": q.transform.to_file(),
                    });
                    let mut text = format!("{kind}: fitted (anchor {})\n{}", q.anchor, capacity_text(&q.capacity));
                    for t in spec.axis()? {
                        let _ = writeln!(text, "  φ({t}) = {}", q.transform.eval(&t)?);
                    }
                    fitted_outcome(&kind, representation, text)
                }
                Fit::Refused(r) => refusal_outcome(&kind, &r),
            })
        }
        FitKind::QuasiSugeno => {
            let codomain = match &args.codomain {
                Some(text) => Interval::parse(text)?,
                None => spec.bounds.clone(),
            };
            Ok(match factorize_quasi_sugeno(f.as_ref(), &spec, &codomain)? {
                Fit::Fitted(form) => {
                    let mut text = format!("{kind}: fitted\n");
                    for set in crate::setfunc::Subset::all(form.n()) {
                        let _ = writeln!(text, "  μ({set}) = {}", form.mu(set));
                    }
                    for t in form.axis() {
                        let _ = writeln!(text, "  φ({t}) = {}", form.phi(t)?);
                    }
                    fitted_outcome(&kind, serde_json::to_value(&form)?, text)
                }
                Fit::Refused(r) => refusal_outcome(&kind, &r),
            })
        }
    }
}

fn gen(args: &GenArgs) -> Result<Outcome> {
    let range = args.range.as_deref().map(Interval::parse).transpose()?;
    let role = role_by_name(&args.role, range.as_ref())?;
    let table = random_set_function(&mut rng(args.seed), args.n, &role, range.as_ref())?;
    let file = CapacityFile::from_set_function(&table, &role);
    let text = format!("{}\n", file.to_json());
    Ok(Outcome { json: serde_json::to_value(&file)?, text, code: 0 })
}

fn self_test() -> Outcome {
    let report = selftest::run_all();
    let mut text = String::new();
    for c in &report.criteria {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        let _ = writeln!(text, "[{verdict}] {:>2} {} ({} checks): {}", c.id, c.name, c.checks, c.detail);
    }
    let _ = writeln!(text, "{}", if report.passed { "all criteria pass" } else { "some criteria FAIL" });
    let code = if report.passed { 0 } else { 1 };
    Outcome { json: serde_json::to_value(&report).expect("report serializes"), text, code }
}

fn render(options: &OutputOptions, json: Value, text: String) -> Result<String> {
    match (options.format, options.mode) {
        (Format::Json, Mode::Rational) => Ok(format!("{}\n", serde_json::to_string_pretty(&json)?)),
        (Format::Json, Mode::Float) => {
            let mut body = json;
            to_floats(&mut body);
            let labeled = json!({ "mode": "float", "eps": options.eps, "report": body });
            Ok(format!("{}\n", serde_json::to_string_pretty(&labeled)?))
        }
        (Format::Text, Mode::Rational) => Ok(text),
        (Format::Text, Mode::Float) => Ok(format!("# mode: float (eps = {})\n{}", options.eps, floats_in_text(&text))),
    }
}

fn is_rational_literal(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (num, den) = body.split_once('/').unwrap_or((body, "1"));
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    digits(num) && digits(den)
}

fn float_of(s: &str) -> Option<f64> {
    if !is_rational_literal(s) {
        return None;
    }
    scalar::parse(s).ok().map(|x| scalar::to_f64(&x))
}

/// Replaces every rational string in a report by its nearest `f64`.
fn to_floats(value: &mut Value) {
    match value {
        Value::String(s) => {
            if let Some(f) = float_of(s) {
                *value = json!(f);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(to_floats),
        Value::Object(map) => map.values_mut().for_each(to_floats),
        _ => {}
    }
}

fn floats_in_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut token = String::new();
    let flush = |token: &mut String, out: &mut String| {
        match float_of(token) {
            Some(f) if token.contains('/') => {
                let _ = write!(out, "{f}");
            }
            _ => out.push_str(token),
        }
        token.clear();
    };
    for c in text.chars() {
        if c.is_ascii_digit() || c == '/' || (c == '-' && token.is_empty()) {
            token.push(c);
        } else {
            flush(&mut token, &mut out);
            out.push(c);
        }
    }
    flush(&mut token, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("comodular").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["eval", "--integral", "nope", "--x", "[1]"]).0, 2);
        let (code, _, err) = run_args(&["eval", "--integral", "choquet", "--capacity", "/nonexistent", "--x", "[1]"]);
        assert_eq!(code, 2);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("selftest"));
    }

    #[test]
    fn rational_literals() {
        assert!(is_rational_literal("-3/10"));
        assert!(is_rational_literal("7"));
        assert!(!is_rational_literal("comono_modular"));
        assert!(!is_rational_literal("1e5"));
        assert_eq!(floats_in_text("v = 3/4, tested=12"), "v = 0.75, tested=12");
    }

    #[test]
    fn gen_is_deterministic() {
        let a = run_args(&["gen", "--seed", "1", "--n", "2", "--role", "signed"]);
        let b = run_args(&["gen", "--seed", "1", "--n", "2", "--role", "signed"]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
        let bad = run_args(&["gen", "--seed", "1", "--n", "2", "--role", "weird"]);
        assert_eq!(bad.0, 2);
    }

    #[test]
    fn audit_mean() {
        let (code, out, _) = run_args(&[
            "audit",
            "--fn",
            "mean",
            "--box",
            "[0,1]",
            "--k",
            "3",
            "--axioms",
            "comono_modular,comono_maxitive",
        ]);
        assert_eq!(code, 1);
        assert!(out.contains("comono_maxitive  FAIL"));
        let (code, out, _) = run_args(&[
            "audit",
            "--fn",
            "mean",
            "--box",
            "[0,1]",
            "--k",
            "3",
            "--axioms",
            "comono_modular",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let json: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(json["reports"][0]["verdict"], "pass");
    }

    #[test]
    fn float_mode_labels_itself() {
        let (code, out, _) = run_args(&[
            "audit",
            "--fn",
            "mean",
            "--k",
            "3",
            "--axioms",
            "comono_maxitive",
            "--format",
            "json",
            "--mode",
            "float",
        ]);
        assert_eq!(code, 1);
        let json: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(json["mode"], "float");
        assert_eq!(json["report"]["reports"][0]["witness"]["lhs"], json!(0.75));
        let (_, text, _) =
            run_args(&["audit", "--fn", "mean", "--k", "3", "--axioms", "idempotent", "--mode", "float"]);
        assert!(text.starts_with("# mode: float"));
    }
}
