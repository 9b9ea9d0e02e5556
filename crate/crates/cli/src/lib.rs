//! Command-line front end: argument parsing, JSON and plain-text reports, and the verification
//! suite. [`run`] is the whole program minus process exit, so it can be driven from tests.

pub mod sampling;
pub mod suite;

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jackpfq_core::jack::{binom_general, jack_in_form, pieri_phi, set_binom_fault, to_jack_basis, JackForm};
use jackpfq_core::partitions::hooks;
use jackpfq_core::series::{build_2f1hat, build_pfq, build_pfq_diag};
use jackpfq_core::solver::{
    residual_hat, residual_theorem_a, residual_theorem_b, residual_theorem_c, solve_hat, solve_theorem_a,
    solve_theorem_b, solve_theorem_c, HatSolver, Mode, Variant,
};
use jackpfq_core::{Error, OpExpr, ParamSet, Partition, Rational, Residual, SymPoly};
use serde_json::{json, Value};

use crate::sampling::Sampler;
use crate::suite::{describe, run_suite, Level};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "jackpfq", version, about = "Exact Jack polynomials and Jack hypergeometric series")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jack polynomials.
    #[command(subcommand)]
    Jack(JackCmd),
    /// Generalized binomial coefficient binom(lambda, mu).
    Binom(BinomArgs),
    /// Apply an operator expression.
    #[command(subcommand)]
    Op(OpCmd),
    /// Hypergeometric series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Run a coefficient solver and compare it with the defining formula.
    Solve(SolveArgs),
    /// Check that a built series satisfies its differential equation.
    Verify(VerifyArgs),
    /// Run the verification matrix.
    Suite(SuiteArgs),
}

#[derive(Subcommand, Debug)]
pub enum JackCmd {
    /// Expand a Jack polynomial in the monomial basis.
    Expand {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Rational,
        #[arg(long, default_value = "J")]
        form: JackForm,
    },
}

#[derive(Args, Debug)]
pub struct BinomArgs {
    #[arg(long)]
    pub lambda: Partition,
    #[arg(long)]
    pub mu: Partition,
    #[arg(long)]
    pub alpha: Rational,
    /// Variable count for the Pieri coefficient (defaults to the length of lambda).
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum OpCmd {
    /// Apply an operator to a Jack polynomial or a monomial orbit.
    Apply {
        /// For example `ad(-box,E1)^2`, `[box,e1]`, `E2 + 1/2*box`.
        #[arg(long)]
        op: String,
        #[arg(long, conflicts_with = "to_m", required_unless_present = "to_m")]
        to_jack: Option<Partition>,
        #[arg(long)]
        to_m: Option<Partition>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Rational,
        #[arg(long, default_value = "J")]
        form: JackForm,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Number of upper parameters (must match --a when both are given).
    #[arg(long)]
    pub p: Option<usize>,
    /// Number of lower parameters (must match --b when both are given).
    #[arg(long)]
    pub q: Option<usize>,
    /// Upper parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Option<Vec<Rational>>,
    /// Lower parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Option<Vec<Rational>>,
    #[arg(long)]
    pub alpha: Option<Rational>,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub maxdeg: u32,
    /// Seed for parameters that are not given explicitly.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum SeriesCmd {
    /// Build the coefficients of a series.
    Build {
        #[command(flatten)]
        params: ParamArgs,
        /// Diagonal series in two alphabets.
        #[arg(long)]
        two_alphabet: bool,
        /// Include the monomial-basis expansion.
        #[arg(long)]
        expand: bool,
        /// The two-parameter series with coefficients (a)(b)/(c)_k; needs p = 2, q = 1.
        #[arg(long)]
        hat: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    #[value(name = "A")]
    A,
    #[value(name = "Aprime")]
    Aprime,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "Bhat")]
    Bhat,
    #[value(name = "Chat")]
    Chat,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub theorem: Theorem,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub theorem: Theorem,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Independent parameter draws (ignored when every parameter is given).
    #[arg(long, default_value_t = 3)]
    pub draws: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    Binom,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[arg(value_enum)]
    pub level: Level,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Deliberately corrupt a table to confirm that failures are reported.
    #[arg(long, value_enum)]
    pub inject_fault: Option<Fault>,
}

/// Process result: exit code plus what goes to stdout and stderr.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_FAILED: i32 = 2;

struct Report {
    json: Value,
    human: String,
    passed: bool,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let started = Instant::now();
    let label = command_label(&cli.command);
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let body = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).expect("report serializes")),
        Format::Human => report.human,
    };
    let mut stderr = format!("{label}: {:.2} s\n", started.elapsed().as_secs_f64());
    let code = if report.passed { EXIT_OK } else { EXIT_FAILED };
    let stdout = match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: writing {}: {e}\n", path.display()) };
            }
            String::new()
        }
        None => body,
    };
    if !report.passed {
        stderr.push_str("verification failed\n");
    }
    Outcome { code, stdout, stderr }
}

fn command_label(c: &Command) -> &'static str {
    match c {
        Command::Jack(_) => "jack",
        Command::Binom(_) => "binom",
        Command::Op(_) => "op",
        Command::Series(_) => "series",
        Command::Solve(_) => "solve",
        Command::Verify(_) => "verify",
        Command::Suite(_) => "suite",
    }
}

fn execute(cmd: &Command) -> jackpfq_core::Result<Report> {
    match cmd {
        Command::Jack(JackCmd::Expand { lambda, n, alpha, form }) => jack_expand(lambda, *n, alpha, *form),
        Command::Binom(a) => binom(a),
        Command::Op(OpCmd::Apply { op, to_jack, to_m, n, alpha, form }) => op_apply(op, to_jack.as_ref(), to_m.as_ref(), *n, alpha, *form),
        Command::Series(SeriesCmd::Build { params, two_alphabet, expand, hat }) => series_build(params, *two_alphabet, *expand, *hat),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Suite(a) => Ok(suite(a)),
    }
}

/// `2·m_(2) + 2·m_(1,1)`
pub fn human_poly(f: &SymPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = f.terms().iter().map(|(l, c)| format!("{c}·m_{l}")).collect();
    terms.join(" + ").replace("+ -", "- ")
}

fn coeff_json(map: &BTreeMap<Partition, Rational>) -> Value {
    Value::Array(map.iter().map(|(l, c)| json!({"part": l, "coef": c})).collect())
}

fn coeff_human(map: &BTreeMap<Partition, Rational>) -> String {
    map.iter().map(|(l, c)| format!("  {:<12} {c}\n", l.to_string())).collect()
}

fn jack_expand(lambda: &Partition, n: usize, alpha: &Rational, form: JackForm) -> jackpfq_core::Result<Report> {
    let f = jack_in_form(lambda, n, alpha, form)?;
    let json = json!({
        "schema": 1,
        "command": "jack expand",
        "config": {"lambda": lambda, "n": n, "alpha": alpha, "form": form},
        "poly": f,
    });
    let human = format!("{form}_{lambda} = {}\n", human_poly(&f));
    Ok(Report { json, human, passed: true })
}

fn binom(a: &BinomArgs) -> jackpfq_core::Result<Report> {
    let value = binom_general(&a.lambda, &a.mu, &a.alpha)?;
    let n = a.n.unwrap_or(a.lambda.len().max(1));
    let pieri = if a.lambda.added_row(&a.mu).is_some() && a.lambda.len() <= n {
        Some(pieri_phi(&a.lambda, &a.mu, &a.alpha, n)?)
    } else {
        None
    };
    let json = json!({
        "schema": 1,
        "command": "binom",
        "config": {"lambda": a.lambda, "mu": a.mu, "alpha": a.alpha, "n": n},
        "binom": value,
        "pieri": pieri,
        "hook_product": {"lambda": hooks(&a.lambda, &a.alpha).j, "mu": hooks(&a.mu, &a.alpha).j},
    });
    let mut human = format!("binom({}, {}) = {value}\n", a.lambda, a.mu);
    if let Some(p) = &pieri {
        human.push_str(&format!("pieri({}/{}) = {p}\n", a.lambda, a.mu));
    }
    Ok(Report { json, human, passed: true })
}

fn op_apply(
    op: &str,
    to_jack: Option<&Partition>,
    to_m: Option<&Partition>,
    n: usize,
    alpha: &Rational,
    form: JackForm,
) -> jackpfq_core::Result<Report> {
    let expr = OpExpr::parse(op)?;
    if !alpha.is_positive() {
        return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
    }
    let (input, input_desc) = match (to_jack, to_m) {
        (Some(l), _) => (jack_in_form(l, n, alpha, form)?, json!({"jack": l, "form": form})),
        (None, Some(l)) => (jackpfq_core::sympoly::basis_m(l, n)?, json!({"m": l})),
        (None, None) => return Err(Error::InvalidInput("give --to-jack or --to-m".into())),
    };
    let image = expr.apply(&input, alpha)?;
    let jack = to_jack_basis(&image, alpha, form)?;
    let json = json!({
        "schema": 1,
        "command": "op apply",
        "config": {"op": op, "parsed": expr.to_string(), "input": input_desc, "n": n, "alpha": alpha},
        "degree_shift": expr.degree_shift(),
        "image": {"form": form, "jack": coeff_json(&jack), "m_basis": image},
    });
    let human = format!("{expr} applied:\n  m-basis: {}\n  {form}-basis:\n{}", human_poly(&image), coeff_human(&jack));
    Ok(Report { json, human, passed: true })
}

/// Resolves explicit parameters, drawing the missing ones from the seed.
fn resolve_params(args: &ParamArgs, default_pq: Option<(usize, usize)>, s: &mut Sampler) -> jackpfq_core::Result<ParamSet> {
    let p = match (&args.a, args.p) {
        (Some(a), Some(p)) if a.len() != p => return Err(Error::InvalidInput(format!("--p {p} but --a has {} entries", a.len()))),
        (Some(a), _) => a.len(),
        (None, Some(p)) => p,
        (None, None) => default_pq.map_or(0, |d| d.0),
    };
    let q = match (&args.b, args.q) {
        (Some(b), Some(q)) if b.len() != q => return Err(Error::InvalidInput(format!("--q {q} but --b has {} entries", b.len()))),
        (Some(b), _) => b.len(),
        (None, Some(q)) => q,
        (None, None) => default_pq.map_or(0, |d| d.1),
    };
    if let Some((dp, dq)) = default_pq {
        if (p, q) != (dp, dq) {
            return Err(Error::InvalidInput(format!("this series needs p = {dp}, q = {dq}, got p = {p}, q = {q}")));
        }
    }
    let alpha = args.alpha.clone().unwrap_or_else(|| s.alpha());
    let upper = args.a.clone().unwrap_or_else(|| (0..p).map(|_| s.param()).collect());
    let lower = args.b.clone().unwrap_or_else(|| (0..q).map(|_| s.param()).collect());
    ParamSet::new(alpha, upper, lower, args.n)
}

fn all_given(args: &ParamArgs) -> bool {
    args.alpha.is_some() && (args.a.is_some() || args.p == Some(0)) && (args.b.is_some() || args.q == Some(0))
}

fn params_json(args: &ParamArgs) -> Value {
    json!({
        "p": args.p, "q": args.q, "a": args.a, "b": args.b, "alpha": args.alpha,
        "n": args.n, "maxdeg": args.maxdeg, "seed": args.seed,
    })
}

fn series_build(args: &ParamArgs, two: bool, expand: bool, hat: bool) -> jackpfq_core::Result<Report> {
    let mut s = Sampler::new(args.seed);
    let params = resolve_params(args, hat.then_some((2, 1)), &mut s)?;
    let config = json!({"params": params_json(args), "two_alphabet": two, "expand": expand, "hat": hat});
    let (json, human) = if two {
        if hat {
            return Err(Error::InvalidInput("--hat is a one-alphabet series".into()));
        }
        let series = build_pfq_diag(&params, args.maxdeg)?;
        let mut j = json!({"schema": 1, "command": "series build", "config": config, "series": series});
        if expand {
            let bi = series.to_bipoly()?;
            let terms: Vec<Value> = bi.terms().iter().map(|((x, y), c)| json!({"x": x, "y": y, "coef": c})).collect();
            j["expansion"] = Value::Array(terms);
        }
        (j, format!("{}\n{}", describe(&params), coeff_human(&series.coeffs)))
    } else {
        let series = if hat {
            build_2f1hat(params.upper[0].clone(), params.upper[1].clone(), params.lower[0].clone(), params.n, params.alpha.clone(), args.maxdeg)?
        } else {
            build_pfq(&params, args.maxdeg)?
        };
        let mut j = json!({"schema": 1, "command": "series build", "config": config, "series": series});
        let mut h = format!("{}\n{}", describe(&params), coeff_human(&series.coeffs));
        if expand {
            let f = series.to_sympoly(params.n)?;
            h.push_str(&format!("expansion: {}\n", human_poly(&f)));
            j["expansion"] = serde_json::to_value(&f).expect("poly serializes");
        }
        (j, h)
    };
    Ok(Report { json, human, passed: true })
}

fn solve(args: &SolveArgs) -> jackpfq_core::Result<Report> {
    let mut s = Sampler::new(args.params.seed);
    let hat = matches!(args.theorem, Theorem::Bhat | Theorem::Chat);
    let params = resolve_params(&args.params, hat.then_some((2, 1)), &mut s)?;
    let d = args.params.maxdeg;
    let mut extra = Value::Null;
    let (coeffs, oracle) = match args.theorem {
        Theorem::A | Theorem::Aprime => (solve_theorem_a(&params, d)?.coeffs, build_pfq(&params, d)?.coeffs),
        Theorem::B => {
            let sol = solve_theorem_b(&params, d)?;
            extra = serde_json::to_value(&sol.steps).expect("steps serialize");
            (sol.series.coeffs, build_pfq(&params, d)?.coeffs)
        }
        Theorem::C => (solve_theorem_c(&params, d)?.coeffs, build_pfq(&params, d)?.coeffs),
        Theorem::Bhat | Theorem::Chat => {
            let kind = if args.theorem == Theorem::Bhat { HatSolver::Bhat } else { HatSolver::Chat };
            let oracle = build_2f1hat(params.upper[0].clone(), params.upper[1].clone(), params.lower[0].clone(), params.n, params.alpha.clone(), d)?;
            (solve_hat(kind, &params, d)?.coeffs, oracle.coeffs)
        }
    };
    let matches = coeffs == oracle;
    let json = json!({
        "schema": 1,
        "command": "solve",
        "config": {"theorem": format!("{:?}", args.theorem), "params": params_json(&args.params)},
        "resolved": params,
        "coefficients": coeff_json(&coeffs),
        "matches_defining_formula": matches,
        "steps": extra,
    });
    let human = format!("{}\n{}matches defining formula: {matches}\n", describe(&params), coeff_human(&coeffs));
    Ok(Report { json, human, passed: matches })
}

fn residual_json(name: String, r: &Residual) -> Value {
    json!({
        "equation": name,
        "slices_checked": r.slices.len(),
        "complete": r.complete_count(),
        "max_residual": r.max_abs(),
        "passed": r.all_complete_zero(),
    })
}

fn verify(args: &VerifyArgs) -> jackpfq_core::Result<Report> {
    let hat = matches!(args.theorem, Theorem::Bhat | Theorem::Chat);
    let draws = if all_given(&args.params) { 1 } else { args.draws.max(1) };
    let d = args.params.maxdeg;
    let mut out = Vec::new();
    let mut human = String::new();
    let mut passed = true;
    for draw in 0..draws {
        let mut s = Sampler::derived(args.params.seed, &format!("verify/{draw}"));
        let (params, residuals) = s.retry(|s| {
            let params = resolve_params(&args.params, hat.then_some((2, 1)), s)?;
            let mut res = Vec::new();
            match args.theorem {
                Theorem::A | Theorem::Aprime => {
                    let v = if args.theorem == Theorem::A { Variant::Standard } else { Variant::Mirrored };
                    res.push((format!("{v:?}"), residual_theorem_a(&build_pfq_diag(&params, d)?, v)?));
                }
                Theorem::B => {
                    let series = build_pfq(&params, d)?;
                    for m in 1..=params.n {
                        res.push((format!("m={m}"), residual_theorem_b(&series, m, Mode::Differential)?));
                    }
                }
                Theorem::C => {
                    let series = build_pfq(&params, d)?;
                    for mode in [Mode::Differential, Mode::Transport] {
                        res.push((format!("{mode:?}"), residual_theorem_c(&series, mode)?));
                    }
                }
                Theorem::Bhat | Theorem::Chat => {
                    let series = build_2f1hat(params.upper[0].clone(), params.upper[1].clone(), params.lower[0].clone(), params.n, params.alpha.clone(), d)?;
                    if args.theorem == Theorem::Bhat {
                        for m in 1..=params.n {
                            res.push((format!("m={m}"), residual_hat(HatSolver::Bhat, &series, m)?));
                        }
                    } else {
                        res.push(("Chat".into(), residual_hat(HatSolver::Chat, &series, params.n)?));
                    }
                }
            }
            Ok((params, res))
        })?;
        let ok = residuals.iter().all(|(_, r)| r.all_complete_zero());
        passed &= ok;
        human.push_str(&format!("draw {draw}: {} -> {}\n", describe(&params), if ok { "ok" } else { "FAILED" }));
        for (name, r) in &residuals {
            human.push_str(&format!("  {name}: {} complete slices, max residual {}\n", r.complete_count(), r.max_abs()));
        }
        out.push(json!({
            "draw": draw,
            "params": params,
            "residuals": residuals.into_iter().map(|(name, r)| residual_json(name, &r)).collect::<Vec<_>>(),
            "passed": ok,
        }));
    }
    let json = json!({
        "schema": 1,
        "command": "verify",
        "config": {"theorem": format!("{:?}", args.theorem), "params": params_json(&args.params), "draws": draws},
        "draws": out,
        "passed": passed,
    });
    Ok(Report { json, human, passed })
}

fn suite(args: &SuiteArgs) -> Report {
    let fault = args.inject_fault.map(|f| format!("{f:?}").to_lowercase());
    set_binom_fault(args.inject_fault == Some(Fault::Binom));
    let report = run_suite(args.level, args.seed, fault);
    set_binom_fault(false);
    let mut human = String::new();
    for c in &report.checks {
        human.push_str(&format!("{} {:<40} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail));
    }
    human.push_str(&format!("{} checks, {} failed\n", report.total, report.failed));
    if let Some(f) = &report.first_failure {
        human.push_str(&format!("first failure: {} ({})\n", f.id, f.detail));
    }
    let passed = report.failed == 0;
    Report { json: serde_json::to_value(&report).expect("report serializes"), human, passed }
}
