use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mtv_core::exactnum::{format_rational, parse_rational, sym_eval, EvalEnv};
use mtv_core::genfun::{build_fv, closed_form_t, exact_value};
use mtv_core::hyp::{self, GFamily, HypParams};
use mtv_core::oracle::{t_num, SumPlan};
use mtv_core::singular::{self, IdentityFixture, NumericOptions};
use mtv_core::special;
use mtv_core::{BigReal, ConstSymbol, MtvError, Rational, SymbolicValue, TWord};

const SCHEMA: &str = "mtv-lab/1";

#[derive(Parser)]
#[command(
    name = "mtv-lab",
    version,
    about = "Regularised alternating multiple t values: exact forms, numerics and checks"
)]
struct Cli {
    #[command(flatten)]
    cfg: Config,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Working precision in bits.
    #[arg(long, short = 'p', global = true, env = "MTV_PRECISION_BITS", default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(64..))]
    precision: u32,
    /// Target absolute error for numerical sums.
    #[arg(long, global = true, default_value_t = 1e-20, value_parser = positive_f64)]
    tolerance: f64,
    /// Truncation point for direct summation.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(10..))]
    truncation: u64,
    #[arg(long, short = 'f', global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Iterated integrals along [0,1].
    Integral,
    /// Truncated nested sums with averaging of alternating tails.
    Direct,
}

#[derive(Subcommand)]
enum Command {
    /// Exact value of t^{*,V}({-1}^a,1,{-1}^b), or of WORD when given.
    Eval {
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// "symbolic", or a rational multiple of log2 such as "1/2*log2".
        #[arg(long, default_value = "symbolic")]
        v: String,
        /// Also print the numerical value.
        #[arg(long)]
        numeric: bool,
        /// Comma separated entries, negative for barred ("-1,2"); put `--` before it.
        word: Option<String>,
    },
    /// Numerical value of an admissible word.
    Oracle {
        /// Comma separated entries, negative for barred; put `--` before it.
        word: String,
        #[arg(long, value_enum, default_value_t = Method::Integral)]
        method: Method,
    },
    /// Coefficients c[a][b] of the generating series F^V(x,y) up to total degree N.
    Series {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "symbolic")]
        v: String,
    },
    /// Hypergeometric checks.
    Hyp {
        #[command(subcommand)]
        cmd: HypCommand,
    },
    /// Singular regularisation parameters.
    Singular {
        #[command(subcommand)]
        cmd: SingularCommand,
    },
    /// Verify a stored identity (JSON fixture).
    Verify { file: PathBuf },
    /// Constants of the alphabet at the working precision.
    Constants {
        /// Largest index for ζ(n) and β(n).
        #[arg(long, default_value_t = 6)]
        max_index: u32,
    },
}

#[derive(Subcommand)]
enum HypCommand {
    /// 3F2(a,b,c; d,e; u).
    F32 {
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        upper: Vec<String>,
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        lower: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// The constant L of a zero-balanced 3F2.
    L {
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        upper: Vec<String>,
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        lower: Vec<String>,
    },
    /// Γ-prefactor·3F2(u) + log(1−u) − L for one of the two G families, at u = 1 − 2^-j.
    Gap {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 10)]
        j: u32,
    },
    /// d/dZ 3F2(X,1−X,Z; 1−Y,1+Y; 1) at Z = 0: closed form against the series.
    Li {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Odd,
    Even,
}

#[derive(Subcommand)]
enum SingularCommand {
    /// λ_1, …, λ_N.
    Table {
        #[arg(long, default_value_t = 11)]
        n_max: usize,
    },
    /// λ, reduction coefficients and residual in one weight.
    Solve {
        #[arg(long)]
        weight: usize,
    },
    /// Sign, monotonicity and bound properties of the λ sequence.
    Scan {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Verify a stored identity (JSON fixture).
    Verify {
        #[arg(long)]
        identity: PathBuf,
    },
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<MtvError> for Failure {
    fn from(e: MtvError) -> Self {
        match e {
            MtvError::Parse(_) | MtvError::Fixture(_) => Failure::Usage(e.to_string()),
            MtvError::Inadmissible(w) => Failure::Usage(format!(
                "word {w} is not admissible; use `eval -- {w}` for its stuffle-regularised value"
            )),
            e => Failure::Compute(e.to_string()),
        }
    }
}

/// A command's result: JSON body, plain rendering and whether all checks passed.
struct Report {
    json: Value,
    text: String,
    latex: Option<String>,
    ok: bool,
}

impl Report {
    fn new(command: &str, mut body: Value, text: String) -> Self {
        let obj = body.as_object_mut().expect("report bodies are objects");
        obj.insert("schema".into(), SCHEMA.into());
        obj.insert("command".into(), command.into());
        Report {
            json: body,
            text,
            latex: None,
            ok: true,
        }
    }
}

fn parse_v(v: &str) -> Result<Option<Rational>, Failure> {
    if v == "symbolic" {
        return Ok(None);
    }
    Ok(Some(singular::parse_log2_multiple(v)?))
}

fn v_value(v: &Option<Rational>) -> SymbolicValue {
    match v {
        None => SymbolicValue::v(),
        Some(l) => SymbolicValue::log2().scale(l),
    }
}

fn parse_word(s: &str) -> Result<TWord, Failure> {
    Ok(s.parse()?)
}

/// A rational ("3/4") or a decimal ("0.75").
fn parse_real(s: &str, prec: u32) -> Result<BigReal, Failure> {
    match parse_rational(s) {
        Ok(q) => Ok(BigReal::from_rational(&q, prec)),
        Err(_) => Ok(BigReal::parse_decimal(s, prec)?),
    }
}

fn parse_q(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn params(upper: &[String], lower: &[String]) -> Result<HypParams, Failure> {
    if upper.len() != 3 || lower.len() != 2 {
        return Err(Failure::Usage(
            "need three upper and two lower parameters".into(),
        ));
    }
    let u: Vec<Rational> = upper.iter().map(|s| parse_q(s)).collect::<Result<_, _>>()?;
    let l: Vec<Rational> = lower.iter().map(|s| parse_q(s)).collect::<Result<_, _>>()?;
    Ok(HypParams::new(
        [u[0].clone(), u[1].clone(), u[2].clone()],
        [l[0].clone(), l[1].clone()],
    )?)
}

/// Digits worth printing for a value with absolute error bound `err`.
fn digits(x: &BigReal, err: f64) -> usize {
    let from_err = if err > 0.0 {
        (-err.log10()).ceil() as usize + 1
    } else {
        usize::MAX
    };
    x.natural_digits().min(from_err.max(10))
}

fn plan(cfg: &Config, method: Method) -> SumPlan {
    match method {
        Method::Integral => SumPlan {
            tolerance: cfg.tolerance,
            truncation: cfg.truncation,
            ..SumPlan::default()
        },
        Method::Direct => SumPlan::direct(cfg.truncation, cfg.tolerance),
    }
}

fn cmd_eval(
    cfg: &Config,
    a: Option<usize>,
    b: Option<usize>,
    v: &str,
    numeric: bool,
    word: Option<&str>,
) -> Result<Report, Failure> {
    let lambda = parse_v(v)?;
    let vv = v_value(&lambda);
    let (label, value) = match (word, a, b) {
        (Some(w), None, None) => {
            let w = parse_word(w)?;
            (
                w.pretty(),
                exact_value(&w, &vv)?.substitute(ConstSymbol::V, &vv),
            )
        }
        (None, Some(a), Some(b)) => (TWord::family(a, b).pretty(), closed_form_t(a, b, &vv)),
        _ => return Err(Failure::Usage("give either --a and --b, or a word".into())),
    };
    let mut text = value.to_string();
    let mut body = json!({ "word": label, "V": v, "value": value, "text": value.to_string() });
    if numeric {
        if value.contains_symbol(ConstSymbol::V) {
            return Err(Failure::Usage(
                "--numeric needs a numeric V, e.g. --v 1/2*log2".into(),
            ));
        }
        let max_index = match value.weight() {
            mtv_core::exactnum::Weight::Homogeneous(w) => w + 2,
            _ => 32,
        };
        let x = sym_eval(&value, &EvalEnv::new(cfg.precision, max_index))?;
        let s = x.to_decimal_string(x.natural_digits() - 2);
        let _ = write!(text, "\n{s}");
        body["numeric"] = s.into();
    }
    let mut r = Report::new("eval", body, text);
    r.latex = Some(value.to_latex());
    Ok(r)
}

fn cmd_oracle(cfg: &Config, word: &str, method: Method) -> Result<Report, Failure> {
    let w = parse_word(word)?;
    let plan = plan(cfg, method);
    let r = t_num(&w, &plan, cfg.precision)?;
    let s = r.value.to_decimal_string(digits(&r.value, r.error));
    let method = match method {
        Method::Integral => "iterated-integral",
        Method::Direct => "direct",
    };
    let text = format!(
        "{} = {s}\nerror bound {:.3e}, {method}, {} terms",
        w.pretty(),
        r.error,
        r.terms
    );
    let body = json!({
        "word": w.pretty(), "value": s, "error_bound": r.error, "method": method,
        "terms": r.terms, "truncation": cfg.truncation, "tolerance": cfg.tolerance,
    });
    Ok(Report::new("oracle", body, text))
}

fn cmd_series(order: usize, v: &str) -> Result<Report, Failure> {
    let lambda = parse_v(v)?;
    let f = build_fv(order, &v_value(&lambda));
    let grid: Vec<Vec<String>> = (0..=order)
        .map(|a| (0..=order - a).map(|b| f.coeff(a, b).to_string()).collect())
        .collect();
    let mut latex = String::new();
    for (a, b, c) in f.iter() {
        if !c.is_zero() {
            let _ = writeln!(latex, "c_{{{a},{b}}} = {}", c.to_latex());
        }
    }
    let mut r = Report::new(
        "series",
        json!({ "order": order, "V": v, "coefficients": grid }),
        f.to_string(),
    );
    r.latex = Some(latex);
    Ok(r)
}

fn cmd_hyp(cfg: &Config, cmd: &HypCommand) -> Result<Report, Failure> {
    let p = cfg.precision;
    let tol = cfg.tolerance;
    match cmd {
        HypCommand::F32 { upper, lower, u } => {
            let hp = params(upper, lower)?;
            let r = hyp::f32(&hp, &parse_real(u, p)?, tol, p)?;
            let s = r.value.to_decimal_string(digits(&r.value, r.error));
            let body = json!({ "params": hp, "u": u, "value": s, "error_bound": r.error, "terms": r.terms });
            Ok(Report::new(
                "hyp f32",
                body,
                format!("{s}\nerror bound {:.3e}, {} terms", r.error, r.terms),
            ))
        }
        HypCommand::L { upper, lower } => {
            let hp = params(upper, lower)?;
            let r = hyp::evans_stanton_l(&hp, tol, p)?;
            let s = r.value.to_decimal_string(digits(&r.value, r.error));
            let body = json!({ "params": hp, "L": s, "error_bound": r.error });
            Ok(Report::new(
                "hyp l",
                body,
                format!("L = {s}\nerror bound {:.3e}", r.error),
            ))
        }
        HypCommand::Gap { family, x, y, j } => {
            let fam = match family {
                Family::Odd => GFamily::Odd,
                Family::Even => GFamily::Even,
            };
            let (x, y) = (parse_q(x)?, parse_q(y)?);
            let u = &BigReal::one(p) - &BigReal::one(p).ldexp(-(*j as i64));
            let r = hyp::asymptotic_gap(fam, &x, &y, &u, tol, p)?;
            let d = 2f64.powi(-(*j as i32));
            let scale = d * d.ln().abs();
            let g = r.value.to_f64();
            let body = json!({
                "family": fam, "x": format_rational(&x), "y": format_rational(&y), "j": j,
                "gap": format!("{g:e}"), "normalised": g / scale, "error_bound": r.error,
            });
            let text = format!(
                "gap {g:e} at u = 1 - 2^-{j}; gap / ((1-u)|log(1-u)|) = {:.6}",
                g / scale
            );
            Ok(Report::new("hyp gap", body, text))
        }
        HypCommand::Li { x, y } => {
            let (x, y) = (parse_real(x, p)?, parse_real(y, p)?);
            let closed = hyp::li_derivative(&x, &y, p)?;
            let series = hyp::li_series(&x, &y, tol, p)?;
            let diff = (&closed - &series.value).abs().to_f64();
            let ok = diff <= tol.max(series.error);
            let s = closed.to_decimal_string(digits(&closed, tol));
            let body = json!({ "closed_form": s, "series": series.value.to_decimal_string(digits(&closed, tol)),
                               "difference": format!("{diff:e}"), "agree": ok });
            let mut r = Report::new(
                "hyp li",
                body,
                format!("{s}\n|closed form - series| = {diff:e}"),
            );
            r.ok = ok;
            Ok(r)
        }
    }
}

fn cmd_singular(cfg: &Config, cmd: &SingularCommand) -> Result<Report, Failure> {
    match cmd {
        SingularCommand::Table { n_max } => {
            if *n_max == 0 {
                return Err(Failure::Usage("--n-max must be at least 1".into()));
            }
            let t = singular::lambda_table(*n_max)?;
            let strs: Vec<String> = t.iter().map(format_rational).collect();
            let text = strs
                .iter()
                .enumerate()
                .map(|(i, s)| format!("{:>3}  {s}", i + 1))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::new(
                "singular table",
                json!({ "n_max": n_max, "lambda": strs }),
                text,
            ))
        }
        SingularCommand::Solve { weight } => {
            let s = singular::singular_solution(*weight)?;
            let mut text = format!("lambda = {}\n", format_rational(&s.lambda));
            for (i, c) in s.coeffs.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "c_{i} = {}  [{}]",
                    format_rational(c),
                    TWord::family(i, weight - 1 - i).pretty()
                );
            }
            let _ = write!(text, "residual = {}", s.residual);
            let ok = s.residual.is_zero();
            let mut r = Report::new(
                "singular solve",
                serde_json::to_value(&s).expect("serialisable"),
                text,
            );
            r.ok = ok;
            Ok(r)
        }
        SingularCommand::Scan { n_max } => {
            let s = singular::scan_lambda_conjecture(*n_max)?;
            let mark = |b: bool| if b { "pass" } else { "FAIL" };
            let mut text = format!(
                "(i) signs: {}\n(ii) increasing: {}\n(iii) bounds: {}\n",
                mark(s.signs),
                mark(s.increasing),
                mark(s.bounded)
            );
            for g in s.even_gaps.iter().chain(&s.odd_gaps) {
                let limit = if g.index % 2 == 0 { "3/2" } else { "-1/2" };
                let _ = writeln!(text, "|lambda_{} - ({limit})| = {:.6e}", g.index, g.gap_f64);
            }
            for f in &s.failures {
                let _ = writeln!(text, "{f}");
            }
            let ok = s.passes();
            let mut r = Report::new(
                "singular scan",
                serde_json::to_value(&s).expect("serialisable"),
                text.trim_end().into(),
            );
            r.ok = ok;
            Ok(r)
        }
        SingularCommand::Verify { identity } => cmd_verify(cfg, identity),
    }
}

fn cmd_verify(cfg: &Config, file: &PathBuf) -> Result<Report, Failure> {
    let src = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let fx = IdentityFixture::from_json(&src)?;
    let opts = NumericOptions {
        plan: plan(cfg, Method::Integral),
        prec: cfg.precision,
        ..NumericOptions::default()
    };
    let rep = fx.verify(&opts)?;
    let verdict = if rep.holds { "PASS" } else { "FAIL" };
    let mode = match rep.mode {
        singular::VerifyMode::Exact => "exact",
        singular::VerifyMode::Numeric => "numeric",
    };
    let mut text = format!("{verdict} {} ({mode}", fx.name);
    if let Some(t) = rep.tolerance {
        let _ = write!(text, ", tolerance {t:e}");
    }
    let _ = write!(text, ")\nlhs - rhs = {}", rep.difference);
    let _ = write!(
        text,
        "\nbarred-entry counts {:?}, parity homogeneous: {}",
        rep.census.counts, rep.census.homogeneous
    );
    let ok = rep.holds;
    let mut body = serde_json::to_value(&rep).expect("serialisable");
    body["name"] = fx.name.clone().into();
    let mut r = Report::new("verify", body, text);
    r.ok = ok;
    Ok(r)
}

fn cmd_constants(cfg: &Config, max_index: u32) -> Result<Report, Failure> {
    let p = cfg.precision;
    let env = EvalEnv::new(p, max_index.max(2));
    let mut rows: Vec<(String, BigReal)> = vec![
        ("Pi".into(), BigReal::pi(p)),
        ("Log2".into(), BigReal::ln2(p)),
        ("EulerGamma".into(), special::euler_gamma(p)),
    ];
    for n in 2..=max_index {
        rows.push((format!("Zeta({n})"), env.zeta(n)?.with_prec(p)));
    }
    for n in 1..=max_index {
        rows.push((format!("Beta({n})"), env.beta(n)?.with_prec(p)));
    }
    let d = BigReal::zero(p).natural_digits() - 2;
    let strs: Vec<(String, String)> = rows
        .into_iter()
        .map(|(k, v)| (k, v.to_decimal_string(d)))
        .collect();
    let text = strs
        .iter()
        .map(|(k, v)| format!("{k:<11} {v}"))
        .collect::<Vec<_>>()
        .join("\n");
    let map: serde_json::Map<String, Value> =
        strs.into_iter().map(|(k, v)| (k, v.into())).collect();
    Ok(Report::new(
        "constants",
        json!({ "precision": p, "constants": map }),
        text,
    ))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let cfg = &cli.cfg;
    match &cli.cmd {
        Command::Eval {
            a,
            b,
            v,
            numeric,
            word,
        } => cmd_eval(cfg, *a, *b, v, *numeric, word.as_deref()),
        Command::Oracle { word, method } => cmd_oracle(cfg, word, *method),
        Command::Series { order, v } => cmd_series(*order, v),
        Command::Hyp { cmd } => cmd_hyp(cfg, cmd),
        Command::Singular { cmd } => cmd_singular(cfg, cmd),
        Command::Verify { file } => cmd_verify(cfg, file),
        Command::Constants { max_index } => cmd_constants(cfg, *max_index),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.cfg.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&r.json).expect("serialisable")
                ),
                Format::Text => println!("{}", r.text),
                Format::Latex => println!("{}", r.latex.as_deref().unwrap_or(&r.text)),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
