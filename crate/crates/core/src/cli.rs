//! Command-line front end. [`run`] does all the work and returns the exit code
//! and the text destined for stdout, so the binary stays a thin wrapper.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{check_prime, rat, rat_int, rat_to_string};
use crate::bounds::{classify_exception, evaluate, Analyzed, BoundReport, Check, Verdict};
use crate::error::{Error, Result};
use crate::fourier::GFunc;
use crate::plane::{
    bounded_line_direction, directions_determined, is_blocking_set, min_blocking_size,
    pencil_stability_check, rich_direction_search, PointSet, Side,
};
use crate::search::{self, gallery, parse_alphabet, Mode, SearchSpace, DEFAULT_CEILING};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Overrides the exhaustive-search ceiling.
pub const CEILING_ENV: &str = "FP2U_CEILING";

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "fp2u", version, about = "Support-size uncertainty bounds on F_p and F_p^2")]
struct Cli {
    /// Output format; frontier and emit-curves default to csv, the rest to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Worker threads for searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct TheoremArgs {
    /// Comma-separated theorem ids; `conjecture` without --k expands to every k.
    #[arg(long, value_delimiter = ',')]
    theorem: Vec<String>,
    #[arg(long)]
    k: Option<u32>,
    /// Rational in (0, 1), needed by as2 and as3.
    #[arg(long)]
    epsilon: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct SpaceArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    rank: u8,
    /// Comma-separated values, e.g. `-1,0,1` or `0,1,z^2`.
    #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
    alphabet: String,
    /// Also multiply every function by every character.
    #[arg(long)]
    twist: bool,
    /// Seed for random mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random samples; without it the space is enumerated.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate bounds on one function.
    Verify {
        /// Function literal `p; rank; v0,v1,...`.
        function: Option<String>,
        /// Read the literal from a file.
        #[arg(long)]
        file: Option<String>,
        /// Use a gallery family instead of a literal.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        theorems: TheoremArgs,
    },
    /// Evaluate bounds over a whole search space.
    Sweep {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        theorems: TheoremArgs,
    },
    /// Look for the first violation of one theorem.
    Hunt {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        theorems: TheoremArgs,
    },
    /// Attained support-size pairs over a search space.
    Frontier {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Point-set queries in the affine plane.
    Geometry {
        #[arg(value_enum)]
        query: GeometryQuery,
        /// Point-set literal `p; (x1,y1),(x2,y2),...`.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Structural description of an exceptional function.
    Classify {
        function: String,
    },
    /// Boundary curves of every bound, sampled on the smaller support size.
    EmitCurves {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GeometryQuery {
    BlockingMin,
    Blocking,
    Directions,
    Pencil,
    RichDirection,
    BoundedDirection,
}

/// Everything that determines a run's output.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub twist: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub theorems: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub query: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ceiling: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

fn usage_kind(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPrime(_)
            | Error::PrimeTooLarge(_)
            | Error::Parse(_)
            | Error::InvalidParameter(_)
            | Error::CeilingExceeded { .. }
            | Error::OrderMismatch(..)
            | Error::RankMismatch { .. }
            | Error::NonRational
            | Error::Precondition(_)
            | Error::ZeroFunction
    )
}

/// Parses `args` (program name first) and runs the command. The ceiling is
/// read from [`CEILING_ENV`] when `ceiling` is `None`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_ceiling(args, None)
}

pub fn run_with_ceiling<I, T>(args: I, ceiling: Option<u128>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let ceiling = match ceiling {
        Some(c) => Ok(c),
        None => match std::env::var(CEILING_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u128>()
                .map_err(|_| Error::InvalidParameter(format!("{CEILING_ENV} must be an integer, got `{v}`"))),
            Err(_) => Ok(DEFAULT_CEILING),
        },
    };
    let result = ceiling.and_then(|c| execute(&cli, c));
    match result {
        Ok((code, text)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    return Outcome {
                        code: EXIT_RUNTIME,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {path}: {e}\n"),
                    };
                }
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
        Err(e) => {
            let code = if usage_kind(&e) { EXIT_USAGE } else { EXIT_RUNTIME };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn execute(cli: &Cli, ceiling: u128) -> Result<(i32, String)> {
    match cli.jobs {
        Some(0) => Err(Error::InvalidParameter("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(|| dispatch(cli, ceiling)),
        None => dispatch(cli, ceiling),
    }
}

fn base_config(cli: &Cli, name: &str, format: Format) -> RunConfig {
    RunConfig {
        subcommand: name.into(),
        out: cli.out.clone(),
        format: match format {
            Format::Json => "json",
            Format::Csv => "csv",
        }
        .into(),
        jobs: cli.jobs,
        ..RunConfig::default()
    }
}

fn theorem_config(cfg: &mut RunConfig, t: &TheoremArgs) {
    cfg.theorems = t.theorem.clone();
    cfg.k = t.k;
    cfg.epsilon = t.epsilon.clone();
}

fn space_config(cfg: &mut RunConfig, s: &SpaceArgs, ceiling: u128) {
    cfg.p = Some(s.p);
    cfg.rank = Some(s.rank);
    cfg.alphabet = Some(s.alphabet.clone());
    cfg.twist = s.twist;
    cfg.budget = s.budget;
    if s.budget.is_some() {
        cfg.seed = Some(s.seed);
    } else {
        cfg.ceiling = Some(ceiling.to_string());
    }
}

fn dispatch(cli: &Cli, ceiling: u128) -> Result<(i32, String)> {
    match &cli.command {
        Command::Verify {
            function,
            file,
            family,
            p,
            theorems,
        } => {
            let format = cli.format.unwrap_or(Format::Json);
            let mut cfg = base_config(cli, "verify", format);
            theorem_config(&mut cfg, theorems);
            cfg.p = *p;
            let f = match (function, file, family) {
                (Some(lit), None, None) => {
                    cfg.function = Some(lit.clone());
                    GFunc::parse_literal(lit)?
                }
                (None, Some(path), None) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?;
                    cfg.function = Some(text.trim().to_string());
                    GFunc::parse_literal(text.trim())?
                }
                (None, None, Some(name)) => {
                    let p = p.ok_or_else(|| Error::InvalidParameter("--family needs --p".into()))?;
                    cfg.family = Some(name.clone());
                    gallery::by_name(name, p)?
                }
                _ => {
                    return Err(Error::InvalidParameter(
                        "give exactly one of a function literal, --file or --family".into(),
                    ))
                }
            };
            cmd_verify(&cfg, &f, theorems, format)
        }
        Command::Sweep { space, theorems } => {
            let format = cli.format.unwrap_or(Format::Json);
            let mut cfg = base_config(cli, "sweep", format);
            theorem_config(&mut cfg, theorems);
            space_config(&mut cfg, space, ceiling);
            let s = build_space(space, ceiling)?;
            let checks = select_checks(theorems, s.p as u64, s.rank, true)?;
            let summary = search::sweep(&s, &checks)?;
            let code = if summary.total_violations() > 0 {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            };
            let text = match format {
                Format::Json => envelope(&cfg, &summary),
                Format::Csv => {
                    let mut out = csv_header(&cfg, "theorem,verdict,count");
                    for (label, cs) in &summary.checks {
                        for (verdict, n) in &cs.histogram {
                            writeln!(out, "{label},{verdict},{n}").unwrap();
                        }
                        writeln!(out, "{label},inapplicable,{}", cs.inapplicable).unwrap();
                    }
                    out
                }
            };
            Ok((code, text))
        }
        Command::Hunt { space, theorems } => {
            let format = cli.format.unwrap_or(Format::Json);
            require_json(format, "hunt")?;
            let mut cfg = base_config(cli, "hunt", format);
            theorem_config(&mut cfg, theorems);
            space_config(&mut cfg, space, ceiling);
            let s = build_space(space, ceiling)?;
            let checks = select_checks(theorems, s.p as u64, s.rank, false)?;
            let [check] = checks.as_slice() else {
                return Err(Error::InvalidParameter(
                    "hunt takes exactly one theorem (use --k for the conjecture)".into(),
                ));
            };
            let result = search::hunt(check, &s)?;
            let code = if result.violation.is_some() {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            };
            Ok((code, envelope(&cfg, &result)))
        }
        Command::Frontier { space } => {
            let format = cli.format.unwrap_or(Format::Csv);
            let mut cfg = base_config(cli, "frontier", format);
            space_config(&mut cfg, space, ceiling);
            let s = build_space(space, ceiling)?;
            let map = search::frontier(&s)?;
            let text = match format {
                Format::Csv => {
                    let mut out = csv_header(&cfg, "");
                    out.push_str(&map.to_csv());
                    out
                }
                Format::Json => {
                    let rows: Vec<Value> = map
                        .attained
                        .values()
                        .map(|w| json!({"s_size": w.s_size, "x_size": w.x_size, "index": w.index.to_string(), "witness": w.function}))
                        .collect();
                    envelope(
                        &cfg,
                        &json!({"space": map.space, "attained": rows, "pareto": map.pareto()}),
                    )
                }
            };
            Ok((EXIT_OK, text))
        }
        Command::Geometry { query, set, p } => {
            let format = cli.format.unwrap_or(Format::Json);
            require_json(format, "geometry")?;
            let mut cfg = base_config(cli, "geometry", format);
            cfg.query = serde_json::to_value(query)
                .ok()
                .and_then(|v| v.as_str().map(String::from));
            cfg.set = set.clone();
            cfg.p = *p;
            let result = cmd_geometry(*query, set.as_deref(), *p)?;
            Ok((EXIT_OK, envelope(&cfg, &result)))
        }
        Command::Classify { function } => {
            let format = cli.format.unwrap_or(Format::Json);
            require_json(format, "classify")?;
            let mut cfg = base_config(cli, "classify", format);
            cfg.function = Some(function.clone());
            let f = GFunc::parse_literal(function)?;
            let a = Analyzed::new(&f)?;
            let descriptor = classify_exception(&f)?;
            let result = json!({
                "function": f.to_literal(),
                "s_size": a.s_size,
                "x_size": a.x_size,
                "descriptor": descriptor,
            });
            Ok((EXIT_OK, envelope(&cfg, &result)))
        }
        Command::EmitCurves { p } => {
            let format = cli.format.unwrap_or(Format::Csv);
            let mut cfg = base_config(cli, "emit-curves", format);
            cfg.p = Some(*p);
            let rows = emit_curves(*p)?;
            let text = match format {
                Format::Csv => {
                    let mut out = csv_header(&cfg, "curve,param,min,max,exact");
                    for r in &rows {
                        writeln!(out, "{},{},{},{},{}", r.curve, r.param, r.min, r.max, r.exact)
                            .unwrap();
                    }
                    out
                }
                Format::Json => envelope(&cfg, &rows),
            };
            Ok((EXIT_OK, text))
        }
    }
}

fn require_json(format: Format, cmd: &str) -> Result<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(Error::InvalidParameter(format!("{cmd} only emits json"))),
    }
}

fn envelope<T: Serialize>(cfg: &RunConfig, result: &T) -> String {
    let doc = json!({
        "tool": "fp2u",
        "version": VERSION,
        "config": cfg,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

fn csv_header(cfg: &RunConfig, columns: &str) -> String {
    let mut out = format!(
        "# fp2u {VERSION}\n# config {}\n",
        serde_json::to_string(cfg).expect("config serializes")
    );
    if !columns.is_empty() {
        out.push_str(columns);
        out.push('\n');
    }
    out
}

fn build_space(s: &SpaceArgs, ceiling: u128) -> Result<SearchSpace> {
    let p = check_prime(s.p)?;
    let mode = match s.budget {
        Some(budget) => Mode::Random {
            seed: s.seed,
            budget,
        },
        None => Mode::Exhaustive,
    };
    let space = SearchSpace {
        p,
        rank: s.rank,
        alphabet: parse_alphabet(p, &s.alphabet)?,
        twist: s.twist,
        mode,
        ceiling,
    };
    space.validate()?;
    Ok(space)
}

/// Expands the requested theorem ids. With none requested, every check that
/// applies to the rank is used; as2/as3 join only when an epsilon is given.
fn select_checks(t: &TheoremArgs, p: u64, rank: u8, default_all: bool) -> Result<Vec<Check>> {
    let q = check_prime(p)?;
    let ids: Vec<String> = if t.theorem.is_empty() {
        if !default_all {
            return Err(Error::InvalidParameter("--theorem is required".into()));
        }
        let mut ids: Vec<&str> = if rank == 1 {
            vec!["basic", "birotao"]
        } else {
            vec![
                "basic",
                "meshulam_alt",
                "conjecture",
                "roots",
                "rational",
                "kp1",
                "kp2",
                "uppergray",
            ]
        };
        if rank == 2 && t.epsilon.is_some() {
            ids.extend(["as2", "as3"]);
        }
        ids.into_iter().map(String::from).collect()
    } else {
        t.theorem.clone()
    };
    let mut out = Vec::new();
    for id in ids {
        let id = id.trim();
        if id == "conjecture" && t.k.is_none() {
            out.extend((1..=q).map(Check::Conjecture));
        } else {
            out.push(Check::parse(id, t.k, t.epsilon.as_deref())?);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Skipped {
    theorem: String,
    reason: String,
}

fn cmd_verify(cfg: &RunConfig, f: &GFunc, t: &TheoremArgs, format: Format) -> Result<(i32, String)> {
    let a = Analyzed::new(f)?;
    let explicit = !t.theorem.is_empty();
    let checks = select_checks(t, f.p() as u64, f.rank(), true)?;
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut skipped = Vec::new();
    for c in &checks {
        match evaluate(c, &a) {
            Ok(r) => reports.push(r),
            Err(e @ (Error::NonRational | Error::Precondition(_))) if !explicit => {
                skipped.push(Skipped {
                    theorem: c.label(),
                    reason: e.to_string(),
                })
            }
            Err(e) => return Err(e),
        }
    }
    let code = if reports.iter().any(|r| r.verdict == Verdict::Violated) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    let text = match format {
        Format::Json => envelope(
            cfg,
            &json!({
                "function": f.to_literal(),
                "s_size": a.s_size,
                "x_size": a.x_size,
                "reports": reports,
                "skipped": skipped,
            }),
        ),
        Format::Csv => {
            let mut out = csv_header(cfg, "theorem,verdict,lhs,rhs,s_size,x_size");
            for r in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.theorem,
                    r.verdict.name(),
                    r.lhs,
                    r.rhs,
                    r.s_size,
                    r.x_size
                )
                .unwrap();
            }
            out
        }
    };
    Ok((code, text))
}

fn parse_set(set: Option<&str>) -> Result<PointSet> {
    let text = set.ok_or_else(|| Error::InvalidParameter("this query needs --set".into()))?;
    PointSet::parse(text, Side::Primal)
}

fn cmd_geometry(query: GeometryQuery, set: Option<&str>, p: Option<u64>) -> Result<Value> {
    Ok(match query {
        GeometryQuery::BlockingMin => {
            let p = match (p, set) {
                (Some(p), _) => p,
                (None, Some(_)) => parse_set(set)?.p() as u64,
                (None, None) => return Err(Error::InvalidParameter("blocking-min needs --p".into())),
            };
            let (size, witness) = min_blocking_size(p)?;
            json!({"p": p, "min_blocking_size": size, "witness": witness.to_literal()})
        }
        GeometryQuery::Blocking => {
            let s = parse_set(set)?;
            json!({"set": s.to_literal(), "size": s.len(), "blocking": is_blocking_set(&s)})
        }
        GeometryQuery::Directions => {
            let s = parse_set(set)?;
            let dirs = directions_determined(&s)?;
            json!({"set": s.to_literal(), "size": s.len(), "count": dirs.len(), "directions": dirs})
        }
        GeometryQuery::Pencil => {
            let s = parse_set(set)?;
            json!({"set": s.to_literal(), "report": pencil_stability_check(&s)})
        }
        GeometryQuery::RichDirection => {
            let s = parse_set(set)?;
            json!({"set": s.to_literal(), "direction": rich_direction_search(&s)?})
        }
        GeometryQuery::BoundedDirection => {
            let s = parse_set(set)?;
            json!({"set": s.to_literal(), "direction": bounded_line_direction(&s)?})
        }
    })
}

/// One sample of a boundary curve: the larger support size at which the
/// bound becomes tight, given the smaller one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub curve: String,
    pub param: String,
    pub min: u64,
    /// Exact rational when `exact`, otherwise six decimals.
    pub max: String,
    pub exact: bool,
}

fn exact_row(curve: &str, param: String, min: u64, max: BigRational) -> CurveRow {
    CurveRow {
        curve: curve.into(),
        param,
        min,
        max: rat_to_string(&max),
        exact: true,
    }
}

/// Samples every curve at `min = 1..=p²`, keeping points with `max >= min`.
pub fn emit_curves(p: u64) -> Result<Vec<CurveRow>> {
    let q = check_prime(p)? as i64;
    let pi = |n: i64| rat_int(n);
    let mut rows = Vec::new();
    let mut push = |curve: &str, param: String, a: i64, b: BigRational| {
        if b >= pi(a) {
            rows.push(exact_row(curve, param, a as u64, b));
        }
    };
    for a in 1..=q * q {
        let ar = pi(a);
        push("theorem-a", String::new(), a, pi(q * q) / &ar);
        push("meshalt", String::new(), a, pi(q) * (pi(q + 1) - &ar));
        if q >= 3 {
            push(
                "rational",
                String::new(),
                a,
                pi(q - 1) * (pi(q + 1) - rat(a, 2)),
            );
            push("kp1", String::new(), a, pi(2) * (pi(q + 1) - rat(a, q - 1)));
            push("kp2", String::new(), a, pi(3) * (pi(q + 1) - rat(a, q - 2)));
            push("uppergray", String::new(), a, pi(3 * q * (q - 2)) / &ar);
        }
        for k in 1..=q {
            push(
                "conjecture",
                format!("k={k}"),
                a,
                pi(q + 1 - k) * (pi(q + 1) - rat(a, k)),
            );
        }
    }
    for a in 1..=q * q {
        let root = (a as f64).sqrt().round() as i64;
        let b = ((q + 1) as f64 - (a as f64).sqrt()).powi(2);
        if root * root == a {
            let b = pi((q + 1 - root) * (q + 1 - root));
            if root <= q + 1 && b >= pi(a) {
                rows.push(exact_row("roots", String::new(), a as u64, b));
            }
        } else if (a as f64).sqrt() < (q + 1) as f64 && b >= a as f64 {
            rows.push(CurveRow {
                curve: "roots".into(),
                param: String::new(),
                min: a as u64,
                max: format!("{b:.6}"),
                exact: false,
            });
        }
    }
    for m in 1..=q {
        for n in 1..=q {
            let (s, x) = (m * (q + 1 - n), n * (q + 1 - m));
            rows.push(CurveRow {
                curve: "yellow_dot".into(),
                param: format!("m={m};n={n}"),
                min: s.min(x) as u64,
                max: s.max(x).to_string(),
                exact: true,
            });
        }
    }
    Ok(rows)
}

/// Parses an exact `max` entry back into a rational.
pub fn curve_value(row: &CurveRow) -> Option<BigRational> {
    if !row.exact {
        return None;
    }
    crate::arith::parse_rational(&row.max).ok()
}
