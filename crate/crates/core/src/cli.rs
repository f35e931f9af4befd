//! Command-line front end: `list`, `verify`, `eval`, `search`, `canon`,
//! `refine`, `convert` and `bounds`.
//!
//! Exit status is 0 on success, 1 when a rule fails verification or a
//! search or refinement fails, and 2 for usage, parse and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bigreal::{BigReal, Precision};
use crate::catalog::{entries, lookup, CatalogEntry};
use crate::error::CubatureError;
use crate::moments::{effective_bound, moller_bound, stroud_bound, Region};
use crate::real::Real;
use crate::refine::{identify_surd, refine_rule, verify_extended, working_digits_for, SurdBounds};
use crate::rule::{convert_from_gaussian, convert_gaussian, detected_degree, evaluate, quality_of, stability_factor, verify, CubatureRule, BOUNDARY_TOL};
use crate::rulefile::{format_rule, read_rule, EXTENDED_DIGITS, F64_DIGITS, LISTING_DIGITS};
use crate::search::{binary_search_n, run_search, SearchConfig, Solver};
use crate::symmetry::{align_axes, default_shell_tolerances, detect_shells, orient_simplex, project_to_shell, symmetrize_bilateral};

#[derive(Parser, Debug)]
#[command(name = "cubature", about = "Cubature rules for spherically symmetric regions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog rules: id, region, n, N, degree, quality and shells.
    List {
        /// Only entries whose id or region contains this text.
        filter: Option<String>,
    },
    /// Check the moment equations of a rule file or catalog id.
    Verify {
        rule: String,
        #[arg(long)]
        degree: Option<u32>,
        /// Tolerance on max |residual| relative to the region volume.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Apply a rule to a built-in integrand.
    Eval {
        rule: String,
        /// `cos-sum`, `one` or `monomial`.
        integrand: String,
        /// Exponents for `monomial`, comma separated.
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<u32>,
    },
    /// Search for a rule by random starts and Newton-type iteration.
    Search(SearchArgs),
    /// Apply a symmetry operation to a rule.
    Canon(CanonArgs),
    /// Polish a rule to extended precision.
    Refine {
        rule: String,
        #[arg(long)]
        degree: Option<u32>,
        /// Working digits; at least 32·degree + 10 are used.
        #[arg(long, default_value_t = 0)]
        digits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print closed forms found for the distinct coordinate values.
        #[arg(long)]
        identify: bool,
    },
    /// Convert between the Gaussian probability and e^(-x·x) conventions.
    Convert {
        rule: String,
        /// `gaussian` or `er2`.
        #[arg(long)]
        to: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        paper_digits: bool,
    },
    /// Lower bounds on the point count.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    region: Region,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    degree: u32,
    /// Number of points.
    #[arg(long = "N", conflicts_with = "auto_n")]
    points: Option<usize>,
    /// Bisect for the smallest point count up to `--max`.
    #[arg(long = "auto-N", requires = "max")]
    auto_n: bool,
    #[arg(long)]
    max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    restarts: u32,
    #[arg(long, default_value_t = 0)]
    extras: usize,
    #[arg(long, default_value = "gauss-newton-pinv")]
    solver: Solver,
    /// Success threshold on max |residual| relative to the region volume.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
#[group(id = "operation", required = true, multiple = false, args = ["align", "simplex", "symmetrize", "project"])]
struct CanonArgs {
    rule: String,
    /// Point indices to bring to lower-triangular form.
    #[arg(long, value_delimiter = ',')]
    align: Option<Vec<usize>>,
    /// Orient a regular-simplex shell; indices default to the first such shell.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    simplex: Option<Vec<usize>>,
    /// Make the rule mirror symmetric, optionally about a given axis.
    #[arg(long, num_args = 0..=1)]
    symmetrize: Option<Option<usize>>,
    /// Put every point of this shell (by increasing radius) on one sphere.
    #[arg(long)]
    project: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command that ran: a pass/fail status, or an error.
enum Failure {
    /// Verification, search or refinement did not succeed.
    Failed(String),
    /// Bad arguments or unreadable input.
    Usage(String),
}

impl From<CubatureError> for Failure {
    fn from(e: CubatureError) -> Self {
        match e {
            CubatureError::Precondition(_) | CubatureError::Divergence { .. } => Failure::Failed(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parse `args` (including the program name) and run the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::List { filter } => cmd_list(filter.as_deref(), out),
        Command::Verify { rule, degree, tol, json } => cmd_verify(&rule, degree, tol, json, out),
        Command::Eval { rule, integrand, exponents } => cmd_eval(&rule, &integrand, &exponents, out),
        Command::Search(a) => cmd_search(&a, out, err),
        Command::Canon(a) => cmd_canon(&a, out),
        Command::Refine { rule, degree, digits, out: path, identify } => cmd_refine(&rule, degree, digits, path.as_deref(), identify, out),
        Command::Convert { rule, to, out: path, paper_digits } => cmd_convert(&rule, &to, path.as_deref(), paper_digits, out),
        Command::Bounds { n, degree } => cmd_bounds(n, degree, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// A rule file path, or else a catalog id.
fn load_rule(arg: &str) -> std::result::Result<(CubatureRule<f64>, Option<CatalogEntry>), Failure> {
    if Path::new(arg).exists() {
        return Ok((read_rule(arg)?, None));
    }
    match lookup(arg) {
        Ok(e) => Ok((e.build()?, Some(e))),
        Err(CubatureError::UnknownTable(msg)) => Err(Failure::Usage(format!("`{msg}` is neither a file nor a catalog id"))),
        Err(e) => Err(e.into()),
    }
}

fn emit(rule_text: &str, path: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => {
            std::fs::write(p, rule_text)?;
            writeln!(out, "wrote {}", p.display())?;
        }
        None => out.write_all(rule_text.as_bytes())?,
    }
    Ok(())
}

/// One `list` line for a catalog entry.
pub fn list_line(e: &CatalogEntry) -> crate::error::Result<String> {
    let rule = e.build()?;
    Ok(format!(
        "{} {} n={} N={} d={} {} {}",
        e.id,
        e.region,
        e.n,
        e.points,
        e.degree,
        quality_of(&rule, BOUNDARY_TOL),
        e.shells.unwrap_or("-")
    ))
}

fn cmd_list(filter: Option<&str>, out: &mut dyn Write) -> CmdResult {
    let filter = filter.map(str::to_ascii_lowercase);
    for e in entries() {
        let keep = filter.as_ref().is_none_or(|f| e.id.contains(f.as_str()) || e.region.to_string().to_ascii_lowercase().contains(f.as_str()));
        if keep {
            writeln!(out, "{}", list_line(&e)?)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyJson {
    rule: String,
    region: Region,
    n: usize,
    points: usize,
    degree_checked: u32,
    max_abs_residual: f64,
    tolerance: f64,
    pass: bool,
    detected_degree: i32,
    quality: String,
    stability: Option<f64>,
}

fn cmd_verify(arg: &str, degree: Option<u32>, tol: Option<f64>, json: bool, out: &mut dyn Write) -> CmdResult {
    let (rule, entry) = load_rule(arg)?;
    let tol = tol.or(entry.as_ref().map(|e| e.table.verify_tolerance())).unwrap_or(1e-11);
    let d = match degree.or(rule.claimed_degree) {
        Some(d) => d,
        None => detected_degree(&rule, tol, 20).max(0) as u32,
    };
    let report = verify(&rule, d, tol);
    let detected = detected_degree(&rule, tol, d + 2);
    let quality = quality_of(&rule, BOUNDARY_TOL).to_string();
    let stability = stability_factor(&rule).ok();
    if json {
        let j = VerifyJson {
            rule: arg.to_string(),
            region: rule.region,
            n: rule.n,
            points: rule.len(),
            degree_checked: d,
            max_abs_residual: report.max_abs_residual,
            tolerance: report.tolerance_used,
            pass: report.pass,
            detected_degree: detected,
            quality,
            stability,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&j).map_err(|e| Failure::Usage(e.to_string()))?)?;
    } else {
        writeln!(out, "{arg}: {} n={} N={}", rule.region, rule.n, rule.len())?;
        writeln!(
            out,
            "max residual {:.3e} through degree {d} (tolerance {:.3e}, worst monomial {:?})",
            report.max_abs_residual, report.tolerance_used, report.worst_constraint.exponents()
        )?;
        let stab = stability.map_or_else(|| "undefined".to_string(), |s| format!("{s:.3}"));
        writeln!(out, "degree {detected}, quality {quality}, stability {stab}")?;
        writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" })?;
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Failed(format!("{arg} fails the degree-{d} moment check")))
    }
}

fn cmd_eval(arg: &str, integrand: &str, exponents: &[u32], out: &mut dyn Write) -> CmdResult {
    let (rule, _) = load_rule(arg)?;
    let value = match integrand {
        "cos-sum" => evaluate(&rule, |x| x.iter().sum::<f64>().cos()),
        "one" => evaluate(&rule, |_| 1.0),
        "monomial" => {
            if exponents.len() != rule.n {
                return Err(Failure::Usage(format!("monomial needs {} exponents, got {}", rule.n, exponents.len())));
            }
            evaluate(&rule, |x| x.iter().zip(exponents).map(|(v, &e)| v.powi(e as i32)).product())
        }
        other => return Err(Failure::Usage(format!("unknown integrand `{other}` (use cos-sum, one or monomial)"))),
    };
    writeln!(out, "{value:.15e}")?;
    Ok(())
}

/// The status line goes to `err` so that `out` holds only the rule file.
fn cmd_search(a: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let points = match (a.points, a.auto_n, a.max) {
        (Some(p), false, _) => p,
        (None, true, Some(m)) => m,
        _ => return Err(Failure::Usage("give --N or --auto-N with --max".into())),
    };
    let mut cfg = SearchConfig::new(a.region, a.n, a.degree, points).with_seed(a.seed).with_restarts(a.restarts);
    cfg.extras = a.extras;
    cfg.solver = a.solver;
    if let Some(t) = a.tol {
        cfg.residual_tol = t;
    }
    let report = if a.auto_n { binary_search_n(&cfg, points)? } else { run_search(&cfg)? };
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?)?;
    } else {
        writeln!(
            err,
            "{:?}: N={} after {} attempt(s), max residual {:.3e}, seed {}",
            report.outcome, report.points, report.restarts_used, report.final_max_residual, report.seed
        )?;
    }
    match &report.rule {
        Some(rule) if report.is_success() => {
            let rule = rule.clone().with_provenance(format!(
                "search {} n={} d={} N={} seed={}",
                a.region, a.n, a.degree, report.points, a.seed
            ));
            if a.out.is_some() || !a.json {
                emit(&format_rule(&rule, F64_DIGITS), a.out.as_deref(), out)?;
            }
            Ok(())
        }
        _ => Err(Failure::Failed(format!("search ended with {:?}", report.outcome))),
    }
}

fn cmd_canon(a: &CanonArgs, out: &mut dyn Write) -> CmdResult {
    let (rule, _) = load_rule(&a.rule)?;
    let result = if let Some(idx) = &a.align {
        align_axes(&rule, idx)?
    } else if let Some(idx) = &a.simplex {
        if idx.is_empty() {
            let (rt, wt) = default_shell_tolerances(&rule);
            detect_shells(&rule, rt, wt)
                .shells
                .iter()
                .filter(|s| s.members.len() == rule.n + 1)
                .find_map(|s| orient_simplex(&rule, &s.members).ok())
                .ok_or_else(|| Failure::Usage("no shell is a regular simplex".into()))?
        } else {
            orient_simplex(&rule, idx)?
        }
    } else if let Some(axis) = a.symmetrize {
        symmetrize_bilateral(&rule, axis)?.0
    } else if let Some(k) = a.project {
        let (rt, wt) = default_shell_tolerances(&rule);
        let shells = detect_shells(&rule, rt, wt);
        let shell = shells.shells.get(k).ok_or_else(|| Failure::Usage(format!("rule has {} shells", shells.shells.len())))?;
        project_to_shell(&rule, &shell.members, None, 1.0)?
    } else {
        return Err(Failure::Usage("choose one of --align, --simplex, --symmetrize, --project".into()));
    };
    emit(&format_rule(&result, F64_DIGITS), a.out.as_deref(), out)
}

fn cmd_refine(arg: &str, degree: Option<u32>, digits: u32, path: Option<&Path>, identify: bool, out: &mut dyn Write) -> CmdResult {
    let (rule, entry) = load_rule(arg)?;
    let d = degree
        .or(rule.claimed_degree)
        .ok_or_else(|| Failure::Usage("the rule has no degree; pass --degree".into()))?;
    let working = digits.max(working_digits_for(d));
    let prec = Precision::from_digits(working);
    let (refined, how) = match entry.filter(|e| e.table.is_closed_form()) {
        Some(e) => (e.build_in::<BigReal>(&prec)?.with_provenance(format!("{} from closed forms at {working} digits", e.id)), "closed forms".to_string()),
        None => {
            let r = refine_rule(&rule, d, working)?;
            let how = format!("{} Newton iterations", r.iterations);
            (r.rule, how)
        }
    };
    let residual = verify_extended(&refined, d)?;
    writeln!(out, "{arg}: {working} digits via {how}, max residual {}", residual.to_sci_string(3))?;
    if identify {
        let mut seen: Vec<BigReal> = Vec::new();
        let tiny = BigReal::pow10_neg(&prec, working / 2);
        for v in refined.points.iter().map(|x| x.abs()) {
            if v < tiny || seen.iter().any(|s| (s.clone() - &v).abs() < tiny) {
                continue;
            }
            let form = identify_surd(&v, SurdBounds::default()).map_or_else(|| "?".to_string(), |c| c.form.to_string());
            writeln!(out, "{} = {form}", v.to_sci_string(20))?;
            seen.push(v);
        }
    }
    emit(&format_rule(&refined, EXTENDED_DIGITS), path, out)
}

fn cmd_convert(arg: &str, to: &str, path: Option<&Path>, paper_digits: bool, out: &mut dyn Write) -> CmdResult {
    let (rule, _) = load_rule(arg)?;
    let target: Region = to.parse()?;
    let converted = match target {
        Region::GaussianProb => convert_from_gaussian(&rule)?,
        Region::ExpR2 => convert_gaussian(&rule)?,
        other => return Err(Failure::Usage(format!("cannot convert to {other}; use gaussian or er2"))),
    };
    emit(&format_rule(&converted, if paper_digits { LISTING_DIGITS } else { F64_DIGITS }), path, out)
}

fn cmd_bounds(n: u32, degree: u32, out: &mut dyn Write) -> CmdResult {
    let moller = moller_bound(n, degree).map_or_else(|_| "-".to_string(), |m| m.to_string());
    writeln!(out, "stroud={} moller={moller} effective={}", stroud_bound(n, degree), effective_bound(n, degree))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("cubature").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bounds_lines() {
        assert_eq!(run_capture(&["bounds", "--n", "7", "--degree", "7"]).1.trim(), "stroud=120 moller=182 effective=182");
        assert!(run_capture(&["bounds", "--n", "2", "--degree", "8"]).1.contains("effective=15"));
        assert!(run_capture(&["bounds", "--n", "1", "--degree", "0"]).1.contains("stroud=1"));
    }

    #[test]
    fn list_contains_published_rows() {
        let (code, out, _) = run_capture(&["list"]);
        assert_eq!(code, 0);
        assert!(out.contains("s7-183-7 Ball n=7 N=183 d=7 PI 1+56+126"), "{out}");
        assert!(out.contains("e2r2-5-22-4 ExpR2 n=5 N=22 d=4"));
        assert!(out.lines().count() >= 20);
        let (_, balls, _) = run_capture(&["list", "ball"]);
        assert!(balls.lines().all(|l| l.contains(" Ball ")));
    }

    #[test]
    fn verify_catalog_rules() {
        let (code, out, _) = run_capture(&["verify", "s4-15-4"]);
        assert_eq!(code, 0);
        assert!(out.contains("degree 4, quality PB, stability 1.000"), "{out}");
        let (_, out, _) = run_capture(&["verify", "e7r2-38-4"]);
        assert!(out.contains("stability 7.18"), "{out}");
        let (code, out, _) = run_capture(&["verify", "s4-15-4", "--degree", "5", "--json"]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], false);
        assert_eq!(v["detected_degree"], 4);
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run_capture(&["verify", "no-such-rule"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["eval", "s4-15-4", "sin"]).0, 2);
        assert_eq!(run_capture(&["search", "--region", "er2", "--n", "2", "--degree", "3", "--N", "0"]).0, 2);
        assert_eq!(run_capture(&["convert", "s4-15-4", "--to", "gaussian"]).0, 2);
    }

    #[test]
    fn eval_total_weight() {
        let (code, out, _) = run_capture(&["eval", "s4-15-4", "one"]);
        assert_eq!(code, 0);
        let v: f64 = out.trim().parse().unwrap();
        assert!((v - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-13);
        let (_, out, _) = run_capture(&["eval", "e2r2-2-10-6", "monomial", "--exponents", "2,0"]);
        let v: f64 = out.trim().parse().unwrap();
        assert!((v - std::f64::consts::PI / 2.0).abs() < 1e-9);
    }
}
