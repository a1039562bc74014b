//! Command-line front end. `run` takes the argument vector and output
//! streams and returns the process exit code, so it can be driven from tests.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{
    best_bound, classify_case, holder_moments, kernel_moments, method_bound, rule_error, Bound, Method,
};
use crate::error::{Error, Result};
use crate::means::{arith, p_log, proposition_holder_check, proposition_power_mean_check, weighted_arith};
use crate::oracle::{hermite_hadamard_check, kernel_representation};
use crate::params::{ConvexityClass, ConvexityMode, DerivativeData, Interval, RuleParams};
use crate::verify::csv::{fmt_f64, write_coeffs_csv, write_compare_csv, write_verify_csv};
use crate::verify::{
    fuzz_verify, improvement_coefficients, reduction_check, tightness_compare, CompareGrid, FuzzConfig,
};
use crate::zoo::{certified_instance, make_power_s, Family, TestFunction};

/// Relative `--csv` paths are resolved against this directory when set.
pub const CSV_DIR_ENV: &str = "SCONVEX_CSV_DIR";

/// Exit code for a run that found violations or failed equalities.
pub const EXIT_VIOLATION: i32 = 2;
/// Exit code for usage and domain errors.
pub const EXIT_USAGE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "sconvex-quad", version, about = "Error bounds for three-point quadrature rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write CSV to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RuleArgs {
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Decimal only; Simpson's 1/3 is entered as 0.3333333333.
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
}

#[derive(Debug, Args)]
struct IntervalArgs {
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one bound (or the best of several) with its components.
    Bound {
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        /// Test function id.
        #[arg(long = "fn", default_value = "square")]
        func: String,
        /// Coefficient of `power_s`.
        #[arg(long)]
        beta: Option<f64>,
        /// Repeat to compare several; omitted means every method.
        #[arg(long)]
        method: Vec<Method>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the kernel moments and Hoelder moments.
    Coeffs {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        /// Hoelder exponent; defaults to q/(q-1) when --q > 1 is given, else 2.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded soundness fuzzing campaign.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Restrict to these functions (repeatable).
        #[arg(long = "fn")]
        func: Vec<String>,
        /// Restrict to these methods (repeatable).
        #[arg(long)]
        method: Vec<Method>,
        #[command(flatten)]
        out: Output,
    },
    /// Check that the general estimates reduce to their special cases.
    Reduce,
    /// Compare the new estimates with the earlier single-rule bounds.
    Compare {
        #[command(flatten)]
        out: Output,
    },
    /// Means and the two mean inequalities.
    Means {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, default_value_t = 0.4)]
        s: f64,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// Order of the logarithmic mean.
        #[arg(long, default_value_t = 1.0)]
        p: f64,
    },
    /// Residual of the kernel representation of the rule error.
    Identity {
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long = "fn", default_value = "square")]
        func: String,
        #[arg(long)]
        beta: Option<f64>,
        /// Also print the Hermite-Hadamard sandwich for this s.
        #[arg(long)]
        s: Option<f64>,
    },
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = std::result::Result<i32, CliError>;

fn resolve_csv_path(p: &Path) -> PathBuf {
    match std::env::var_os(CSV_DIR_ENV) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

/// Runs `write` against the requested CSV destination.
fn emit_csv<F>(o: &Output, out: &mut dyn Write, write: F) -> io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match &o.csv {
        Some(p) => {
            let mut f = BufWriter::new(File::create(resolve_csv_path(p))?);
            write(&mut f)?;
            f.flush()
        }
        None => write(out),
    }
}

fn wants_csv(o: &Output) -> bool {
    o.format == Format::Csv || o.csv.is_some()
}

fn function(id: &str, beta: Option<f64>, s: f64, q: f64, mode: ConvexityMode) -> Result<TestFunction> {
    let fam = Family::from_id(id)?;
    if let (Family::PowerS, Some(beta)) = (fam, beta) {
        return make_power_s(beta, 0.5);
    }
    if fam.supports(s, q) && fam.mode() == mode {
        certified_instance(fam, s, q)
    } else {
        Ok(fam.default_instance())
    }
}

fn method_mode(m: Method) -> ConvexityMode {
    if m == Method::HolderConcave {
        ConvexityMode::SConcave
    } else {
        ConvexityMode::SConvex
    }
}

fn print_bound(out: &mut dyn Write, b: &Bound) -> io::Result<()> {
    writeln!(out, "method      {}", b.method)?;
    writeln!(out, "case        {}", b.case_id)?;
    writeln!(out, "bound       {}", b.value)?;
    for (label, v) in &b.components {
        writeln!(out, "  {label:<22} {v}")?;
    }
    if b.candidates.len() > 1 {
        let c: Vec<String> = b.candidates.iter().map(|(c, v)| format!("{c}={v}")).collect();
        writeln!(out, "  boundary cases         {}", c.join(", "))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bound(
    rule: RuleArgs,
    iv: IntervalArgs,
    s: f64,
    q: f64,
    func: String,
    beta: Option<f64>,
    methods: Vec<Method>,
    o: Output,
    out: &mut dyn Write,
) -> CliResult {
    let params = RuleParams::new(rule.alpha, rule.lambda)?;
    let iv = Interval::nonneg(iv.a, iv.b)?;
    let fam = Family::from_id(&func)?;
    let mode = match methods.as_slice() {
        [m] => method_mode(*m),
        _ => fam.mode(),
    };
    let f = function(&func, beta, s, q, mode)?;
    let cls = ConvexityClass::new(s, q, mode)?;
    let d = DerivativeData::sample(|x| f.deriv(x), &params, &iv)?;
    let err_val = rule_error(&f, &params, &iv)?;
    let certified = f.derivative_certificate().is_some_and(|c| c.mode == mode && c.q == q && c.s >= s);

    let (best, all) = if let [m] = methods.as_slice() {
        let b = method_bound(*m, &params, &cls, &d, &iv)?;
        (b.clone(), vec![b])
    } else {
        let requested = if methods.is_empty() { Method::ALL.to_vec() } else { methods };
        let r = best_bound(&params, &cls, &d, &iv, &requested)?;
        (r.best, r.all)
    };

    if wants_csv(&o) {
        let mut rows = vec![("bound".to_string(), best.value), ("abs_rule_error".to_string(), err_val.abs())];
        rows.extend(best.components.iter().cloned());
        emit_csv(&o, out, |w| write_coeffs_csv(w, &rows))?;
        return Ok(0);
    }
    writeln!(out, "rule        alpha={} lambda={} on {iv}", params.alpha(), params.lambda())?;
    writeln!(out, "function    {} (|f'|^q {}-{} certified: {})", f.id(), s, mode, if certified { "yes" } else { "no" })?;
    writeln!(out, "|I_f|       {}", err_val.abs())?;
    print_bound(out, &best)?;
    if all.len() > 1 {
        writeln!(out, "all methods:")?;
        for b in &all {
            writeln!(out, "  {:<26} {}", b.method.name(), b.value)?;
        }
    }
    Ok(0)
}

fn cmd_coeffs(rule: RuleArgs, s: f64, p: Option<f64>, q: Option<f64>, o: Output, out: &mut dyn Write) -> CliResult {
    let params = RuleParams::new(rule.alpha, rule.lambda)?;
    let p = match (p, q) {
        (Some(p), _) => p,
        (None, Some(q)) if q > 1.0 => q / (q - 1.0),
        _ => 2.0,
    };
    let m = kernel_moments(&params, s)?;
    let r = kernel_moments(&params.mirrored(), s)?;
    let h = holder_moments(&params, p)?;
    let hr = holder_moments(&params.mirrored(), p)?;
    let mut rows: Vec<(String, f64)> = Vec::new();
    for (prefix, m) in [("", &m), ("mirrored.", &r)] {
        for (n, v) in [
            ("gamma1", m.gamma1),
            ("gamma2", m.gamma2),
            ("c1", m.c1),
            ("c2", m.c2),
            ("c3", m.c3),
            ("c4", m.c4),
        ] {
            rows.push((format!("{prefix}{n}"), v));
        }
    }
    rows.push(("eps1".into(), h.eps1));
    rows.push(("eps2".into(), h.eps2));
    rows.push(("mirrored.eps1".into(), hr.eps1));
    rows.push(("mirrored.eps2".into(), hr.eps2));
    if wants_csv(&o) {
        emit_csv(&o, out, |w| write_coeffs_csv(w, &rows))?;
        return Ok(0);
    }
    let c = classify_case(&params);
    let tie = if c.is_boundary() {
        let cases: Vec<String> = c.applicable.iter().map(ToString::to_string).collect();
        format!(" (boundary: {})", cases.join(", "))
    } else {
        String::new()
    };
    writeln!(out, "alpha={} lambda={} s={s} p={p}", params.alpha(), params.lambda())?;
    writeln!(out, "case {}{tie}", c.case)?;
    for (n, v) in &rows {
        writeln!(out, "{n:<16} {v}")?;
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    trials: usize,
    seed: u64,
    tol: f64,
    func: Vec<String>,
    method: Vec<Method>,
    o: Output,
    out: &mut dyn Write,
) -> CliResult {
    let mut cfg = FuzzConfig { trials, seed, tol, function_ids: func, ..Default::default() };
    if !method.is_empty() {
        cfg.methods = method;
    }
    let report = fuzz_verify(&cfg)?;
    let code = if report.passed() && report.errors.is_empty() { 0 } else { EXIT_VIOLATION };
    if wants_csv(&o) {
        emit_csv(&o, out, |w| write_verify_csv(w, &report))?;
        if o.csv.is_none() {
            return Ok(code);
        }
    }
    writeln!(out, "trials      {}", report.trials_run)?;
    writeln!(out, "violations  {}", report.violations.len())?;
    writeln!(out, "errors      {}", report.errors.len())?;
    if let Some(t) = report.tightness {
        writeln!(out, "lhs/rhs     min {} median {} max {}", t.min, t.median, t.max)?;
    }
    if let Some(w) = &report.worst_case {
        writeln!(
            out,
            "tightest    trial {} {} {} alpha={} lambda={} s={} q={} [{}, {}] ratio {}",
            w.trial, w.method, w.fn_id, w.alpha, w.lambda, w.s, w.q, w.a, w.b, w.ratio
        )?;
    }
    for v in report.violations.iter().take(20) {
        writeln!(out, "VIOLATION   trial {} lhs {} rhs {} gap {}", v.trial, v.lhs, v.rhs, v.gap)?;
    }
    for (t, e) in report.errors.iter().take(20) {
        writeln!(out, "ERROR       trial {t}: {e}")?;
    }
    Ok(code)
}

fn cmd_reduce(out: &mut dyn Write) -> CliResult {
    let r = reduction_check()?;
    let mut names: Vec<&str> = Vec::new();
    for c in &r.checks {
        if !names.contains(&c.name) {
            names.push(c.name);
        }
    }
    writeln!(out, "{:<32} {:>6} {:>12}  status", "check", "points", "max rel diff")?;
    for n in names {
        let g: Vec<_> = r.checks.iter().filter(|c| c.name == n).collect();
        let worst = g.iter().map(|c| c.rel_diff()).fold(0.0, f64::max);
        let ok = g.iter().all(|c| c.holds());
        writeln!(out, "{n:<32} {:>6} {worst:>12.3e}  {}", g.len(), if ok { "ok" } else { "FAIL" })?;
    }
    Ok(if r.passed() { 0 } else { EXIT_VIOLATION })
}

fn cmd_compare(o: Output, out: &mut dyn Write) -> CliResult {
    let rows = tightness_compare(&CompareGrid::default())?;
    let coeffs = improvement_coefficients(100);
    let coeff_ok = coeffs.iter().all(|c| c.holds());
    let code = if coeff_ok { 0 } else { EXIT_VIOLATION };
    if wants_csv(&o) {
        emit_csv(&o, out, |w| write_compare_csv(w, &rows))?;
        if o.csv.is_none() {
            return Ok(code);
        }
    }
    writeln!(out, "coefficient inequalities on 100 values of s: {}", if coeff_ok { "hold" } else { "FAIL" })?;
    let mut labels: Vec<&str> = rows.iter().map(|r| r.label).collect();
    labels.sort_unstable();
    labels.dedup();
    for l in labels {
        let g: Vec<_> = rows.iter().filter(|r| r.label == l).collect();
        let max = g.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let min = g.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
        let anomalies = g.iter().filter(|r| r.anomaly).count();
        writeln!(out, "{l:<22} points {:>4}  new/old in [{min:.6}, {max:.6}]  anomalies {anomalies}", g.len())?;
    }
    for r in rows.iter().filter(|r| r.anomaly) {
        writeln!(out, "ANOMALY {} s={} q={} new={} old={}", r.label, r.s, r.q, r.bound_new, r.bound_classical)?;
    }
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_means(a: f64, b: f64, rule: RuleArgs, s: f64, q: f64, p: f64, out: &mut dyn Write) -> CliResult {
    let params = RuleParams::new(rule.alpha, rule.lambda)?;
    writeln!(out, "A_alpha(a,b)   {}", weighted_arith(params.alpha(), a, b)?)?;
    writeln!(out, "A(a,b)         {}", arith(a, b))?;
    writeln!(out, "L_p(a,b)       {} (p = {p})", p_log(a, b, p)?)?;
    let pm = proposition_power_mean_check(a, b, &params, s, q)?;
    writeln!(out, "power-mean inequality: lhs {} rhs {} case {} holds {}", pm.lhs, pm.rhs, pm.case_id, pm.holds)?;
    let mut ok = pm.holds;
    if q > 1.0 {
        let h = proposition_holder_check(a, b, &params, s, q)?;
        writeln!(out, "hoelder inequality:    lhs {} rhs {} case {} holds {}", h.lhs, h.rhs, h.case_id, h.holds)?;
        ok &= h.holds;
    }
    Ok(if ok { 0 } else { EXIT_VIOLATION })
}

#[allow(clippy::too_many_arguments)]
fn cmd_identity(
    rule: RuleArgs,
    iv: IntervalArgs,
    func: String,
    beta: Option<f64>,
    s: Option<f64>,
    out: &mut dyn Write,
) -> CliResult {
    let params = RuleParams::new(rule.alpha, rule.lambda)?;
    let iv = Interval::nonneg(iv.a, iv.b)?;
    let f = function(&func, beta, 1.0, 2.0, Family::from_id(&func)?.mode())?;
    let e = rule_error(&f, &params, &iv)?;
    let k = kernel_representation(&f, &params, &iv)?;
    writeln!(out, "I_f                    {}", fmt_f64(e))?;
    writeln!(out, "kernel representation  {}", fmt_f64(k))?;
    writeln!(out, "residual               {:.3e}", (e - k).abs())?;
    if let Some(s) = s {
        let h = hermite_hadamard_check(&f, s, &iv)?;
        writeln!(out, "2^(s-1) f(mid) {}  mean {}  (f(a)+f(b))/(s+1) {}  ordered {}", h.lhs, h.mid, h.rhs, h.holds(1e-12))?;
    }
    Ok(0)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Bound { rule, iv, s, q, func, beta, method, out: o } => {
            cmd_bound(rule, iv, s, q, func, beta, method, o, out)
        }
        Command::Coeffs { rule, s, p, q, out: o } => cmd_coeffs(rule, s, p, q, o, out),
        Command::Verify { trials, seed, tol, func, method, out: o } => {
            cmd_verify(trials, seed, tol, func, method, o, out)
        }
        Command::Reduce => cmd_reduce(out),
        Command::Compare { out: o } => cmd_compare(o, out),
        Command::Means { a, b, rule, s, q, p } => cmd_means(a, b, rule, s, q, p, out),
        Command::Identity { rule, iv, func, beta, s } => cmd_identity(rule, iv, func, beta, s, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("sconvex-quad").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["bound", "--nope", "1"]).0, 1);
        let (code, _, err) = call(&["bound", "--alpha", "2"]);
        assert_eq!(code, 1);
        assert!(err.contains("alpha"));
        assert_eq!(call(&["bound", "--fn", "missing"]).0, 1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn coeffs_simpson() {
        let (code, out, _) = call(&["coeffs", "--alpha", "0.5", "--lambda", "0.3333333333", "--s", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("c1               0.0223765"), "{out}");
        assert!(out.contains("gamma2           0.0694444"), "{out}");
    }

    #[test]
    fn bound_single_method() {
        let (code, out, _) = call(&[
            "bound", "--method", "power-mean", "--alpha", "0.5", "--lambda", "0.3333333333", "--s", "1", "--q", "1",
            "--fn", "square", "--a", "0", "--b", "1",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("bound       0.13888"), "{out}");
    }
}
