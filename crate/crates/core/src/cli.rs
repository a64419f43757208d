//! Command-line front end.
//!
//! ```text
//! zetaconst approx --s 3 --n 10 --t 1 --digits 8 --format json
//! zetaconst verify --s 7 --trials 100 --seed 42 [--variant no-h]
//! zetaconst lemma2 --max 20
//! zetaconst table  --s 3 --n-from 2 --n-to 12 --format csv
//! zetaconst digits --s 3 --digits 30
//! ```
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 precision
//! budget exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{
    format_scientific, int, integer_digits, parse_rat_list, rat_to_string, render_decimal,
    zeta_reference, Rat, DEFAULT_DIGIT_BUDGET,
};
use crate::polynomials::{binomial_poly, explicit_poly, shifted_legendre, PolySpec};
use crate::solver::{
    approximate, build_system, solve_back_substitution, solve_determinant_ratio, ApproxResult,
};
use crate::theorem_coeffs::{build_rows, check_rows, LowOrderRoute, TranscriptionVariant};
use crate::zeta_series::lemma2::check_lemma2;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "zetaconst",
    version,
    about = "Rational approximations of zeta-constants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    WithH,
    NoH,
}

impl From<VariantArg> for TranscriptionVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::WithH => TranscriptionVariant::RegroupedWithH,
            VariantArg::NoH => TranscriptionVariant::RegroupedNoH,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate ζ(s) by α·ζ(2) + β with a certified error bound.
    Approx(ApproxArgs),
    /// Compare closed-form rows with the partial-fraction decomposition on random polynomials.
    Verify(VerifyArgs),
    /// Check the reciprocal-splitting identities exactly.
    Lemma2(Lemma2Args),
    /// Convergence table over a range of n.
    Table(TableArgs),
    /// Print ζ(s) to the requested number of digits.
    Digits(DigitsArgs),
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub s: u32,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Third polynomial, comma-separated rationals, lowest degree first.
    #[arg(long, default_value = "1")]
    pub t: String,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(3..))]
    pub s: u32,
    #[arg(long, default_value_t = 100)]
    pub trials: u32,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Lemma2Args {
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub max: u64,
    /// Upper limit for the exponent; defaults to `--max`.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_s: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub s: u32,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_from: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_to: u64,
    #[arg(long, default_value = "1")]
    pub t: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DigitsArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub s: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,
    #[arg(long, default_value = "1")]
    pub t: String,
    /// Largest n tried before giving up.
    #[arg(long, default_value_t = 400)]
    pub max_n: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Parses `args` (including the program name), runs the command and writes
/// its output to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Approx(a) => cmd_approx(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Lemma2(a) => Ok(cmd_lemma2(a)),
        Command::Table(a) => cmd_table(a),
        Command::Digits(a) => cmd_digits(a),
    };
    match outcome {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionBudget { .. } => EXIT_BUDGET,
        Error::Divergent { .. } => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

type Output = (String, i32);

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn legendre_binomial_triple(n: usize, t: &str) -> Result<(PolySpec, PolySpec, PolySpec)> {
    let t = explicit_poly(parse_rat_list(t)?)?;
    if t.degree() > n {
        return Err(Error::DegreeMismatch(vec![n, n, t.degree()]));
    }
    Ok((shifted_legendre(n), binomial_poly(n), t))
}

#[derive(Debug, Serialize)]
pub struct ApproxReport {
    pub s: u32,
    pub n: usize,
    pub t: Vec<String>,
    pub alpha: String,
    pub beta: String,
    pub theta_bound: String,
    pub theta_bound_sci: String,
    pub cstar: String,
    pub decimal: String,
}

fn approx_report(res: &ApproxResult, t: &PolySpec, digits: u32) -> Result<ApproxReport> {
    Ok(ApproxReport {
        s: res.s,
        n: res.n,
        t: t.coeffs().iter().map(rat_to_string).collect(),
        alpha: rat_to_string(&res.alpha),
        beta: rat_to_string(&res.beta),
        theta_bound: rat_to_string(&res.theta_bound),
        theta_bound_sci: format_scientific(&res.theta_bound, 6),
        cstar: rat_to_string(&res.cstar),
        decimal: render_decimal(&res.alpha, &res.beta, digits)?,
    })
}

fn approx_text(r: &ApproxReport) -> String {
    format!(
        "s = {}\nn = {}\nalpha = {}\nbeta = {}\ntheta_bound = {}\ndecimal = {}\n",
        r.s, r.n, r.alpha, r.beta, r.theta_bound_sci, r.decimal
    )
}

pub fn cmd_approx(args: &ApproxArgs) -> Result<Output> {
    let (p, q, t) = legendre_binomial_triple(args.n as usize, &args.t)?;
    let res = approximate(&p, &q, &t, args.s)?;
    let report = approx_report(&res, &t, args.digits)?;
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "s,n,alpha,beta,theta_bound,decimal\n{},{},{},{},{},{}\n",
            report.s, report.n, report.alpha, report.beta, report.theta_bound_sci, report.decimal
        ),
        Format::Text => approx_text(&report),
    };
    Ok((text, EXIT_OK))
}

#[derive(Debug, Serialize)]
pub struct TrialFailure {
    pub trial: u32,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub order: u32,
    pub term: String,
    pub row: String,
    pub oracle: String,
}

#[derive(Debug, Serialize)]
pub struct ConventionTally {
    pub variant: TranscriptionVariant,
    pub route: LowOrderRoute,
    pub rows_checked: usize,
    pub rows_equal: usize,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub s: u32,
    pub trials: u32,
    pub seed: u64,
    pub variant: TranscriptionVariant,
    pub route: LowOrderRoute,
    pub rows_checked: usize,
    pub all_equal: bool,
    pub failures: Vec<TrialFailure>,
    pub adjudication: Vec<ConventionTally>,
}

/// Coefficients for one random trial: degree in `0..=3`, entries in `[−3, 3]`.
pub fn random_triple(rng: &mut ChaCha8Rng) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
    let n = rng.gen_range(0..=3usize);
    let mut draw = || (0..=n).map(|_| rng.gen_range(-3..=3)).collect::<Vec<i64>>();
    (draw(), draw(), draw())
}

fn int_poly(v: &[i64]) -> PolySpec {
    explicit_poly(v.iter().map(|x| int(*x)).collect()).expect("nonempty")
}

pub fn run_verify(
    s: u32,
    trials: u32,
    seed: u64,
    variant: TranscriptionVariant,
) -> Result<VerifyReport> {
    let route = LowOrderRoute::PINNED;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut rows_checked = 0;
    let mut tallies: Vec<ConventionTally> = TranscriptionVariant::ALL
        .iter()
        .flat_map(|v| {
            LowOrderRoute::ALL.iter().map(move |r| ConventionTally {
                variant: *v,
                route: *r,
                rows_checked: 0,
                rows_equal: 0,
            })
        })
        .collect();
    for trial in 0..trials {
        let (a, b, c) = random_triple(&mut rng);
        let (p, q, t) = (int_poly(&a), int_poly(&b), int_poly(&c));
        let report = check_rows(&build_rows(&p, &q, &t, s)?, &p, &q, &t)?;
        for check in &report.rows {
            if let (Some(v), Some(r)) = (check.variant, check.route) {
                let tally = tallies
                    .iter_mut()
                    .find(|x| x.variant == v && x.route == r)
                    .expect("all conventions tallied");
                tally.rows_checked += 1;
                tally.rows_equal += usize::from(check.equal);
            }
            let selected = check.variant.is_none_or(|v| v == variant)
                && check.route.is_none_or(|r| r == route);
            if !selected {
                continue;
            }
            rows_checked += 1;
            if let Some(diff) = &check.first_difference {
                failures.push(TrialFailure {
                    trial,
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    order: check.order,
                    term: diff.term.clone(),
                    row: diff.row.clone(),
                    oracle: diff.oracle.clone(),
                });
            }
        }
    }
    if s < 5 {
        tallies.clear();
    }
    Ok(VerifyReport {
        s,
        trials,
        seed,
        variant,
        route,
        rows_checked,
        all_equal: failures.is_empty(),
        failures,
        adjudication: tallies,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Output> {
    let variant = args
        .variant
        .map_or(TranscriptionVariant::PINNED, Into::into);
    let report = run_verify(args.s, args.trials, args.seed, variant)?;
    let code = if report.all_equal {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("trial,order,term,row,oracle\n");
            for f in &report.failures {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    f.trial, f.order, f.term, f.row, f.oracle
                ));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "verify s<={} trials={} seed={} variant={}: {} rows checked, {} mismatches\n",
                report.s,
                report.trials,
                report.seed,
                report.variant,
                report.rows_checked,
                report.failures.len()
            );
            for t in &report.adjudication {
                s.push_str(&format!(
                    "  {} {:?}: {}/{} rows equal\n",
                    t.variant, t.route, t.rows_equal, t.rows_checked
                ));
            }
            for f in report.failures.iter().take(20) {
                s.push_str(&format!(
                    "  trial {} I_{}: {} row={} oracle={}\n",
                    f.trial, f.order, f.term, f.row, f.oracle
                ));
            }
            s
        }
    };
    Ok((text, code))
}

pub fn cmd_lemma2(args: &Lemma2Args) -> Output {
    let max_s = args
        .max_s
        .unwrap_or(args.max.min(u64::from(u32::MAX)) as u32);
    let report = check_lemma2(args.max, args.max, max_s);
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("identity,r,k,s\n");
            for f in &report.failures {
                s.push_str(&format!("{:?},{},{},{}\n", f.identity, f.r, f.k, f.s));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "lemma2 r<={} k<={} s<={}: {} instances, {} failures\n",
                args.max,
                args.max,
                max_s,
                report.checked,
                report.failures.len()
            );
            for (identity, count) in &report.checked_by_identity {
                s.push_str(&format!("  {identity:?}: {count}\n"));
            }
            s
        }
    };
    (text, code)
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub theta_bound: String,
    pub lemma_bound: String,
    pub abs_error: String,
}

/// Digits of ζ needed so that reference widths are negligible next to `scale`.
fn digits_below(scale: &Rat) -> u32 {
    if scale.is_zero() {
        return 30;
    }
    integer_digits(&scale.recip()) + 10
}

/// Certified upper bound on `|α ζ(2) + β − ζ(s)|`.
pub fn abs_error_bound(res: &ApproxResult) -> Result<Rat> {
    let digits = digits_below(&res.theta_bound).max(20);
    if digits > DEFAULT_DIGIT_BUDGET {
        return Err(Error::PrecisionBudget {
            requested: digits,
            budget: DEFAULT_DIGIT_BUDGET,
        });
    }
    let approx = zeta_reference(2, digits + integer_digits(&res.alpha))?
        .scale(&res.alpha)
        .shift(&res.beta);
    let zs = zeta_reference(res.s, digits)?;
    Ok(approx.add(&zs.scale(&int(-1))).mag())
}

pub fn table_rows(s: u32, n_from: u64, n_to: u64, t: &str) -> Result<Vec<TableRow>> {
    if n_from > n_to {
        return Err(Error::InvalidArgument(format!(
            "empty range {n_from}..={n_to}"
        )));
    }
    (n_from..=n_to)
        .map(|n| {
            let (p, q, t) = legendre_binomial_triple(n as usize, t)?;
            let res = approximate(&p, &q, &t, s)?;
            let lemma = t.cstar() * crate::numerics::pow2_neg(2 * n as u32);
            Ok(TableRow {
                n: n as usize,
                theta_bound: format_scientific(&res.theta_bound, 6),
                lemma_bound: format_scientific(&lemma, 6),
                abs_error: format_scientific(&abs_error_bound(&res)?, 6),
            })
        })
        .collect()
}

pub fn cmd_table(args: &TableArgs) -> Result<Output> {
    let rows = table_rows(args.s, args.n_from, args.n_to, &args.t)?;
    let text = match args.format {
        Format::Json => to_json(&rows),
        Format::Csv | Format::Text => {
            let sep = if args.format == Format::Csv {
                ","
            } else {
                "\t"
            };
            let mut s = ["n", "theta_bound", "lemma_bound", "abs_error"].join(sep);
            s.push('\n');
            for r in &rows {
                s.push_str(
                    &[
                        r.n.to_string(),
                        r.theta_bound.clone(),
                        r.lemma_bound.clone(),
                        r.abs_error.clone(),
                    ]
                    .join(sep),
                );
                s.push('\n');
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

#[derive(Debug, Serialize)]
pub struct DigitsReport {
    pub s: u32,
    pub digits: u32,
    pub n: usize,
    pub theta_bound: String,
    pub value: String,
}

/// Smallest `n` (found by doubling, then bisection) whose certified bound
/// allows `digits` correct decimals of ζ(s), and the rounded value.
///
/// The value is `α ζ(2) + β` rounded to `digits` places; it is reported only
/// when the whole enclosure `α ζ(2) + β ± θ` rounds to the same string.
pub fn run_digits(s: u32, digits: u32, t: &str, max_n: u64) -> Result<DigitsReport> {
    if digits > DEFAULT_DIGIT_BUDGET {
        return Err(Error::PrecisionBudget {
            requested: digits,
            budget: DEFAULT_DIGIT_BUDGET,
        });
    }
    let attempt = |n: u64| -> Result<Option<DigitsReport>> {
        let (p, q, tp) = legendre_binomial_triple(n as usize, t)?;
        let res = approximate(&p, &q, &tp, s)?;
        let enclosure = res.enclosure(digits + 10)?;
        let lo = crate::numerics::render_rational(enclosure.lo(), digits);
        let hi = crate::numerics::render_rational(enclosure.hi(), digits);
        Ok((lo == hi).then(|| DigitsReport {
            s,
            digits,
            n: n as usize,
            theta_bound: format_scientific(&res.theta_bound, 6),
            value: lo,
        }))
    };
    let mut failed = 0u64;
    let mut n = 1u64;
    let mut found = loop {
        if let Some(report) = attempt(n)? {
            break report;
        }
        failed = n;
        if n >= max_n {
            return Err(Error::PrecisionBudget {
                requested: digits,
                budget: u32::try_from(max_n).unwrap_or(u32::MAX),
            });
        }
        n = (2 * n).min(max_n);
    };
    let mut hi = n;
    while hi - failed > 1 {
        let mid = failed + (hi - failed) / 2;
        match attempt(mid)? {
            Some(report) => {
                hi = mid;
                found = report;
            }
            None => failed = mid,
        }
    }
    Ok(found)
}

pub fn cmd_digits(args: &DigitsArgs) -> Result<Output> {
    let report = run_digits(args.s, args.digits, &args.t, args.max_n)?;
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "s,digits,n,theta_bound,value\n{},{},{},{},{}\n",
            report.s, report.digits, report.n, report.theta_bound, report.value
        ),
        Format::Text => format!("{}\n", report.value),
    };
    Ok((text, EXIT_OK))
}

/// Exact agreement of the two solve routes for the Legendre/binomial system of order `s`.
pub fn solve_routes_agree(n: usize, s: u32) -> Result<bool> {
    let t = explicit_poly(vec![int(1)])?.padded_to(n)?;
    let sys = build_system(&shifted_legendre(n), &binomial_poly(n), &t, s)?;
    Ok(solve_back_substitution(&sys) == solve_determinant_ratio(&sys))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["zetaconst"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn approx_small_n() {
        let (code, out, _) = call(&[
            "approx", "--s", "3", "--n", "1", "--t", "1", "--format", "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let theta = crate::numerics::parse_rat(v["theta_bound"].as_str().unwrap()).unwrap();
        assert!(theta <= crate::numerics::rat(1, 4));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(
            call(&["approx", "--s", "4", "--n", "0", "--t", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["approx", "--s", "3", "--n", "2", "--t", "1/0"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["table", "--s", "3", "--n-from", "5", "--n-to", "4"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_single_row() {
        let report = run_verify(3, 1, 1, TranscriptionVariant::PINNED).unwrap();
        assert_eq!(report.rows_checked, 1);
        assert!(report.all_equal);
    }

    #[test]
    fn digits_of_zeta3() {
        let report = run_digits(3, 10, "1", 100).unwrap();
        assert_eq!(report.value, "1.2020569032");
    }

    #[test]
    fn deterministic_output() {
        let first = call(&[
            "verify", "--s", "5", "--trials", "3", "--seed", "9", "--format", "json",
        ]);
        let second = call(&[
            "verify", "--s", "5", "--trials", "3", "--seed", "9", "--format", "json",
        ]);
        assert_eq!(first, second);
        assert_eq!(first.0, 0);
    }
}
