//! Command-line driver over the computation library.
//!
//! One subcommand per task: `bnum` evaluates a single trigonometric
//! Bombieri number, `scan` sweeps a whole (m, n) grid in parallel and
//! emits a CSV or JSON report, `dieudonne` and `starlike` classify
//! explicit polynomials, `family` certifies the extremal coefficient
//! family by roots, sampled univalence, or starlikeness, `qn` prints the
//! exact second-variation coefficients, `qq` evaluates the variation
//! functional by the closed or the quadrature route, `lemma3` runs the
//! normalized step-inequality grid check, and `phi-plot` writes ratio
//! samples for external plotting.
//!
//! Exit codes: 0 success/PASS, 1 FAIL or NOT_UNIVALENT, 2 usage or
//! configuration error, 3 UNCERTAIN.

pub mod report;
pub mod scanner;

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use bombieri_core::scan::{conjecture_report, scan_pair, ScanVerdict, DEFAULT_SCAN_TOL};
use bombieri_core::trig::{verify_step_inequality, MinimizeConfig, RatioProfile};
use bombieri_core::univalence::{
    dieudonne_check, family_poly, family_root_modulus, starlike_check, zeros_in_unit_disk,
    ComplexPolynomial, StarlikeError, UnivalenceStatus, UnivalenceVerdict, DEFAULT_MARGIN_TOL,
};
use bombieri_core::variation::{
    leung_qn, q_n_closed, second_variation_closed, second_variation_numeric, PhiWeight,
    QuadratureConfig, VariationError,
};
use bombieri_core::Complex64;

/// Exit code for a successful or passing run.
pub const EXIT_PASS: i32 = 0;
/// Exit code for a definite negative outcome (FAIL, NOT_UNIVALENT).
pub const EXIT_FAIL: i32 = 1;
/// Exit code for usage and configuration errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code when the computation cannot classify its input.
pub const EXIT_UNCERTAIN: i32 = 3;

#[derive(Parser)]
#[command(
    name = "bombieri",
    version,
    about = "Trigonometric Bombieri numbers, univalence checks, and second-variation tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one trigonometric Bombieri number B_mn.
    #[command(name = "bnum")]
    Bnum {
        /// Outer index m (m > n).
        m: u32,
        /// Inner index n (2 <= n < m).
        n: u32,
        /// Interior grid points per unit of m for the initial sweep.
        #[arg(long = "grid-mult", default_value_t = 64)]
        grid_mult: u32,
        /// Verdict tolerance against the candidate value.
        #[arg(long = "tol", default_value_t = DEFAULT_SCAN_TOL)]
        tol: f64,
        /// Emit the record as a JSON object instead of text.
        #[arg(long = "json")]
        json: bool,
    },
    /// Sweep all pairs 2 <= n < m <= M and report the verdicts.
    #[command(name = "scan")]
    Scan {
        /// Upper bound on m.
        #[arg(long = "max", default_value_t = 80)]
        max: u32,
        /// Write the report to this file instead of standard output.
        #[arg(long = "out")]
        out: Option<PathBuf>,
        /// Report format.
        #[arg(long = "format", value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        /// Worker threads (default: machine parallelism).
        #[arg(long = "threads")]
        threads: Option<usize>,
        /// Verdict tolerance against the candidate value.
        #[arg(long = "tol", default_value_t = DEFAULT_SCAN_TOL)]
        tol: f64,
    },
    /// Sample Dieudonne's criterion for a normalized polynomial.
    #[command(name = "dieudonne")]
    Dieudonne {
        /// Comma-separated coefficients of z, z^2, ... (constant term is
        /// zero); entries are real or complex literals like 1, -0.25, 1+2i.
        #[arg(long = "coeffs", allow_hyphen_values = true)]
        coeffs: String,
        /// Number of angle samples in (0, pi).
        #[arg(long = "samples", default_value_t = 4096)]
        samples: usize,
    },
    /// Sample the starlikeness criterion for a polynomial vanishing at 0.
    #[command(name = "starlike")]
    Starlike {
        /// Comma-separated coefficients of z, z^2, ... (constant term is
        /// zero); entries are real or complex literals like 1, -0.25, 1+2i.
        #[arg(long = "coeffs", allow_hyphen_values = true)]
        coeffs: String,
        /// Number of boundary samples.
        #[arg(long = "samples", default_value_t = 4096)]
        samples: usize,
    },
    /// Certify the extremal coefficient family member for an index n.
    #[command(name = "family")]
    Family {
        /// Family index (n >= 2).
        #[arg(long = "n")]
        n: u32,
        /// Which certificate to compute.
        #[arg(long = "check", value_enum)]
        check: FamilyCheck,
    },
    /// Print the exact second-variation coefficients q_n.
    #[command(name = "qn")]
    Qn {
        /// Largest index to tabulate.
        #[arg(long = "max")]
        max: u32,
        /// Print only the 4 q_n normalization column.
        #[arg(long = "leung")]
        leung: bool,
    },
    /// Evaluate the second-variation functional Q(w).
    #[command(name = "qq")]
    Qq {
        /// Argument w; both routes require w > -1/4.
        #[arg(long = "w", allow_negative_numbers = true)]
        w: f64,
        /// Use adaptive quadrature instead of the closed form.
        #[arg(long = "numeric")]
        numeric: bool,
        /// Perturbation weight: `linear` for phi(u) = 1 - u, or `const:C`
        /// for the constant weight C (quadrature route only).
        #[arg(long = "phi", value_parser = parse_phi, default_value = "linear")]
        phi: PhiSpec,
    },
    /// Grid check of the normalized step inequality between n and n + 2.
    #[command(name = "lemma3")]
    Lemma3 {
        /// Lower index of the step (n >= 2).
        #[arg(long = "n")]
        n: u32,
        /// Interior grid points (at least 1000).
        #[arg(long = "grid", default_value_t = 100_000)]
        grid: usize,
    },
    /// Write t, phi_mn(t) samples with endpoint-limit rows to a CSV file.
    #[command(name = "phi-plot")]
    PhiPlot {
        /// Outer index m (m > n).
        #[arg(long = "m")]
        m: u32,
        /// Inner index n (2 <= n < m).
        #[arg(long = "n")]
        n: u32,
        /// Interior samples (at least 100).
        #[arg(long = "samples", default_value_t = 4096)]
        samples: usize,
        /// Output file path.
        #[arg(long = "out")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyCheck {
    Roots,
    Dieudonne,
    Starlike,
}

/// Weight selector of the `qq` subcommand.
#[derive(Clone, Copy, PartialEq, Debug)]
enum PhiSpec {
    Linear,
    Const(f64),
}

fn parse_phi(text: &str) -> Result<PhiSpec, String> {
    if text == "linear" {
        return Ok(PhiSpec::Linear);
    }
    if let Some(rest) = text.strip_prefix("const:") {
        let value: f64 = rest
            .parse()
            .map_err(|_| format!("bad weight constant `{rest}`"))?;
        if !value.is_finite() {
            return Err("weight constant must be finite".to_string());
        }
        return Ok(PhiSpec::Const(value));
    }
    Err(format!("unknown weight `{text}` (expected `linear` or `const:C`)"))
}

/// Parses and dispatches one invocation; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests land here too; they are not
            // errors and keep exit code 0.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Bnum {
            m,
            n,
            grid_mult,
            tol,
            json,
        } => cmd_bnum(m, n, grid_mult, tol, json),
        Command::Scan {
            max,
            out,
            format,
            threads,
            tol,
        } => cmd_scan(max, out.as_deref(), format, threads, tol),
        Command::Dieudonne { coeffs, samples } => cmd_dieudonne(&coeffs, samples),
        Command::Starlike { coeffs, samples } => cmd_starlike(&coeffs, samples),
        Command::Family { n, check } => cmd_family(n, check),
        Command::Qn { max, leung } => cmd_qn(max, leung),
        Command::Qq { w, numeric, phi } => cmd_qq(w, numeric, phi),
        Command::Lemma3 { n, grid } => cmd_lemma3(n, grid),
        Command::PhiPlot { m, n, samples, out } => cmd_phi_plot(m, n, samples, &out),
    }
}

fn usage_error(message: &dyn Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

/// Parses a comma-separated coefficient list "c1,c2,..." giving the
/// coefficients of z, z^2, ...; the constant term is implicitly zero.
/// Whitespace inside entries is ignored, so "1, -0.5, 1+2i" works.
fn parse_coeff_list(list: &str) -> Result<Vec<Complex64>, String> {
    let mut out = Vec::new();
    for (i, raw) in list.split(',').enumerate() {
        let compact: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(format!("empty coefficient at position {}", i + 1));
        }
        let value = Complex64::from_str(&compact)
            .map_err(|_| format!("could not parse coefficient `{}`", raw.trim()))?;
        out.push(value);
    }
    Ok(out)
}

/// Builds z*(c1 + c2 z + ...) from a parsed list.
fn poly_from_tail(tail: Vec<Complex64>) -> ComplexPolynomial {
    let mut coeffs = vec![Complex64::ZERO];
    coeffs.extend(tail);
    ComplexPolynomial::new(coeffs)
}

fn cmd_bnum(m: u32, n: u32, grid_mult: u32, tol: f64, json: bool) -> i32 {
    let cfg = MinimizeConfig {
        grid_mult,
        ..MinimizeConfig::default()
    };
    let record = match scan_pair(m, n, &cfg, tol) {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    if json {
        println!("{}", report::record_json(&record));
    } else {
        println!("B = {}", report::float17(record.b));
        println!(
            "expected = {} = {}",
            record.expected,
            report::float17(record.expected_f64())
        );
        println!("verdict = {}", record.verdict);
        println!("class = {}", record.class);
        println!("argmin_t = {}", report::argmin_text(&record.argmin));
        println!("margin = {}", report::margin_text(record.margin));
    }
    if record.verdict == ScanVerdict::Uncertain {
        EXIT_UNCERTAIN
    } else {
        EXIT_PASS
    }
}

fn cmd_scan(
    max: u32,
    out: Option<&Path>,
    format: ReportFormat,
    threads: Option<usize>,
    tol: f64,
) -> i32 {
    let cfg = MinimizeConfig::default();
    let records = match scanner::parallel_scan(max, &cfg, tol, threads) {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    let body = match format {
        ReportFormat::Csv => report::records_csv(&records),
        ReportFormat::Json => report::records_json(&records),
    };
    if let Some(path) = out {
        if let Err(e) = fs::write(path, &body) {
            eprintln!("error: could not write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    } else {
        print!("{body}");
    }
    // The prediction comparison goes to the diagnostic stream so the
    // report itself stays machine-readable.
    eprintln!("{}", conjecture_report(&records));
    EXIT_PASS
}

fn print_univalence(verdict: &UnivalenceVerdict) -> i32 {
    println!("status = {}", report::status_text(verdict.status));
    println!("worst_margin = {}", report::float17(verdict.worst_margin));
    println!("samples = {}", verdict.samples);
    if let Some(t) = verdict.witness_t {
        println!("witness_t = {}", report::float17(t));
    }
    match verdict.status {
        UnivalenceStatus::UnivalentSampled => EXIT_PASS,
        UnivalenceStatus::NotUnivalent => EXIT_FAIL,
        UnivalenceStatus::Uncertain => EXIT_UNCERTAIN,
    }
}

fn cmd_dieudonne(list: &str, samples: usize) -> i32 {
    let tail = match parse_coeff_list(list) {
        Ok(t) => t,
        Err(msg) => return usage_error(&msg),
    };
    let p = poly_from_tail(tail);
    match dieudonne_check(&p, samples, DEFAULT_MARGIN_TOL) {
        Ok(verdict) => print_univalence(&verdict),
        Err(e) => usage_error(&e),
    }
}

fn print_starlike(outcome: Result<bombieri_core::univalence::StarlikeReport, StarlikeError>) -> i32 {
    match outcome {
        Ok(rep) => {
            println!(
                "status = {}",
                if rep.pass { "STARLIKE_SAMPLED" } else { "NOT_STARLIKE" }
            );
            println!("worst_margin = {}", report::float17(rep.worst_margin));
            println!("witness_theta = {}", report::float17(rep.witness_theta));
            println!("samples = {}", rep.samples);
            if rep.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(StarlikeError::Pole { min_root_modulus }) => {
            println!("status = NOT_STARLIKE");
            println!(
                "reason = zero of f(z)/z in the closed disk (modulus {})",
                report::float17(min_root_modulus)
            );
            EXIT_FAIL
        }
        Err(StarlikeError::Degenerate) => {
            println!("status = UNCERTAIN");
            EXIT_UNCERTAIN
        }
        Err(e @ StarlikeError::NotVanishingAtZero) => usage_error(&e),
    }
}

fn cmd_starlike(list: &str, samples: usize) -> i32 {
    let tail = match parse_coeff_list(list) {
        Ok(t) => t,
        Err(msg) => return usage_error(&msg),
    };
    let p = poly_from_tail(tail);
    print_starlike(starlike_check(&p, samples))
}

fn cmd_family(n: u32, check: FamilyCheck) -> i32 {
    if n < 2 {
        return usage_error(&"the family is defined for n >= 2");
    }
    let p = family_poly(n);
    match check {
        FamilyCheck::Roots => {
            let reduced = ComplexPolynomial::new(p.coeffs()[1..].to_vec());
            let rep = match zeros_in_unit_disk(&reduced) {
                Ok(r) => r,
                Err(_) => {
                    println!("status = UNCERTAIN");
                    return EXIT_UNCERTAIN;
                }
            };
            let closed = family_root_modulus(n);
            let difference = (rep.min_root_modulus - closed).abs();
            let pass = rep.count_inside == 0 && difference <= 1e-8;
            println!("zeros_inside = {}", rep.count_inside);
            println!("min_root_modulus = {}", report::float17(rep.min_root_modulus));
            println!("closed_form = {}", report::float17(closed));
            println!("difference = {}", report::float17(difference));
            println!("status = {}", if pass { "PASS" } else { "FAIL" });
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        FamilyCheck::Dieudonne => {
            // Sample at the minimum density the check accepts. The family's
            // worst margin sits at the smallest sampled angle and decays to
            // zero as t -> 0 (the nonunit roots approach the circle from
            // outside), so denser sweeps only walk further into that corner
            // and eventually report UNCERTAIN about a limit, not a defect.
            let samples = 64 * p.degree();
            match dieudonne_check(&p, samples, DEFAULT_MARGIN_TOL) {
                Ok(verdict) => print_univalence(&verdict),
                Err(e) => usage_error(&e),
            }
        }
        FamilyCheck::Starlike => print_starlike(starlike_check(&p, 4096)),
    }
}

fn cmd_qn(max: u32, leung: bool) -> i32 {
    if max < 2 {
        return usage_error(&"the table starts at n = 2; pass --max 2 or more");
    }
    if leung {
        println!("n,4q_n");
        for n in 2..=max {
            println!("{n},{}", leung_qn(n));
        }
    } else {
        println!("n,q_n,4q_n");
        for n in 2..=max {
            println!("{n},{},{}", q_n_closed(n), leung_qn(n));
        }
    }
    EXIT_PASS
}

fn cmd_qq(w: f64, numeric: bool, phi: PhiSpec) -> i32 {
    let result = if numeric {
        let weight = match phi {
            PhiSpec::Linear => PhiWeight::Linear,
            // A constant weight is the two-sample flat table.
            PhiSpec::Const(c) => PhiWeight::Tabulated(vec![c, c]),
        };
        second_variation_numeric(w, &weight, &QuadratureConfig::default())
    } else {
        if phi != PhiSpec::Linear {
            return usage_error(&"the closed form covers only the linear weight; add --numeric");
        }
        second_variation_closed(w)
    };
    match result {
        Ok(q) => {
            println!("Q = {}", report::float17(q));
            println!("route = {}", if numeric { "numeric" } else { "closed" });
            match phi {
                PhiSpec::Linear => println!("phi = linear"),
                PhiSpec::Const(c) => println!("phi = const:{c}"),
            }
            EXIT_PASS
        }
        Err(VariationError::Convergence(e)) => {
            eprintln!("quadrature did not converge: {e}");
            EXIT_UNCERTAIN
        }
        Err(e) => usage_error(&e),
    }
}

fn cmd_lemma3(n: u32, grid: usize) -> i32 {
    let rep = match verify_step_inequality(n, grid) {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    println!(
        "step inequality for n = {} against n + 2 on {} grid points",
        rep.n, rep.grid_points
    );
    println!(
        "worst_ratio_margin = {} at t = {}",
        report::float17(rep.worst_ratio_margin),
        report::float17(rep.ratio_witness_t)
    );
    println!(
        "worst_form_value = {} at t = {}",
        report::float17(rep.worst_form_value),
        report::float17(rep.form_witness_t)
    );
    println!("status = {}", if rep.pass { "PASS" } else { "FAIL" });
    if rep.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_phi_plot(m: u32, n: u32, samples: usize, out: &Path) -> i32 {
    // Validate everything before touching the filesystem, so a rejected
    // invocation leaves no partial file behind.
    if samples < 100 {
        return usage_error(&"phi-plot needs at least 100 samples");
    }
    let profile = match RatioProfile::new(m, n) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let mut body = String::with_capacity(48 * (samples + 3));
    body.push_str("t,phi\n");
    body.push_str(&format!(
        "0,{}\n",
        report::float17(profile.limit0().to_f64().unwrap_or(f64::NAN))
    ));
    let h = std::f64::consts::PI / (samples as f64 + 1.0);
    for j in 1..=samples {
        let t = j as f64 * h;
        match profile.eval(t) {
            Ok(v) => body.push_str(&format!(
                "{},{}\n",
                report::float17(t),
                report::float17(v)
            )),
            Err(e) => return usage_error(&e),
        }
    }
    let pi_text = if profile.limit_pi().is_infinite() {
        "inf".to_string()
    } else {
        report::float17(profile.limit_pi().as_f64())
    };
    body.push_str(&format!("pi,{pi_text}\n"));
    if let Err(e) = fs::write(out, &body) {
        eprintln!("error: could not write {}: {e}", out.display());
        return EXIT_USAGE;
    }
    println!("wrote {} data rows to {}", samples + 2, out.display());
    EXIT_PASS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_list_forms() {
        let parsed = parse_coeff_list("1, -0.5, 1+2i, 2e-3i").unwrap();
        assert_eq!(parsed[0], Complex64::new(1.0, 0.0));
        assert_eq!(parsed[1], Complex64::new(-0.5, 0.0));
        assert_eq!(parsed[2], Complex64::new(1.0, 2.0));
        assert_eq!(parsed[3], Complex64::new(0.0, 2e-3));
        assert!(parse_coeff_list("1,,2").is_err());
        assert!(parse_coeff_list("nope").is_err());
    }

    #[test]
    fn phi_spec_forms() {
        assert_eq!(parse_phi("linear").unwrap(), PhiSpec::Linear);
        assert_eq!(parse_phi("const:2.5").unwrap(), PhiSpec::Const(2.5));
        assert!(parse_phi("const:abc").is_err());
        assert!(parse_phi("quadratic").is_err());
    }

    #[test]
    fn run_reports_usage_errors() {
        assert_eq!(run(["bombieri", "bnum", "3"]), EXIT_USAGE);
        assert_eq!(run(["bombieri", "nonsense"]), EXIT_USAGE);
        assert_eq!(run(["bombieri", "qq", "--w", "-0.5"]), EXIT_USAGE);
    }

    #[test]
    fn run_computes_simple_cases() {
        assert_eq!(run(["bombieri", "bnum", "3", "2"]), EXIT_PASS);
        assert_eq!(run(["bombieri", "qq", "--w", "2"]), EXIT_PASS);
        assert_eq!(run(["bombieri", "qn", "--max", "3"]), EXIT_PASS);
        assert_eq!(run(["bombieri", "dieudonne", "--coeffs", "1,1"]), EXIT_FAIL);
    }
}
