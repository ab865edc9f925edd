//! `symform` — build, verify, decompose and bound arithmetic formulas for
//! elementary symmetric polynomials.
//!
//! Exit codes: 0 success, 1 property/bound/selftest failure, 2 usage or
//! precondition error, 3 parse error.

mod output;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;

use symform::bounds::{self, AlphaChoice, BoundConstants, BoundReport};
use symform::constructions::{
    ben_or, circuit_to_formula, depth_four_formula, monotone_dc, newton_circuit,
    newton_homogeneous_formula, power_sum_formula,
};
use symform::corpus::random_point;
use symform::decomposition::{
    balanced_decompose, form_decompose, validate_balanced, validate_form,
};
use symform::error::Error;
use symform::formula::parse_formula;
use symform::poly::{RingMode, VarId, Weighting};
use symform::rng::Rng;
use symform::{Poly, Rat, RatFormula};

use output::{
    emit_bound_reports, emit_build_stats, emit_decompose, emit_table, emit_verify, BalanceFit,
    BuildStats, DecomposeOutput, Format, TableRow, VerifyReport,
};

#[derive(Parser)]
#[command(
    name = "symform",
    about = "Formulas for elementary symmetric polynomials: constructions, verification, decompositions, bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Output format
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the primary artifact (formula/report) to this path as well
    #[arg(long, global = true)]
    out: Option<String>,
    /// Optional JSON config file with defaults for seed/format/noncommutative
    #[arg(long, global = true)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the formula constructions and report its stats
    Build {
        /// Which construction to build
        #[arg(long, value_parser = ["ben-or", "newton", "depth4", "monotone", "power-sum"])]
        construction: String,
        #[arg(long)]
        n: u32,
        /// Degree k (the exponent i for power-sum)
        #[arg(long)]
        k: u32,
        /// Expand and compare in the ordered (noncommutative) monomial ring
        #[arg(long)]
        noncommutative: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify the per-node properties of a formula file
    Verify {
        /// Path to an s-expression formula file
        file: String,
        /// Weights as `x1=2,x3=1`; defaults to weight 1 everywhere
        #[arg(long)]
        weights: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Decompose a formula into balanced or formed parts and validate
    Decompose {
        /// Path to an s-expression formula file
        file: String,
        #[arg(long, value_parser = ["balanced", "form"])]
        mode: String,
        /// Form parameter q (> 1)
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Product-depth bound d for form decomposition (defaults to the
        /// formula's product-depth)
        #[arg(long)]
        d: Option<u32>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate a bound or run a bound check
    Bounds {
        #[arg(long, value_parser = [
            "binomial-product", "binomial-sweep", "balanced-monomial",
            "formula-monomial", "form-monomial", "const-depth-monomial",
            "lower-size", "lower-size-depth", "monotone-upper",
            "recurrence", "partition",
        ])]
        which: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        /// Degree floor l for the form bound
        #[arg(long)]
        l: Option<f64>,
        #[arg(long)]
        minvar: Option<u64>,
        /// Fixed growth exponent alpha (> 0) for the recurrence check;
        /// omitted = per-point proof rule (exact)
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        k_max: Option<u64>,
        /// Comma-separated composition for the binomial product check
        #[arg(long)]
        n_parts: Option<String>,
        #[arg(long)]
        k_parts: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit the summary table of measured sizes and evaluated bounds
    Table {
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        k_min: u32,
        #[arg(long)]
        k_max: u32,
        /// Product-depth for the bounded-depth lower-bound row
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the full seeded verification suite
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Debug, Default, serde::Deserialize)]
struct FileConfig {
    seed: Option<u64>,
    format: Option<String>,
    noncommutative: Option<bool>,
}

fn load_config(path: &Option<String>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read config {p}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad config {p}: {e}")))
        }
    }
}

fn resolve_format(flag: Option<Format>, config: &FileConfig) -> Result<Format, CliError> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match config.format.as_deref() {
        None => Ok(Format::Text),
        Some("text") => Ok(Format::Text),
        Some("json") => Ok(Format::Json),
        Some("csv") => Ok(Format::Csv),
        Some(other) => Err(CliError::Usage(format!("unknown format {other:?} in config"))),
    }
}

/// Internal error type carrying the exit code.
enum CliError {
    Usage(String),
    Parse(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Parse(e.to_string()),
            Error::Precondition(_)
            | Error::ModeMismatch
            | Error::Structural(_)
            | Error::NotHomogeneous { .. }
            | Error::NotWHomogeneous { .. }
            | Error::MissingWeight(_)
            | Error::MissingVariable(_)
            | Error::MissingSubstitution(_)
            | Error::NodeNotFound(_)
            | Error::OrderedUnsupported(_) => CliError::Usage(e.to_string()),
            Error::Internal(_) => CliError::Failure(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verbose = std::env::var("SYMFORM_LOG").is_ok_and(|v| v == "debug");
    match run(cli, verbose) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}


/// Print to stdout, ignoring a closed pipe (e.g. `symform ... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn write_out(path: &Option<String>, content: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        fs::write(p, content).map_err(|e| CliError::Usage(format!("cannot write {p}: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli, verbose: bool) -> Result<bool, CliError> {
    match cli.command {
        Command::Build {
            construction,
            n,
            k,
            noncommutative,
            common,
        } => {
            let config = load_config(&common.config)?;
            let format = resolve_format(common.format, &config)?;
            let noncommutative = noncommutative || config.noncommutative.unwrap_or(false);
            let mode = if noncommutative {
                RingMode::Noncommutative
            } else {
                RingMode::Commutative
            };
            if noncommutative && matches!(construction.as_str(), "newton" | "depth4" | "power-sum")
            {
                return Err(CliError::Usage(format!(
                    "{construction} is a commutative construction; drop --noncommutative"
                )));
            }
            let formula = match construction.as_str() {
                "ben-or" => ben_or::<Rat>(n, k)?,
                "newton" => newton_homogeneous_formula::<Rat>(n, k)?,
                "depth4" => depth_four_formula::<Rat>(n, k)?,
                "monotone" => monotone_dc::<Rat>(n, k)?,
                "power-sum" => power_sum_formula::<Rat>(n, k)?,
                other => return Err(CliError::Usage(format!("unknown construction {other}"))),
            };
            let stats = build_stats(&construction, n, k, mode, &formula, verbose)?;
            write_out(&common.out, &formula.serialize())?;
            emit(&emit_build_stats(&stats, format));
            if format == Format::Text {
                emit(&formula.serialize());
            }
            Ok(stats.oracle_match && stats.properties_ok)
        }
        Command::Verify {
            file,
            weights,
            common,
        } => {
            let config = load_config(&common.config)?;
            let format = resolve_format(common.format, &config)?;
            let text = fs::read_to_string(&file)
                .map_err(|e| CliError::Usage(format!("cannot read {file}: {e}")))?;
            let formula: RatFormula = parse_formula(&text)?;
            if formula.size() > 20_000 {
                return Err(CliError::Usage(
                    "formula too large for exact per-node verification (> 20000 leaves)"
                        .to_string(),
                ));
            }
            let w = weights.map(|spec| parse_weights(&spec)).transpose()?;
            let properties = formula.verify_properties(w.as_ref())?;
            let stats = formula.analyze();
            let expansion = formula.expand(RingMode::Commutative);
            let report = VerifyReport {
                size: stats.size,
                depth: stats.depth,
                product_depth: stats.product_depth,
                formal_degree: stats.formal_degree,
                variables: stats.variables.len(),
                degree: expansion.degree().to_string(),
                monomial_count: expansion.monomial_count(),
                properties,
            };
            let rendered = emit_verify(&report, format);
            write_out(&common.out, &rendered)?;
            emit(&rendered);
            Ok(true)
        }
        Command::Decompose {
            file,
            mode,
            q,
            d,
            common,
        } => {
            let config = load_config(&common.config)?;
            let format = resolve_format(common.format, &config)?;
            let text = fs::read_to_string(&file)
                .map_err(|e| CliError::Usage(format!("cannot read {file}: {e}")))?;
            let formula: RatFormula = parse_formula(&text)?;
            let output = match mode.as_str() {
                "balanced" => {
                    let binary = formula.binarize();
                    let cert = balanced_decompose(&binary)?;
                    let validation = validate_balanced(&cert, &binary)?;
                    DecomposeOutput {
                        certificate: cert.summary(),
                        validation,
                    }
                }
                "form" => {
                    let depth = d.unwrap_or(formula.analyze().product_depth as u32).max(1);
                    let cert = form_decompose(&formula, q, depth)?;
                    let k = formula.formal_degree(formula.root());
                    let l = Rat::new(
                        (k as i64).into(),
                        ((2 * q as i64).pow(depth)).into(),
                    );
                    let validation = validate_form(&cert, &formula, q, &l)?;
                    DecomposeOutput {
                        certificate: cert.summary(),
                        validation,
                    }
                }
                other => return Err(CliError::Usage(format!("unknown mode {other}"))),
            };
            let rendered = emit_decompose(&output, format);
            write_out(&common.out, &rendered)?;
            emit(&rendered);
            Ok(output.validation.pass)
        }
        Command::Bounds {
            which,
            n,
            k,
            d,
            s,
            p,
            l,
            minvar,
            alpha,
            n_max,
            k_max,
            n_parts,
            k_parts,
            common,
        } => {
            let config = load_config(&common.config)?;
            let format = resolve_format(common.format, &config)?;
            let consts = BoundConstants::default();
            let reports = run_bounds(BoundsArgs {
                which,
                n,
                k,
                d,
                s,
                p,
                l,
                minvar,
                alpha,
                n_max,
                k_max,
                n_parts,
                k_parts,
                consts,
            })?;
            let rendered = emit_bound_reports(&reports, format);
            write_out(&common.out, &rendered)?;
            emit(&rendered);
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Table {
            n_min,
            n_max,
            k_min,
            k_max,
            d,
            common,
        } => {
            let config = load_config(&common.config)?;
            let format = resolve_format(common.format, &config)?;
            let rows = build_table(n_min, n_max, k_min, k_max, d)?;
            let rendered = emit_table(&rows, format);
            write_out(&common.out, &rendered)?;
            emit(&rendered);
            Ok(true)
        }
        Command::Selftest { seed, common } => {
            let config = load_config(&common.config)?;
            let _ = resolve_format(common.format, &config)?;
            let seed = seed.or(config.seed).unwrap_or(42);
            let outcome = symform::selftest::run_selftest(seed);
            write_out(&common.out, &outcome.report)?;
            {
                use std::io::Write;
                let mut out = std::io::stdout().lock();
                let _ = write!(out, "{}", outcome.report);
            }
            Ok(outcome.ok)
        }
    }
}

fn parse_weights(spec: &str) -> Result<Weighting, CliError> {
    let mut pairs = Vec::new();
    for item in spec.split(',') {
        let item = item.trim();
        let (var, weight) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("bad weight entry {item:?}")))?;
        let var = var
            .trim()
            .strip_prefix('x')
            .ok_or_else(|| CliError::Usage(format!("variables look like x3, got {var:?}")))?;
        let var: u32 = var
            .parse()
            .map_err(|_| CliError::Usage(format!("bad variable index {var:?}")))?;
        let weight: u32 = weight
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad weight {weight:?}")))?;
        pairs.push((VarId(var), weight));
    }
    Ok(Weighting::new(pairs)?)
}

/// Exact value of `S^k_n` at a point, via the one-row divide-free recurrence.
fn oracle_s_value(n: u32, k: u32, point: &BTreeMap<VarId, Rat>) -> Rat {
    use num_traits::{One, Zero};
    let mut row: Vec<Rat> = vec![Rat::zero(); k as usize + 1];
    row[0] = Rat::one();
    for i in 1..=n {
        let v = point.get(&VarId(i)).cloned().unwrap_or_else(Rat::zero);
        for j in (1..=k as usize).rev() {
            let add = row[j - 1].clone() * v.clone();
            row[j] += add;
        }
    }
    row[k as usize].clone()
}

fn oracle_p_value(n: u32, k: u32, point: &BTreeMap<VarId, Rat>) -> Rat {
    use num_traits::Zero;
    let mut acc = Rat::zero();
    for i in 1..=n {
        let v = point.get(&VarId(i)).cloned().unwrap_or_else(Rat::zero);
        let mut pow = v.clone();
        for _ in 1..k {
            pow *= v.clone();
        }
        acc += pow;
    }
    acc
}

fn build_stats(
    construction: &str,
    n: u32,
    k: u32,
    mode: RingMode,
    formula: &RatFormula,
    verbose: bool,
) -> Result<BuildStats, CliError> {
    let consts = BoundConstants::default();
    let stats = formula.analyze();
    // oracle comparison: full expansion at desk scale, seeded point
    // evaluation beyond it
    let expansion_feasible = stats.size <= 300_000
        && bounds::binomial(n as u64, k as u64)
            .to_f64()
            .unwrap_or(f64::INFINITY)
            <= 2e6;
    let (oracle_match, oracle_method) = if expansion_feasible {
        let oracle: Poly = match construction {
            "power-sum" => symform::poly::oracle_p::<Rat>(n, k)?,
            _ => symform::poly::oracle_s::<Rat>(n, k, mode),
        };
        (formula.expand(mode) == oracle, "expand".to_string())
    } else {
        let mut rng = Rng::new(0x4f5241434c45);
        let mut ok = true;
        for _ in 0..3 {
            let point = random_point(&mut rng, n);
            let expected = match construction {
                "power-sum" => oracle_p_value(n, k, &point),
                _ => oracle_s_value(n, k, &point),
            };
            if formula.eval(&point)? != expected {
                ok = false;
                break;
            }
        }
        (ok, "eval".to_string())
    };
    if verbose {
        eprintln!("oracle check method: {oracle_method}, match: {oracle_match}");
    }
    let report = formula.verify_properties(None)?;
    let mut properties = BTreeMap::new();
    properties.insert("homogeneous".to_string(), report.homogeneous.ok);
    properties.insert("multilinear".to_string(), report.multilinear.ok);
    properties.insert(
        "syntactically_multilinear".to_string(),
        report.syntactically_multilinear.ok,
    );
    properties.insert("monotone".to_string(), report.monotone.ok);
    let mut balance_fit = None;
    let (promised_ok, size_cap, size_within): (bool, Option<String>, Option<bool>) =
        match construction {
            "ben-or" => {
                let cap = 4 * (n as u64 + 1).pow(2);
                let within = stats.size <= cap;
                (
                    stats.product_depth == 1 && report.multilinear.ok && within,
                    Some(cap.to_string()),
                    Some(within),
                )
            }
            "newton" => {
                let circuit = newton_circuit::<Rat>(k);
                let weights = Weighting::ascending(k);
                let fz = circuit_to_formula(&circuit, &weights)?;
                let (a, b) = consts.balance_size_exponent;
                let s = circuit.size() as f64;
                let cap = (s * k as f64).powf(a * (k as f64).log2() + b);
                let within = (fz.size() as f64) <= cap;
                balance_fit = Some(BalanceFit {
                    circuit_size: circuit.size(),
                    balanced_formula_size: fz.size(),
                    exponent_a: a,
                    exponent_b: b,
                    cap,
                    within_cap: within,
                });
                (report.homogeneous.ok && within, None, None)
            }
            "depth4" => {
                let cap = bounds::partition_function(k)? * (k as u128 * n as u128 + 1);
                let within = stats.size as u128 <= cap;
                (
                    stats.product_depth <= 2 && report.homogeneous.ok && within,
                    Some(cap.to_string()),
                    Some(within),
                )
            }
            "monotone" => {
                let (cap, within) = if k >= 2 {
                    let cap = bounds::monotone_upper_bound_ceil(n as u64, k as u64, &consts)?;
                    (Some(cap.to_string()), stats.size as u128 <= cap)
                } else {
                    (Some(n.to_string()), stats.size == n as u64)
                };
                (
                    report.monotone.ok
                        && report.multilinear.ok
                        && report.homogeneous.ok
                        && within,
                    cap,
                    Some(within),
                )
            }
            "power-sum" => {
                let cap = k as u64 * n as u64;
                let within = stats.size == cap;
                (
                    report.homogeneous.ok && within,
                    Some(cap.to_string()),
                    Some(within),
                )
            }
            _ => (true, None, None),
        };
    Ok(BuildStats {
        construction: construction.to_string(),
        n,
        k,
        ring_mode: match mode {
            RingMode::Commutative => "commutative".to_string(),
            RingMode::Noncommutative => "noncommutative".to_string(),
        },
        size: stats.size,
        depth: stats.depth,
        product_depth: stats.product_depth,
        formal_degree: stats.formal_degree,
        oracle_match,
        oracle_method,
        properties_ok: promised_ok,
        properties,
        size_cap,
        size_within_cap: size_within,
        balance_fit,
    })
}

struct BoundsArgs {
    which: String,
    n: Option<u64>,
    k: Option<u64>,
    d: Option<u32>,
    s: Option<u64>,
    p: Option<u64>,
    l: Option<f64>,
    minvar: Option<u64>,
    alpha: Option<f64>,
    n_max: Option<u64>,
    k_max: Option<u64>,
    n_parts: Option<String>,
    k_parts: Option<String>,
    consts: BoundConstants,
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required for this check")))
}

fn parse_parts(spec: &str) -> Result<Vec<u64>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad list entry {s:?}")))
        })
        .collect()
}

fn value_report(name: &str, inputs: &[(&str, String)], value: String) -> BoundReport {
    let mut report = BoundReport::new(name);
    for (k, v) in inputs {
        report = report.input(k, v);
    }
    report.bound = value;
    report.cases_checked = 1;
    report
}

fn run_bounds(args: BoundsArgs) -> Result<Vec<BoundReport>, CliError> {
    let c = &args.consts;
    let reports = match args.which.as_str() {
        "binomial-product" => {
            let n_parts = parse_parts(&need(args.n_parts, "n-parts")?)?;
            let k_parts = parse_parts(&need(args.k_parts, "k-parts")?)?;
            vec![bounds::binomial_product_check(&n_parts, &k_parts)?]
        }
        "binomial-sweep" => {
            let n_max = args.n_max.unwrap_or(14);
            let k_max = args.k_max.unwrap_or(7);
            vec![bounds::binomial_product_sweep(n_max, k_max)]
        }
        "balanced-monomial" => {
            let (n, k, minvar) = (
                need(args.n, "n")?,
                need(args.k, "k")?,
                need(args.minvar, "minvar")?,
            );
            let v = bounds::balanced_monomial_bound(k, n, minvar, c)?;
            vec![value_report(
                "balanced-monomial-bound",
                &[
                    ("n", n.to_string()),
                    ("k", k.to_string()),
                    ("minvar", minvar.to_string()),
                ],
                format!("{v:.6}"),
            )]
        }
        "formula-monomial" => {
            let (n, k, s) = (need(args.n, "n")?, need(args.k, "k")?, need(args.s, "s")?);
            let v = bounds::formula_monomial_bound(s, k, n, c)?;
            vec![value_report(
                "formula-monomial-bound",
                &[
                    ("n", n.to_string()),
                    ("k", k.to_string()),
                    ("s", s.to_string()),
                ],
                format!("{v:.6}"),
            )]
        }
        "form-monomial" => {
            let (n, k, p, l, minvar) = (
                need(args.n, "n")?,
                need(args.k, "k")?,
                need(args.p, "p")?,
                need(args.l, "l")?,
                need(args.minvar, "minvar")?,
            );
            let v = bounds::form_monomial_bound(k, n, p, l, minvar, c)?;
            vec![value_report(
                "form-monomial-bound",
                &[
                    ("n", n.to_string()),
                    ("k", k.to_string()),
                    ("p", p.to_string()),
                    ("l", l.to_string()),
                    ("minvar", minvar.to_string()),
                ],
                format!("{v:.6}"),
            )]
        }
        "const-depth-monomial" => {
            let (n, k, s, d) = (
                need(args.n, "n")?,
                need(args.k, "k")?,
                need(args.s, "s")?,
                need(args.d, "d")?,
            );
            let v = bounds::const_depth_monomial_bound(s, k, n, d, c)?;
            vec![value_report(
                "const-depth-monomial-bound",
                &[
                    ("n", n.to_string()),
                    ("k", k.to_string()),
                    ("s", s.to_string()),
                    ("d", d.to_string()),
                ],
                format!("{v:.6}"),
            )]
        }
        "lower-size" => {
            let (n, k) = (need(args.n, "n")?, need(args.k, "k")?);
            let lb = bounds::lower_bound_size(n, k, c);
            let mut r = value_report(
                "lower-bound-size",
                &[("n", n.to_string()), ("k", k.to_string())],
                format!("{:.6}", lb.value),
            );
            r.trivial = lb.trivial;
            vec![r]
        }
        "lower-size-depth" => {
            let (n, k, d) = (need(args.n, "n")?, need(args.k, "k")?, need(args.d, "d")?);
            let lb = bounds::lower_bound_size_depth(n, k, d, c);
            let mut r = value_report(
                "lower-bound-size-depth",
                &[
                    ("n", n.to_string()),
                    ("k", k.to_string()),
                    ("d", d.to_string()),
                ],
                format!("{:.6}", lb.value),
            );
            r.trivial = lb.trivial;
            vec![r]
        }
        "monotone-upper" => {
            let (n, k) = (need(args.n, "n")?, need(args.k, "k")?);
            let v = bounds::monotone_upper_bound(n, k, c)?;
            vec![value_report(
                "monotone-upper-bound",
                &[("n", n.to_string()), ("k", k.to_string())],
                format!("{v:.6}"),
            )]
        }
        "recurrence" => {
            let n_max = args.n_max.unwrap_or(1024);
            let k_max = args.k_max.unwrap_or(10) as u32;
            let alpha = match args.alpha {
                Some(a) => AlphaChoice::Fixed(a),
                None => AlphaChoice::ProofRule,
            };
            vec![bounds::monotone_size_recurrence_check(
                &alpha, n_max, k_max, c,
            )?]
        }
        "partition" => {
            let k = need(args.k, "k")? as u32;
            let v = bounds::partition_function(k)?;
            let dp = bounds::partition_function_dp(k);
            let mut r = value_report("partition-function", &[("k", k.to_string())], v.to_string());
            r.compared = Some(dp.to_string());
            r.pass = v == dp;
            vec![r]
        }
        other => return Err(CliError::Usage(format!("unknown bound check {other}"))),
    };
    Ok(reports)
}

fn build_table(
    n_min: u32,
    n_max: u32,
    k_min: u32,
    k_max: u32,
    d: u32,
) -> Result<Vec<TableRow>, CliError> {
    let consts = BoundConstants::default();
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        for k in k_min..=k_max.min(n) {
            if k == 0 {
                continue;
            }
            let ben = ben_or::<Rat>(n, k)?;
            rows.push(TableRow {
                n,
                k,
                model: "depth-three".to_string(),
                measured_size: Some(ben.size()),
                upper_bound: Some((4 * (n as u64 + 1).pow(2)).to_string()),
                lower_bound: None,
                lower_trivial: None,
            });
            let newton = newton_homogeneous_formula::<Rat>(n, k)?;
            rows.push(TableRow {
                n,
                k,
                model: "homogeneous".to_string(),
                measured_size: Some(newton.size()),
                upper_bound: None,
                lower_bound: None,
                lower_trivial: None,
            });
            let monotone = monotone_dc::<Rat>(n, k)?;
            let upper = if k >= 2 {
                Some(
                    bounds::monotone_upper_bound_ceil(n as u64, k as u64, &consts)?.to_string(),
                )
            } else {
                Some(n.to_string())
            };
            let lb = bounds::lower_bound_size(n as u64, k as u64, &consts);
            rows.push(TableRow {
                n,
                k,
                model: "homogeneous-multilinear".to_string(),
                measured_size: Some(monotone.size()),
                upper_bound: upper,
                lower_bound: Some(format!("{:.1}", lb.value)),
                lower_trivial: Some(lb.trivial),
            });
            let depth4 = depth_four_formula::<Rat>(n, k)?;
            let cap = bounds::partition_function(k)? * (k as u128 * n as u128 + 1);
            rows.push(TableRow {
                n,
                k,
                model: "homogeneous-depth-four".to_string(),
                measured_size: Some(depth4.size()),
                upper_bound: Some(cap.to_string()),
                lower_bound: None,
                lower_trivial: None,
            });
            let lbd = bounds::lower_bound_size_depth(n as u64, k as u64, d, &consts);
            rows.push(TableRow {
                n,
                k,
                model: format!("product-depth-{d}"),
                measured_size: if d == 2 { Some(depth4.size()) } else { None },
                upper_bound: None,
                lower_bound: Some(format!("{:.1}", lbd.value)),
                lower_trivial: Some(lbd.trivial),
            });
        }
    }
    Ok(rows)
}
