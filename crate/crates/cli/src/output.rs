//! Output shaping: text, JSON and RFC-4180-style CSV renderings of the
//! reports the subcommands produce.

use std::collections::BTreeMap;

use serde::Serialize;
use symform::bounds::BoundReport;
use symform::decomposition::CertificateSummary;
use symform::formula::PropertyReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One build's stats record.
#[derive(Debug, Clone, Serialize)]
pub struct BuildStats {
    pub construction: String,
    pub n: u32,
    pub k: u32,
    pub ring_mode: String,
    pub size: u64,
    pub depth: u64,
    pub product_depth: u64,
    pub formal_degree: u64,
    pub oracle_match: bool,
    pub oracle_method: String,
    pub properties_ok: bool,
    pub properties: BTreeMap<String, bool>,
    pub size_cap: Option<String>,
    pub size_within_cap: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balance_fit: Option<BalanceFit>,
}

/// Auditing record for the balanced Newton construction: the measured sizes
/// against the pinned exponent cap `(s*k)^(a*log2 k + b)`.
#[derive(Debug, Clone, Serialize)]
pub struct BalanceFit {
    pub circuit_size: u64,
    pub balanced_formula_size: u64,
    pub exponent_a: f64,
    pub exponent_b: f64,
    pub cap: f64,
    pub within_cap: bool,
}

pub fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_escape(f))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn emit_build_stats(stats: &BuildStats, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(stats).expect("serializable"),
        Format::Csv => {
            let header = [
                "construction",
                "n",
                "k",
                "ring_mode",
                "size",
                "depth",
                "product_depth",
                "formal_degree",
                "oracle_match",
                "oracle_method",
                "properties_ok",
                "size_cap",
                "size_within_cap",
            ]
            .map(str::to_string);
            let row = [
                stats.construction.clone(),
                stats.n.to_string(),
                stats.k.to_string(),
                stats.ring_mode.clone(),
                stats.size.to_string(),
                stats.depth.to_string(),
                stats.product_depth.to_string(),
                stats.formal_degree.to_string(),
                stats.oracle_match.to_string(),
                stats.oracle_method.clone(),
                stats.properties_ok.to_string(),
                stats.size_cap.clone().unwrap_or_default(),
                stats
                    .size_within_cap
                    .map(|b| b.to_string())
                    .unwrap_or_default(),
            ];
            format!("{}\n{}", csv_line(&header), csv_line(&row))
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "{} n={} k={} ({})\n",
                stats.construction, stats.n, stats.k, stats.ring_mode
            ));
            out.push_str(&format!(
                "  size={} depth={} product_depth={} formal_degree={}\n",
                stats.size, stats.depth, stats.product_depth, stats.formal_degree
            ));
            out.push_str(&format!(
                "  oracle_match={} (method: {})\n",
                stats.oracle_match, stats.oracle_method
            ));
            for (name, ok) in &stats.properties {
                out.push_str(&format!("  {name}={ok}\n"));
            }
            if let Some(cap) = &stats.size_cap {
                out.push_str(&format!(
                    "  size_cap={cap} within={}\n",
                    stats
                        .size_within_cap
                        .map(|b| b.to_string())
                        .unwrap_or_default()
                ));
            }
            if let Some(fit) = &stats.balance_fit {
                out.push_str(&format!(
                    "  balance_fit: circuit_size={} formula_size={} cap=(s*k)^({}*log2(k)+{})={:.1} within={}\n",
                    fit.circuit_size,
                    fit.balanced_formula_size,
                    fit.exponent_a,
                    fit.exponent_b,
                    fit.cap,
                    fit.within_cap
                ));
            }
            out.push_str(&format!("  verdict={}\n", stats.oracle_match && stats.properties_ok));
            out
        }
    }
}

/// Rendered per-node property verification plus expansion-level facts.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub size: u64,
    pub depth: u64,
    pub product_depth: u64,
    pub formal_degree: u64,
    pub variables: usize,
    pub degree: String,
    pub monomial_count: usize,
    pub properties: PropertyReport,
}

pub fn emit_verify(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable"),
        Format::Csv => {
            let prop = |c: symform::formula::PropCheck| c.ok.to_string();
            let header = [
                "size",
                "depth",
                "product_depth",
                "formal_degree",
                "variables",
                "degree",
                "monomial_count",
                "homogeneous",
                "w_homogeneous",
                "multilinear",
                "syntactically_multilinear",
                "monotone",
                "sum_degrees_consistent",
            ]
            .map(str::to_string);
            let row = [
                report.size.to_string(),
                report.depth.to_string(),
                report.product_depth.to_string(),
                report.formal_degree.to_string(),
                report.variables.to_string(),
                report.degree.clone(),
                report.monomial_count.to_string(),
                prop(report.properties.homogeneous),
                prop(report.properties.w_homogeneous),
                prop(report.properties.multilinear),
                prop(report.properties.syntactically_multilinear),
                prop(report.properties.monotone),
                prop(report.properties.sum_degrees_consistent),
            ];
            format!("{}\n{}", csv_line(&header), csv_line(&row))
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "size={} depth={} product_depth={} formal_degree={} variables={}\n",
                report.size, report.depth, report.product_depth, report.formal_degree,
                report.variables
            ));
            out.push_str(&format!(
                "expansion: degree={} monomial_count={}\n",
                report.degree, report.monomial_count
            ));
            let mut line = |name: &str, c: symform::formula::PropCheck| {
                match c.first_offender {
                    Some(node) if !c.ok => {
                        out.push_str(&format!("{name}=false (first offender: node {})\n", node.0))
                    }
                    _ => out.push_str(&format!("{name}={}\n", c.ok)),
                }
            };
            line("homogeneous", report.properties.homogeneous);
            line("w_homogeneous", report.properties.w_homogeneous);
            line("multilinear", report.properties.multilinear);
            line(
                "syntactically_multilinear",
                report.properties.syntactically_multilinear,
            );
            line("monotone", report.properties.monotone);
            line(
                "sum_degrees_consistent",
                report.properties.sum_degrees_consistent,
            );
            out
        }
    }
}

pub fn emit_bound_reports(reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("serializable"),
        Format::Csv => {
            let header = [
                "name",
                "inputs",
                "bound",
                "compared",
                "pass",
                "trivial",
                "cases_checked",
                "failures",
            ]
            .map(str::to_string);
            let mut out = csv_line(&header);
            for r in reports {
                let inputs = r
                    .inputs
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join("; ");
                let row = [
                    r.name.clone(),
                    inputs,
                    r.bound.clone(),
                    r.compared.clone().unwrap_or_default(),
                    r.pass.to_string(),
                    r.trivial.to_string(),
                    r.cases_checked.to_string(),
                    r.failures.join("; "),
                ];
                out.push('\n');
                out.push_str(&csv_line(&row));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                let trivial = if r.trivial { " (trivial)" } else { "" };
                out.push_str(&format!("[{verdict}]{trivial} {}\n", r.name));
                for (k, v) in &r.inputs {
                    out.push_str(&format!("  {k}={v}\n"));
                }
                out.push_str(&format!("  bound: {}\n", r.bound));
                if let Some(c) = &r.compared {
                    out.push_str(&format!("  compared: {c}\n"));
                }
                out.push_str(&format!("  cases: {}\n", r.cases_checked));
                for f in &r.failures {
                    out.push_str(&format!("  failure: {f}\n"));
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeOutput {
    pub certificate: CertificateSummary,
    pub validation: BoundReport,
}

pub fn emit_decompose(output: &DecomposeOutput, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(output).expect("serializable"),
        Format::Csv => {
            let header = ["part", "minvar", "degrees", "factors"].map(str::to_string);
            let mut out = csv_line(&header);
            for (i, part) in output.certificate.parts.iter().enumerate() {
                let row = [
                    i.to_string(),
                    part.minvar.to_string(),
                    format!("{:?}", part.degrees),
                    part.factors.join(" | "),
                ];
                out.push('\n');
                out.push_str(&csv_line(&row));
            }
            out
        }
        Format::Text => {
            let c = &output.certificate;
            let mut out = format!(
                "{} decomposition: {} parts, source size {}, total minvar {}\n",
                c.kind, c.part_count, c.source_size, c.minvar_total
            );
            for (i, part) in c.parts.iter().enumerate() {
                out.push_str(&format!(
                    "part {i}: degrees {:?}, minvar {}\n",
                    part.degrees, part.minvar
                ));
                for f in &part.factors {
                    out.push_str(&format!("    {f}\n"));
                }
            }
            let verdict = if output.validation.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("validation: {verdict}\n"));
            for f in &output.validation.failures {
                out.push_str(&format!("  failure: {f}\n"));
            }
            out
        }
    }
}

/// One row of the summary table: a model class at one `(n, k)`.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: u32,
    pub k: u32,
    pub model: String,
    pub measured_size: Option<u64>,
    pub upper_bound: Option<String>,
    pub lower_bound: Option<String>,
    pub lower_trivial: Option<bool>,
}

pub fn emit_table(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("serializable"),
        Format::Csv => {
            let header = [
                "n",
                "k",
                "model",
                "measured_size",
                "upper_bound",
                "lower_bound",
                "lower_trivial",
            ]
            .map(str::to_string);
            let mut out = csv_line(&header);
            for r in rows {
                let row = [
                    r.n.to_string(),
                    r.k.to_string(),
                    r.model.clone(),
                    r.measured_size.map(|v| v.to_string()).unwrap_or_default(),
                    r.upper_bound.clone().unwrap_or_default(),
                    r.lower_bound.clone().unwrap_or_default(),
                    r.lower_trivial.map(|v| v.to_string()).unwrap_or_default(),
                ];
                out.push('\n');
                out.push_str(&csv_line(&row));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let mut last = (0, 0);
            for r in rows {
                if (r.n, r.k) != last {
                    out.push_str(&format!("n={} k={}\n", r.n, r.k));
                    last = (r.n, r.k);
                }
                out.push_str(&format!(
                    "  {:<28} size={:<10} upper={:<14} lower={}{}\n",
                    r.model,
                    r.measured_size.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                    r.upper_bound.clone().unwrap_or_else(|| "-".into()),
                    r.lower_bound.clone().unwrap_or_else(|| "-".into()),
                    match r.lower_trivial {
                        Some(true) => " (trivial)",
                        _ => "",
                    }
                ));
            }
            out
        }
    }
}
