use std::error::Error;
use std::fmt::Write as _;

use serde::Serialize;
use volume_entropy::notation::{parse_domain, parse_product};
use volume_entropy::verify::{
    growth_entropy, maximize_exponent, scan_collisions, IntegrationMethod, MAX_QUADRATURE_RANK,
};
use volume_entropy::{entropy_bergman, entropy_hyperbolic, entropy_product, DomainSpec};

use crate::args::{Format, Integrator, Method, RunConfig, VerifyArgs};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Info(DomainRow),
    Entropy(EntropyReport),
    Verify(VerifyReport),
    Scan(ScanReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct DomainRow {
    pub spec: String,
    pub r: u32,
    pub a: u32,
    pub b: u32,
    pub d: u64,
    pub genus: u64,
    pub entropy: f64,
    pub squared_quarter: u64,
    pub entropy_bergman: f64,
    pub optimizer: Vec<f64>,
}

impl From<&DomainSpec> for DomainRow {
    fn from(d: &DomainSpec) -> Self {
        let e = entropy_hyperbolic(d);
        DomainRow {
            spec: d.to_string(),
            r: d.r(),
            a: d.a(),
            b: d.b(),
            d: d.dim(),
            genus: d.genus(),
            entropy: e.value,
            squared_quarter: e.squared_quarter,
            entropy_bergman: entropy_bergman(d),
            optimizer: e.optimizer,
        }
    }
}

/// Product entropy. `a`, `b` and `genus` are only defined for a single
/// factor and are `null` otherwise.
#[derive(Debug, Serialize)]
pub struct EntropyReport {
    pub spec: String,
    pub r: u32,
    pub a: Option<u32>,
    pub b: Option<u32>,
    pub d: u64,
    pub genus: Option<u64>,
    pub entropy: f64,
    pub squared_quarter: u64,
    pub factors: Vec<DomainRow>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub spec: String,
    pub method: Method,
    pub closed_form: f64,
    pub squared_quarter: u64,
    pub numerical: f64,
    pub abs_deviation: f64,
    pub rel_deviation: f64,
    pub tolerance: f64,
    pub tolerance_kind: &'static str,
    pub status: &'static str,
    pub details: VerifyDetails,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum VerifyDetails {
    Exponent {
        restarts: usize,
        argmax: Vec<f64>,
    },
    Growth {
        integration: IntegrationMethod,
        radii: Vec<f64>,
        log_volumes: Vec<f64>,
        log_volume_stderrs: Vec<f64>,
        slope_stderr: f64,
        fit_residual: f64,
        fit_window: usize,
    },
}

#[derive(Debug, Serialize)]
pub struct ScanReport {
    pub max_dim: u64,
    pub domains_scanned: usize,
    pub same_dimension_collisions: usize,
    pub groups: Vec<ScanGroup>,
}

#[derive(Debug, Serialize)]
pub struct ScanGroup {
    pub squared_quarter: u64,
    pub entropy: f64,
    pub same_dimension: bool,
    pub members: Vec<ScanMember>,
}

#[derive(Debug, Serialize)]
pub struct ScanMember {
    pub spec: String,
    pub r: u32,
    pub a: u32,
    pub b: u32,
    pub d: u64,
    pub genus: u64,
}

pub fn info(spec: &str) -> Result<Report> {
    Ok(Report::Info(DomainRow::from(&parse_domain(spec)?)))
}

pub fn entropy(spec: &str) -> Result<Report> {
    let product = parse_product(spec)?;
    let e = entropy_product(&product);
    let single = match product.factors() {
        [only] => Some(only),
        _ => None,
    };
    Ok(Report::Entropy(EntropyReport {
        spec: product.to_string(),
        r: product.rank(),
        a: single.map(DomainSpec::a),
        b: single.map(DomainSpec::b),
        d: product.dim(),
        genus: single.map(DomainSpec::genus),
        entropy: e.value,
        squared_quarter: e.squared_quarter,
        factors: product.factors().iter().map(DomainRow::from).collect(),
    }))
}

pub fn verify(args: &VerifyArgs, seed: u64) -> Result<Report> {
    let product = parse_product(&args.spec.joined())?;
    let exact = entropy_product(&product);
    let tolerance = args.tolerance();
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err("tolerance must be positive".into());
    }

    let (numerical, details) = match args.method {
        Method::Exponent => {
            let m = maximize_exponent(&product, args.restarts, seed);
            (m.value, VerifyDetails::Exponent { restarts: args.restarts, argmax: m.argmax })
        }
        Method::Growth => {
            let radii = args.radii.as_ref().ok_or("the growth method requires --radii start:stop:step")?.values();
            let mc = IntegrationMethod::MonteCarlo { samples: args.samples, seed };
            let integration = match args.integrator {
                Integrator::Quadrature => IntegrationMethod::Quadrature,
                Integrator::MonteCarlo => mc,
                Integrator::Auto if product.rank() as usize <= MAX_QUADRATURE_RANK => IntegrationMethod::Quadrature,
                Integrator::Auto => mc,
            };
            let g = growth_entropy(&product, &radii, integration, args.fit_window)?;
            let details = VerifyDetails::Growth {
                integration,
                radii: g.radii,
                log_volumes: g.log_volumes,
                log_volume_stderrs: g.log_volume_stderrs,
                slope_stderr: g.slope_stderr,
                fit_residual: g.fit_residual,
                fit_window: g.fit_window,
            };
            (g.slope, details)
        }
    };

    let abs_deviation = (numerical - exact.value).abs();
    let rel_deviation = abs_deviation / exact.value;
    let (tolerance_kind, deviation) = match args.method {
        Method::Exponent => ("absolute", abs_deviation),
        Method::Growth => ("relative", rel_deviation),
    };
    Ok(Report::Verify(VerifyReport {
        spec: product.to_string(),
        method: args.method,
        closed_form: exact.value,
        squared_quarter: exact.squared_quarter,
        numerical,
        abs_deviation,
        rel_deviation,
        tolerance,
        tolerance_kind,
        status: if deviation <= tolerance { "PASS" } else { "FAIL" },
        details,
    }))
}

pub fn scan(max_dim: u64) -> Report {
    let report = scan_collisions(max_dim);
    let groups: Vec<ScanGroup> = report
        .groups
        .iter()
        .map(|g| ScanGroup {
            squared_quarter: g.squared_quarter,
            entropy: g.entropy,
            same_dimension: g.same_dimension,
            members: g
                .members
                .iter()
                .map(|m| ScanMember { spec: m.to_string(), r: m.r(), a: m.a(), b: m.b(), d: m.dim(), genus: m.genus() })
                .collect(),
        })
        .collect();
    Report::Scan(ScanReport {
        max_dim,
        domains_scanned: report.domains_scanned,
        same_dimension_collisions: groups.iter().filter(|g| g.same_dimension).count(),
        groups,
    })
}

#[derive(Serialize)]
struct Envelope<'a> {
    config: &'a RunConfig,
    #[serde(flatten)]
    report: &'a Report,
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Verify(v) => v.status == "PASS",
            _ => true,
        }
    }

    pub fn render(&self, format: Format, config: &RunConfig) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&Envelope { config, report: self }).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Table => {
                let mut s = format!("# config {}\n", serde_json::to_string(config).expect("config serializes"));
                s.push_str(&self.table());
                s
            }
            Format::Csv => {
                let mut s = format!("# config {}\n", serde_json::to_string(config).expect("config serializes"));
                s.push_str(&self.csv());
                s
            }
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Info(d) => {
                let rows = [
                    ("spec", d.spec.clone()),
                    ("r", d.r.to_string()),
                    ("a", d.a.to_string()),
                    ("b", d.b.to_string()),
                    ("d", d.d.to_string()),
                    ("genus", d.genus.to_string()),
                    ("entropy", format!("{} = 2*sqrt({})", d.entropy, d.squared_quarter)),
                    ("entropy_bergman", d.entropy_bergman.to_string()),
                    ("optimizer", format_vec(&d.optimizer)),
                ];
                key_values(&mut out, &rows);
            }
            Report::Entropy(e) => {
                let _ =
                    writeln!(out, "{:<16} {:>4} {:>6} {:>22} {:>16}", "factor", "r", "d", "entropy", "squared_quarter");
                for f in &e.factors {
                    let _ = writeln!(
                        out,
                        "{:<16} {:>4} {:>6} {:>22} {:>16}",
                        f.spec, f.r, f.d, f.entropy, f.squared_quarter
                    );
                }
                let _ = writeln!(
                    out,
                    "{:<16} {:>4} {:>6} {:>22} {:>16}",
                    "product", e.r, e.d, e.entropy, e.squared_quarter
                );
            }
            Report::Verify(v) => {
                let mut rows = vec![
                    ("spec", v.spec.clone()),
                    ("method", format!("{:?}", v.method).to_lowercase()),
                    ("closed_form", format!("{} = 2*sqrt({})", v.closed_form, v.squared_quarter)),
                    ("numerical", v.numerical.to_string()),
                    ("abs_deviation", format!("{:e}", v.abs_deviation)),
                    ("rel_deviation", format!("{:e}", v.rel_deviation)),
                    ("tolerance", format!("{:e} ({})", v.tolerance, v.tolerance_kind)),
                ];
                if let VerifyDetails::Growth { integration, slope_stderr, fit_residual, fit_window, .. } = &v.details {
                    let name = match integration {
                        IntegrationMethod::Quadrature => "quadrature".to_string(),
                        IntegrationMethod::MonteCarlo { samples, .. } => format!("monte-carlo ({samples} samples)"),
                    };
                    rows.push(("integrator", name));
                    rows.push(("slope_stderr", format!("{slope_stderr:e}")));
                    rows.push(("fit_residual", format!("{fit_residual:e}")));
                    rows.push(("fit_window", fit_window.to_string()));
                }
                rows.push(("status", v.status.to_string()));
                key_values(&mut out, &rows);
            }
            Report::Scan(s) => {
                let _ = writeln!(out, "scanned {} domains with d <= {}", s.domains_scanned, s.max_dim);
                if s.groups.is_empty() {
                    let _ = writeln!(out, "no collisions");
                }
                for g in &s.groups {
                    let members: Vec<String> = g.members.iter().map(|m| format!("{} (d={})", m.spec, m.d)).collect();
                    let _ = write!(out, "{:>8}  {}", g.squared_quarter, members.join(" ; "));
                    if g.same_dimension {
                        let _ = write!(out, "  <- same dimension: counterexample candidate");
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut write = |record: &[String]| w.write_record(record).expect("in-memory csv");
        match self {
            Report::Info(d) => {
                write(&strings(&DOMAIN_HEADER));
                write(&domain_record(d));
            }
            Report::Entropy(e) => {
                write(&strings(&DOMAIN_HEADER));
                for f in &e.factors {
                    write(&domain_record(f));
                }
                let opt = |v: Option<String>| v.unwrap_or_default();
                write(&[
                    e.spec.clone(),
                    e.r.to_string(),
                    opt(e.a.map(|v| v.to_string())),
                    opt(e.b.map(|v| v.to_string())),
                    e.d.to_string(),
                    opt(e.genus.map(|v| v.to_string())),
                    e.entropy.to_string(),
                    e.squared_quarter.to_string(),
                    String::new(),
                ]);
            }
            Report::Verify(v) => {
                write(&strings(&VERIFY_HEADER));
                let tail = [
                    v.closed_form.to_string(),
                    v.numerical.to_string(),
                    v.abs_deviation.to_string(),
                    v.rel_deviation.to_string(),
                    v.tolerance.to_string(),
                    v.status.to_string(),
                ];
                let method = format!("{:?}", v.method).to_lowercase();
                match &v.details {
                    VerifyDetails::Exponent { .. } => {
                        let mut row = vec![v.spec.clone(), method, String::new(), String::new(), String::new()];
                        row.extend(tail.iter().cloned());
                        write(&row);
                    }
                    VerifyDetails::Growth { radii, log_volumes, log_volume_stderrs, .. } => {
                        for ((r, lv), se) in radii.iter().zip(log_volumes).zip(log_volume_stderrs) {
                            let mut row =
                                vec![v.spec.clone(), method.clone(), r.to_string(), lv.to_string(), se.to_string()];
                            row.extend(tail.iter().cloned());
                            write(&row);
                        }
                    }
                }
            }
            Report::Scan(s) => {
                write(&strings(&SCAN_HEADER));
                for g in &s.groups {
                    for m in &g.members {
                        write(&[
                            g.squared_quarter.to_string(),
                            g.entropy.to_string(),
                            g.same_dimension.to_string(),
                            m.spec.clone(),
                            m.d.to_string(),
                        ]);
                    }
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}

pub const DOMAIN_HEADER: [&str; 9] =
    ["spec", "r", "a", "b", "d", "genus", "entropy", "squared_quarter", "entropy_bergman"];
pub const VERIFY_HEADER: [&str; 11] = [
    "spec",
    "method",
    "radius",
    "log_volume",
    "log_volume_stderr",
    "closed_form",
    "numerical",
    "abs_deviation",
    "rel_deviation",
    "tolerance",
    "status",
];
pub const SCAN_HEADER: [&str; 5] = ["squared_quarter", "entropy", "same_dimension", "spec", "d"];

fn strings(header: &[&str]) -> Vec<String> {
    header.iter().map(|s| s.to_string()).collect()
}

fn domain_record(d: &DomainRow) -> Vec<String> {
    vec![
        d.spec.clone(),
        d.r.to_string(),
        d.a.to_string(),
        d.b.to_string(),
        d.d.to_string(),
        d.genus.to_string(),
        d.entropy.to_string(),
        d.squared_quarter.to_string(),
        d.entropy_bergman.to_string(),
    ]
}

fn key_values(out: &mut String, rows: &[(&str, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
}

fn format_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}
