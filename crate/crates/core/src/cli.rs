//! Command-line front end: knot tables, reports and batch scans.
//!
//! A knot table has one entry per line, `name ; kind ; payload`, with `kind`
//! one of `braid`, `pd`, `seifert`. Blank lines and lines starting with `#`
//! are skipped.
//!
//! On the command line an entry is written `kind=payload`, or just a braid
//! word such as `"2: 1 1 1"`. With `--table` an entry may instead name a row
//! of that table.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{
    full_report, ribbon_obstructions, Conclusion, InvariantReport, KnotPresentation, PairObstructionReport,
};
use crate::diagram::{parse_braid, parse_pd};
use crate::error::KnotError;
use crate::polyalg::LeadingCoefficientBranch;
use crate::seifert::parse_seifert;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    /// 1 for bad input, 2 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Knot(e) if e.is_internal() => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "knotcert", version, about = "Exact knot invariants and ribbon concordance certificates")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full invariant report and certificates for one knot.
    Invariants {
        /// `kind=payload`, a braid word, a file holding either, or a table name.
        entry: String,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Ribbon concordance obstructions for `candidate <= target`.
    Compare {
        candidate: String,
        target: String,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Process every entry of a knot table.
    Scan {
        table: PathBuf,
        #[arg(long)]
        report: PathBuf,
        /// Worker threads; defaults to the number of logical cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Braid,
    Pd,
    Seifert,
}

impl Kind {
    fn parse(s: &str) -> Option<Kind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "braid" => Some(Kind::Braid),
            "pd" => Some(Kind::Pd),
            "seifert" => Some(Kind::Seifert),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotTableEntry {
    pub name: String,
    pub kind: Kind,
    pub payload: String,
    pub line: usize,
    #[serde(skip)]
    payload_column: usize,
}

pub fn parse_presentation(kind: Kind, payload: &str) -> Result<KnotPresentation, KnotError> {
    Ok(match kind {
        Kind::Braid => KnotPresentation::Braid(parse_braid(payload)?),
        Kind::Pd => KnotPresentation::Pd(parse_pd(payload)?),
        Kind::Seifert => KnotPresentation::Seifert(parse_seifert(payload)?),
    })
}

/// `kind=payload`, or a bare braid word.
pub fn parse_entry(entry: &str) -> Result<KnotPresentation, KnotError> {
    if let Some((kind, payload)) = entry.split_once('=') {
        if let Some(k) = Kind::parse(kind) {
            return parse_presentation(k, payload);
        }
        return Err(KnotError::parse(1, 1, format!("unknown kind '{}'", kind.trim())));
    }
    parse_presentation(Kind::Braid, entry)
}

impl KnotTableEntry {
    /// Parses the payload, reporting errors at their position in the table.
    pub fn presentation(&self) -> Result<KnotPresentation, KnotError> {
        parse_presentation(self.kind, &self.payload).map_err(|e| match e {
            KnotError::Parse { line: 1, column, message } => {
                KnotError::Parse { line: self.line, column: self.payload_column + column - 1, message }
            }
            other => other,
        })
    }
}

/// Parses a knot table line by line. Malformed lines and duplicate names are
/// returned as errors in place, so one bad line does not sink the table.
pub fn parse_table(text: &str) -> Vec<Result<KnotTableEntry, (String, KnotError)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.splitn(3, ';').collect();
        let fallback = format!("line {line}");
        if fields.len() != 3 {
            out.push(Err((fallback, KnotError::parse(line, 1, "expected `name ; kind ; payload`"))));
            continue;
        }
        let name = fields[0].trim().to_string();
        if name.is_empty() {
            out.push(Err((fallback, KnotError::parse(line, 1, "empty name"))));
            continue;
        }
        let Some(kind) = Kind::parse(fields[1]) else {
            let col = fields[0].len() + 2;
            out.push(Err((name, KnotError::parse(line, col, format!("unknown kind '{}'", fields[1].trim())))));
            continue;
        };
        if !seen.insert(name.clone()) {
            out.push(Err((name.clone(), KnotError::parse(line, 1, format!("duplicate name '{name}'")))));
            continue;
        }
        let payload_column = fields[0].len() + fields[1].len() + 3;
        out.push(Ok(KnotTableEntry { name, kind, payload: fields[2].to_string(), line, payload_column }));
    }
    out
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn resolve(entry: &str, table: Option<&Path>) -> Result<(String, KnotPresentation), CliError> {
    if let Some(path) = table {
        let text = read(path)?;
        for row in parse_table(&text) {
            match row {
                Ok(e) if e.name == entry => return Ok((e.name.clone(), e.presentation()?)),
                Err((name, err)) if name == entry => return Err(err.into()),
                _ => {}
            }
        }
        return Err(CliError::Input(format!("no entry named '{entry}' in {}", path.display())));
    }
    let path = Path::new(entry);
    if path.is_file() {
        let text = read(path)?;
        return Ok((entry.to_string(), parse_entry(text.trim())?));
    }
    Ok((entry.to_string(), parse_entry(entry)?))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct NamedReport<'a> {
    name: &'a str,
    report: &'a InvariantReport,
}

pub fn cmd_invariants(spec: &str, table: Option<&Path>, format: Format) -> Result<String, CliError> {
    let (name, p) = resolve(spec, table)?;
    let report = full_report(&p)?;
    Ok(match format {
        Format::Json => json(&NamedReport { name: &name, report: &report }),
        Format::Text => render_report(&name, &report),
    })
}

pub fn cmd_compare(a: &str, b: &str, table: Option<&Path>, format: Format) -> Result<String, CliError> {
    let (_, pa) = resolve(a, table)?;
    let (_, pb) = resolve(b, table)?;
    let ka = full_report(&pa)?;
    let kb = full_report(&pb)?;
    let report = ribbon_obstructions(&ka, &kb)?;
    Ok(match format {
        Format::Json => json(&report),
        Format::Text => render_pair(&report),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ScanOutcome {
    Ok { report: Box<InvariantReport> },
    Error { error: String, internal: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanEntry {
    pub name: String,
    pub line: Option<usize>,
    #[serde(flatten)]
    pub outcome: ScanOutcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub entries: usize,
    pub errors: usize,
    pub positive: usize,
    pub no_rational_roots: usize,
    pub rational_roots_witnessed: usize,
    pub rational_roots_unwitnessed: usize,
    pub conway_nonnegative: usize,
    pub band_prime_certified: usize,
    pub ribbon_minimal_certified: usize,
    pub anisotropy_certified: usize,
    pub module_rigid_certified: usize,
    /// Positive entries with a rational root of the Alexander polynomial.
    pub positive_with_rational_roots: usize,
    /// Positive entries with a negative Conway coefficient.
    pub positive_with_negative_conway: usize,
    /// Positive entries with a real root of the Alexander polynomial in (0, inf).
    pub positive_with_positive_real_roots: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    pub summary: ScanSummary,
}

impl ScanReport {
    fn tally(entries: Vec<ScanEntry>) -> Self {
        let mut s = ScanSummary { entries: entries.len(), ..ScanSummary::default() };
        for e in &entries {
            let r = match &e.outcome {
                ScanOutcome::Ok { report } => report,
                ScanOutcome::Error { .. } => {
                    s.errors += 1;
                    continue;
                }
            };
            let pos = r.is_positive();
            let certified = |c| r.certificate(c).is_some_and(|c| c.is_certified());
            s.positive += usize::from(pos);
            s.no_rational_roots += usize::from(r.rational_roots.is_empty());
            s.rational_roots_witnessed += r.rational_roots.roots.iter().filter(|w| w.witness.is_some()).count();
            s.rational_roots_unwitnessed += r.rational_roots.roots.iter().filter(|w| w.witness.is_none()).count();
            s.conway_nonnegative += usize::from(r.conway.all_nonnegative());
            s.band_prime_certified += usize::from(certified(Conclusion::BandPrime));
            s.ribbon_minimal_certified += usize::from(certified(Conclusion::RibbonMinimal));
            s.anisotropy_certified += usize::from(certified(Conclusion::QAnisotropic));
            s.module_rigid_certified += usize::from(certified(Conclusion::ModuleRigidInConcordanceClass));
            if pos {
                s.positive_with_rational_roots += usize::from(!r.rational_roots.is_empty());
                s.positive_with_negative_conway += usize::from(!r.conway.all_nonnegative());
                s.positive_with_positive_real_roots += usize::from(r.real_roots.positive > 0);
            }
        }
        ScanReport { entries, summary: s }
    }
}

/// Reports for every table row, in input order whatever the thread count.
pub fn scan_table(text: &str, jobs: usize) -> Result<ScanReport, CliError> {
    let rows = parse_table(text);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("cannot start worker pool: {e}")))?;
    let entries: Vec<ScanEntry> = pool.install(|| {
        rows.par_iter()
            .map(|row| match row {
                Ok(entry) => {
                    let outcome = match entry.presentation().and_then(|p| full_report(&p)) {
                        Ok(report) => ScanOutcome::Ok { report: Box::new(report) },
                        Err(e) => ScanOutcome::Error { error: e.to_string(), internal: e.is_internal() },
                    };
                    ScanEntry { name: entry.name.clone(), line: Some(entry.line), outcome }
                }
                Err((name, e)) => ScanEntry {
                    name: name.clone(),
                    line: match e {
                        KnotError::Parse { line, .. } => Some(*line),
                        _ => None,
                    },
                    outcome: ScanOutcome::Error { error: e.to_string(), internal: false },
                },
            })
            .collect()
    });
    Ok(ScanReport::tally(entries))
}

pub fn cmd_scan(table: &Path, report: &Path, jobs: Option<usize>, format: Format) -> Result<String, CliError> {
    let text = read(table)?;
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let scan = scan_table(&text, jobs)?;
    let rendered = match format {
        Format::Json => json(&scan),
        Format::Text => render_scan(&scan),
    };
    std::fs::write(report, rendered)
        .map_err(|e| CliError::Input(format!("cannot write report {}: {e}", report.display())))?;
    Ok(render_summary(&scan.summary))
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Invariants { entry, table } => cmd_invariants(entry, table.as_deref(), cli.format),
        Command::Compare { candidate, target, table } => cmd_compare(candidate, target, table.as_deref(), cli.format),
        Command::Scan { table, report, jobs } => cmd_scan(table, report, *jobs, cli.format),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_report(name: &str, r: &InvariantReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {name}");
    let _ = writeln!(out, "presentation: {} {}", r.kind, r.presentation);
    let positive = match r.positive_diagram {
        Some(b) => yes_no(b),
        None => "unknown (no diagram)",
    };
    let _ = writeln!(out, "positive diagram: {positive}");
    if let Some(s) = &r.surface {
        let _ = writeln!(
            out,
            "crossings: {}, Seifert circles: {}, surface genus: {}",
            s.crossing_count, s.seifert_circle_count, s.genus
        );
    }
    let _ = writeln!(out, "alexander: {}", r.alexander);
    let _ = writeln!(out, "conway: {}", r.conway);
    let _ = writeln!(out, "signature: {}", r.signature);
    let _ = writeln!(out, "d: {}", r.degree_d);
    let roots = if r.rational_roots.is_empty() {
        "none".to_string()
    } else {
        r.rational_roots
            .roots
            .iter()
            .map(|w| match &w.witness {
                Some(a) => format!("{} (a = {a})", w.root),
                None => format!("{} (no witness)", w.root),
            })
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(out, "rational roots: {roots}");
    let _ = writeln!(out, "real roots: {} in (-inf, 0), {} in (0, inf)", r.real_roots.negative, r.real_roots.positive);
    let branch = match &r.leading_coefficient.branch {
        LeadingCoefficientBranch::Monic => "monic".to_string(),
        LeadingCoefficientBranch::PrimePower { prime, exponent } => format!("prime power {prime}^{exponent}"),
        LeadingCoefficientBranch::NotPrimePower => "not a prime power".to_string(),
    };
    let _ = writeln!(out, "leading coefficient: {} ({branch})", r.leading_coefficient.leading);
    match (&r.invariant_factors, &r.invariant_factors_error) {
        (Some(f), _) => {
            let list: Vec<String> = f.factors.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "invariant factors: [{}]", list.join(", "));
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "invariant factors: unavailable ({e})");
        }
        (None, None) => {}
    }
    let _ = writeln!(out, "certificates:");
    for c in &r.certificates {
        let conclusion = serde_json::to_value(c.conclusion).expect("enum serializes");
        let failed: Vec<&str> = c.premises.iter().filter(|p| !p.passed).map(|p| p.name.as_str()).collect();
        let status = if c.is_certified() {
            "certified".to_string()
        } else {
            format!("not certified (failed: {})", failed.join(", "))
        };
        let _ = writeln!(out, "  {}: {status}", conclusion.as_str().unwrap_or_default());
    }
    out
}

pub fn render_pair(r: &PairObstructionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "candidate K0: {}", r.candidate);
    let _ = writeln!(out, "target K1: {}", r.target);
    for c in &r.checks {
        let _ = writeln!(out, "  {}: {} {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.witness);
    }
    let verdict = if r.obstructed {
        "obstructed: no ribbon concordance K0 <= K1"
    } else {
        "not obstructed: no conclusion about existence"
    };
    let _ = writeln!(out, "{verdict}");
    if let Some(a) = &r.annotation {
        let _ = writeln!(out, "note: {a}");
    }
    out
}

fn render_scan(s: &ScanReport) -> String {
    let mut out = String::new();
    for e in &s.entries {
        match &e.outcome {
            ScanOutcome::Ok { report } => {
                out.push_str(&render_report(&e.name, report));
            }
            ScanOutcome::Error { error, .. } => {
                let _ = writeln!(out, "name: {}\nerror: {error}", e.name);
            }
        }
        out.push('\n');
    }
    out.push_str(&render_summary(&s.summary));
    out
}

pub fn render_summary(s: &ScanSummary) -> String {
    let v = serde_json::to_value(s).expect("summary serializes");
    let mut out = String::from("summary:\n");
    if let Some(map) = v.as_object() {
        for (k, v) in map {
            let _ = writeln!(out, "  {k}: {v}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries() {
        assert!(matches!(parse_entry("2: 1 1 1"), Ok(KnotPresentation::Braid(_))));
        assert!(matches!(parse_entry("seifert=0"), Ok(KnotPresentation::Seifert(_))));
        assert!(matches!(parse_entry("pd=X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"), Ok(KnotPresentation::Pd(_))));
        assert!(parse_entry("knot=1").is_err());
    }

    #[test]
    fn table_rows() {
        let rows =
            parse_table("# c\n\nu ; braid ; 1:\nu ; braid ; 2: 1 1 1\nbad line\nx ; tangle ; 1\nt ; braid ; 2: 1 x\n");
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].as_ref().unwrap().name, "u");
        assert!(rows[1].is_err() && rows[2].is_err() && rows[3].is_err());
        let e = rows[4].as_ref().unwrap().presentation().unwrap_err();
        assert_eq!(e, KnotError::parse(7, 18, "malformed letter 'x'"));
    }

    #[test]
    fn scan_summary_counts() {
        let s = scan_table("u ; braid ; 1:\nt ; braid ; 2: 1 1 1\nt25 ; braid ; 2: 1 1 1 1 1\n", 2).unwrap();
        assert_eq!(s.summary.positive, 3);
        assert_eq!(s.summary.no_rational_roots, 3);
        assert_eq!(s.summary.anisotropy_certified, 3);
        assert_eq!(scan_table("", 1).unwrap().summary, ScanSummary::default());
        let s = scan_table("u ; braid ; 1:\nbroken\n", 1).unwrap();
        assert_eq!((s.summary.entries, s.summary.errors), (2, 1));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(KnotError::ZeroPolynomial).exit_code(), 1);
        assert_eq!(CliError::from(KnotError::Internal("x".into())).exit_code(), 2);
    }
}
