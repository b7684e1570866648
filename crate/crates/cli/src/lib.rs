//! `classgraph` command-line front end.
//!
//! [`run`] takes the argument list and two writers and returns the process
//! exit code: 0 on success, 1 when an audit check fails or a reproduced
//! example does not match, 2 on configuration errors.

use std::collections::{BTreeMap, HashSet};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use classgraph::constructions::corpus::{corpus, fingerprint, CorpusEntry};
use classgraph::constructions::{build, example_catalog, ingest, resolve, select_normals, BuiltGroup};
use classgraph::theorems::{
    audit_all, audit_ordinary_graph, audit_pair, ids, summarize, AuditReport, Check,
    Counterexample, Tally, Verdict,
};
use classgraph::{ClassGraph, Subgroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

const SPEC_HELP: &str = "\
GROUP SOURCES
  builtin:<spec> or <spec>, file:<path> or <path>.json, or a fixture name
  looked up in --fixtures-dir. Specs are family:param:param, joined by '*'
  for direct products:
    cyclic:n  dihedral:order  quaternion:order  dicyclic:order
    symmetric:n  alternating:n  elementary_abelian:p:k  extraspecial:p
    sl23  gl23  agl:p:n  frobenius:p:q  semilinear:p:n:s
    semilinear_sub:p:n:m:s  linear:p:n:M;M  affine:p:n:M;M
    example:<id>  embedded:<name>
  Matrices are written row-major, comma separated, e.g. 1,1,0,1.

NORMAL SELECTORS
  all, whole, fitting, name:<name>, order:<k>, order:<k>,center-free,
  index:<i> (position in the normal lattice)

ENVIRONMENT
  CLASSGRAPH_CAP overrides the element enumeration cap.";

#[derive(Parser, Debug)]
#[command(
    name = "classgraph",
    version,
    about = "Class sizes of normal subgroups and the graph on them",
    after_help = SPEC_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for scan and audit (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Directory of extra JSON group files.
    #[arg(long, global = true)]
    pub fixtures_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class sizes, graph shape and check verdicts for one group.
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "all")]
        normal: String,
        /// Expected class sizes (comma separated, sorted); a mismatch exits 1.
        #[arg(long, value_delimiter = ',')]
        expect: Option<Vec<u64>>,
    },
    /// Fingerprints of the built-in corpus.
    Scan {
        #[arg(long, default_value_t = 700)]
        max_order: usize,
    },
    /// Audits every normal subgroup of every corpus group, or of one group.
    Audit {
        #[arg(long, default_value_t = 700)]
        max_order: usize,
        #[arg(long)]
        group: Option<String>,
    },
    /// Expected against computed class sizes for the worked examples.
    ReproPaper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug)]
struct ConfigError(String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, ConfigError>;

/// One `(G, N)` pair as printed by `analyze` and `audit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub class_sizes: Vec<u64>,
    pub shape: String,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub components: usize,
    pub group: String,
    pub group_order: usize,
    pub normal: String,
    pub normal_order: usize,
    pub center_meet_order: usize,
    pub distinct_class_sizes: bool,
    pub checks: Vec<Check>,
}

impl PairJson {
    fn from_report(r: &AuditReport, keep_not_applicable: bool) -> PairJson {
        PairJson {
            class_sizes: r.class_sizes.clone(),
            shape: r.shape.tag.as_str().to_string(),
            vertices: r.shape.vertices,
            edges: r.shape.edges,
            triangles: r.shape.triangles,
            components: r.shape.components,
            group: r.group_name.clone(),
            group_order: r.group_order,
            normal: r.n_description.clone(),
            normal_order: r.n_order,
            center_meet_order: r.center_meet_order,
            distinct_class_sizes: r.distinct_class_sizes,
            checks: r
                .checks
                .iter()
                .filter(|c| keep_not_applicable || c.verdict != Verdict::NotApplicable)
                .cloned()
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub provenance: String,
    pub order: usize,
    pub digest: String,
    pub spectrum: Vec<(u64, usize)>,
    pub class_sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub group: String,
    pub normal: String,
    pub theorem: String,
    pub notes: Vec<String>,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditJson {
    pub max_order: Option<usize>,
    pub groups: usize,
    pub pairs: usize,
    pub summary: BTreeMap<String, Tally>,
    pub failures: Vec<Failure>,
    pub reports: Vec<PairJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproRow {
    pub id: String,
    pub description: String,
    pub group: String,
    pub normal: String,
    pub expected: Vec<u64>,
    pub computed: Option<Vec<u64>>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub shape: Option<String>,
    /// Triangle-free, ordinary single-triangle and single-triangle verdicts.
    pub triangle_free: Option<Verdict>,
    pub ordinary_triangle: Option<Verdict>,
    pub single_triangle: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failed_checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproJson {
    pub rows: Vec<ReproRow>,
    pub all_match: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_CONFIG };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_CONFIG
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
    let mut buf: Vec<u8> = Vec::new();
    let mut diag: Vec<u8> = Vec::new();
    let code = pool.install(|| match &cli.command {
        Command::Analyze {
            group,
            normal,
            expect,
        } => analyze(cli, group, normal, expect.as_deref(), &mut buf, &mut diag),
        Command::Scan { max_order } => scan(cli, *max_order, &mut buf),
        Command::Audit { max_order, group } => audit(cli, *max_order, group.as_deref(), &mut buf),
        Command::ReproPaper => repro(cli, &mut buf),
    });
    out.write_all(&buf)?;
    err.write_all(&diag)?;
    code
}

// ---- inputs -------------------------------------------------------------------

/// Resolves a `--group` argument, preferring a file in `--fixtures-dir`.
fn load(source: &str, fixtures_dir: Option<&Path>) -> CliResult<BuiltGroup> {
    if let Some(dir) = fixtures_dir {
        if !source.contains(':') {
            let file = dir.join(format!("{source}.json"));
            if file.is_file() {
                return Ok(ingest(&file)?);
            }
        }
    }
    let source = source.strip_prefix("builtin:").unwrap_or(source);
    let spec = resolve(source)?;
    let built = build(&spec)?;
    Ok(built)
}

fn select(built: &BuiltGroup, selector: &str) -> CliResult<Vec<(String, Subgroup)>> {
    Ok(select_normals(built, selector)?)
}

fn fixture_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| ConfigError(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// The corpus plus every group file in `--fixtures-dir`.
fn full_corpus(cli: &Cli, max_order: usize) -> CliResult<Vec<CorpusEntry>> {
    let mut entries = corpus(max_order);
    if let Some(dir) = &cli.fixtures_dir {
        let mut seen: HashSet<_> = entries.iter().map(|e| fingerprint(&e.group)).collect();
        for file in fixture_files(dir)? {
            let built = ingest(&file)?;
            if seen.insert(fingerprint(&built.group)) {
                entries.push(CorpusEntry {
                    provenance: format!("file:{}", file.display()),
                    group: built.group,
                });
            }
        }
    }
    Ok(entries)
}

// ---- output -------------------------------------------------------------------

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::NotApplicable => "n/a",
    }
}

fn pair_text(r: &AuditReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} (order {}), {} (order {})",
        r.group_name, r.group_order, r.n_description, r.n_order
    );
    let _ = writeln!(s, "  class sizes: {:?}", r.class_sizes);
    let _ = writeln!(
        s,
        "  graph: {} ({} vertices, {} edges, {} triangles, {} components)",
        r.shape.tag.as_str(),
        r.shape.vertices,
        r.shape.edges,
        r.shape.triangles,
        r.shape.components
    );
    let _ = writeln!(s, "  |Z(G) ∩ N| = {}", r.center_meet_order);
    for c in r.checks.iter().filter(|c| c.verdict != Verdict::NotApplicable) {
        let case = c.case.as_deref().map(|k| format!(" [{k}]")).unwrap_or_default();
        let _ = write!(s, "  {:<24} {}{}", c.theorem, verdict_str(c.verdict), case);
        if !c.notes.is_empty() {
            let _ = write!(s, "  ({})", c.notes.join("; "));
        }
        s.push('\n');
    }
    s
}

// ---- commands -----------------------------------------------------------------

fn analyze(
    cli: &Cli,
    source: &str,
    selector: &str,
    expect: Option<&[u64]>,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> CliResult<i32> {
    let built = load(source, cli.fixtures_dir.as_deref())?;
    let name = if built.name.is_empty() { source.to_string() } else { built.name.clone() };
    let pairs = select(&built, selector)?;
    if expect.is_some() && pairs.len() != 1 {
        return Err(ConfigError(format!(
            "--expect needs a selector that picks one subgroup, '{selector}' picks {}",
            pairs.len()
        )));
    }
    let reports: Vec<AuditReport> = pairs
        .iter()
        .map(|(desc, n)| audit_pair(&built.group, n, &name, desc))
        .collect::<classgraph::Result<_>>()?;
    let mut failed = reports.iter().any(|r| r.has_failure());
    if let Some(expected) = expect {
        let mut expected = expected.to_vec();
        expected.sort_unstable();
        if reports[0].class_sizes != expected {
            failed = true;
            writeln!(
                diag,
                "class sizes {:?} differ from the expected {:?}",
                reports[0].class_sizes, expected
            )?;
        }
    }
    match cli.format {
        Format::Json => {
            let rows: Vec<PairJson> = reports.iter().map(|r| PairJson::from_report(r, true)).collect();
            if rows.len() == 1 {
                emit_json(out, &rows[0])?;
            } else {
                emit_json(out, &rows)?;
            }
        }
        Format::Dot => {
            for r in &reports {
                let graph = ClassGraph::from_sizes(&r.class_sizes);
                write!(out, "{}", graph.to_dot(&format!("{} / {}", r.group_name, r.n_description)))?;
            }
        }
        Format::Text => {
            if reports.is_empty() {
                writeln!(out, "{name} has no nontrivial normal subgroups")?;
            }
            for r in &reports {
                write!(out, "{}", pair_text(r))?;
            }
        }
    }
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

fn scan(cli: &Cli, max_order: usize, out: &mut dyn Write) -> CliResult<i32> {
    let entries = full_corpus(cli, max_order)?;
    let rows: Vec<ScanRow> = entries
        .par_iter()
        .map(|e| {
            let f = fingerprint(&e.group);
            ScanRow {
                provenance: e.provenance.clone(),
                order: f.order,
                digest: format!("{:016x}", f.digest()),
                spectrum: f.spectrum,
                class_sizes: f.class_sizes,
            }
        })
        .collect();
    match cli.format {
        Format::Json => emit_json(out, &rows)?,
        Format::Text | Format::Dot => {
            for r in &rows {
                writeln!(out, "{}  {:>5}  {:>3} classes  {}", r.digest, r.order, r.class_sizes.len(), r.provenance)?;
            }
            writeln!(out, "{} groups", rows.len())?;
        }
    }
    Ok(EXIT_OK)
}

fn audit(cli: &Cli, max_order: usize, group: Option<&str>, out: &mut dyn Write) -> CliResult<i32> {
    let (entries, bound) = match group {
        Some(source) => {
            let built = load(source, cli.fixtures_dir.as_deref())?;
            let provenance = if built.name.is_empty() { source.to_string() } else { built.name };
            (
                vec![CorpusEntry {
                    provenance,
                    group: built.group,
                }],
                None,
            )
        }
        None => (full_corpus(cli, max_order)?, Some(max_order)),
    };
    let reports: Vec<AuditReport> = entries
        .par_iter()
        .map(|e| audit_all(&e.group, &e.provenance))
        .collect::<classgraph::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let failures: Vec<Failure> = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().filter(|c| c.verdict == Verdict::Fail).map(move |c| Failure {
                group: r.group_name.clone(),
                normal: r.n_description.clone(),
                theorem: c.theorem.clone(),
                notes: c.notes.clone(),
                counterexample: c.counterexample.clone(),
            })
        })
        .collect();
    let summary = summarize(&reports);
    let code = if failures.is_empty() { EXIT_OK } else { EXIT_FAIL };
    match cli.format {
        Format::Json => {
            let doc = AuditJson {
                max_order: bound,
                groups: entries.len(),
                pairs: reports.len(),
                summary,
                failures,
                reports: reports.iter().map(|r| PairJson::from_report(r, false)).collect(),
            };
            emit_json(out, &doc)?;
        }
        Format::Dot => {
            for r in &reports {
                let graph = ClassGraph::from_sizes(&r.class_sizes);
                write!(out, "{}", graph.to_dot(&format!("{} / {}", r.group_name, r.n_description)))?;
            }
        }
        Format::Text => {
            writeln!(out, "{} groups, {} (G, N) pairs", entries.len(), reports.len())?;
            writeln!(out, "{:<26} {:>6} {:>6} {:>6}", "check", "pass", "fail", "n/a")?;
            for (id, t) in &summary {
                writeln!(out, "{:<26} {:>6} {:>6} {:>6}", id, t.pass, t.fail, t.not_applicable)?;
            }
            for f in &failures {
                writeln!(out, "FAIL {} / {}: {} ({})", f.group, f.normal, f.theorem, f.notes.join("; "))?;
            }
            let distinct = reports.iter().filter(|r| r.distinct_class_sizes && r.shape.vertices > 0).count();
            writeln!(out, "pairs with pairwise distinct class sizes: {distinct}")?;
        }
    }
    Ok(code)
}

fn repro_row(entry: &classgraph::constructions::CatalogEntry) -> ReproRow {
    let mut row = ReproRow {
        id: entry.id.to_string(),
        description: entry.description.to_string(),
        group: entry.spec.to_string(),
        normal: entry.normal.to_string(),
        expected: entry.expected.clone(),
        computed: None,
        status: "ERROR".into(),
        error: None,
        shape: None,
        triangle_free: None,
        ordinary_triangle: None,
        single_triangle: None,
        failed_checks: Vec::new(),
    };
    let built = match build(&entry.spec) {
        Ok(b) => b,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let Some(n) = entry.normal.resolve(&built) else {
        row.error = Some(format!("selector '{}' matches no normal subgroup", entry.normal));
        return row;
    };
    let name = format!("example:{}", entry.id);
    let report = match audit_pair(&built.group, &n, &name, &entry.normal.to_string()) {
        Ok(r) => r,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let ordinary: Vec<Check> = if report.n_order == report.group_order {
        report.checks.clone()
    } else {
        audit_ordinary_graph(&built.group, &name).unwrap_or_default()
    };
    let verdict_of = |checks: &[Check], id: &str| checks.iter().find(|c| c.theorem == id).map(|c| c.verdict);
    row.triangle_free = verdict_of(&report.checks, ids::TRIANGLE_FREE);
    row.single_triangle = verdict_of(&report.checks, ids::SINGLE_TRIANGLE);
    row.ordinary_triangle = verdict_of(&ordinary, ids::ORDINARY_SINGLE_TRIANGLE);
    row.failed_checks = report
        .checks
        .iter()
        .chain(ordinary.iter())
        .filter(|c| c.verdict == Verdict::Fail)
        .map(|c| c.theorem.clone())
        .collect();
    row.shape = Some(report.shape.tag.as_str().to_string());
    row.status = if report.class_sizes == entry.expected && row.failed_checks.is_empty() {
        "MATCH".into()
    } else {
        "MISMATCH".into()
    };
    row.computed = Some(report.class_sizes);
    row
}

fn fmt_sizes(sizes: &[u64]) -> String {
    // runs of central classes are collapsed, e.g. 1x6
    let ones = sizes.iter().take_while(|&&s| s == 1).count();
    let mut parts = Vec::new();
    if ones > 1 {
        parts.push(format!("1x{ones}"));
    } else if ones == 1 {
        parts.push("1".to_string());
    }
    parts.extend(sizes[ones..].iter().map(|s| s.to_string()));
    format!("{{{}}}", parts.join(","))
}

fn repro(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let catalog = example_catalog();
    let rows: Vec<ReproRow> = catalog.par_iter().map(repro_row).collect();
    let all_match = rows.iter().all(|r| r.status == "MATCH");
    match cli.format {
        Format::Json => emit_json(
            out,
            &ReproJson {
                rows: rows.clone(),
                all_match,
            },
        )?,
        Format::Text | Format::Dot => {
            let opt = |v: Option<Verdict>| v.map(verdict_str).unwrap_or("-");
            writeln!(
                out,
                "{:<7} {:<22} {:<22} {:<9} {:<5} {:<5} {:<5} {}",
                "id", "expected", "computed", "status", "A", "B", "C", "group / normal"
            )?;
            for r in &rows {
                let computed = r.computed.as_deref().map(fmt_sizes).unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "{:<7} {:<22} {:<22} {:<9} {:<5} {:<5} {:<5} {} / {}",
                    r.id,
                    fmt_sizes(&r.expected),
                    computed,
                    r.status,
                    opt(r.triangle_free),
                    opt(r.ordinary_triangle),
                    opt(r.single_triangle),
                    r.group,
                    r.normal
                )?;
                if let Some(e) = &r.error {
                    writeln!(out, "        error: {e}")?;
                }
                if !r.failed_checks.is_empty() {
                    writeln!(out, "        failed: {}", r.failed_checks.join(", "))?;
                }
            }
            let matched = rows.iter().filter(|r| r.status == "MATCH").count();
            writeln!(out, "{matched}/{} match", rows.len())?;
            writeln!(out, "A: triangle-free, B: ordinary single triangle, C: single triangle")?;
        }
    }
    Ok(if all_match { EXIT_OK } else { EXIT_FAIL })
}

/// Re-serializes an `analyze`/`audit` JSON document through its typed form.
pub fn reserialize(text: &str) -> std::result::Result<String, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let out = if value.is_array() {
        let rows: Vec<PairJson> = serde_json::from_str(text).map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&rows)
    } else if value.get("rows").is_some() {
        let doc: ReproJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&doc)
    } else if value.get("summary").is_some() {
        let doc: AuditJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&doc)
    } else {
        let doc: PairJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&doc)
    };
    out.map(|s| s + "\n").map_err(|e| e.to_string())
}
