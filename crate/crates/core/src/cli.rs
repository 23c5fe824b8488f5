//! The `seqgroup` command line.
//!
//! Exit codes: 0 pass/found, 1 fail/refuted (or a failed construction),
//! 2 inconclusive, 3 usage, parse and I/O errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::construct::{
    dr_sequencing_abelian, symmetric_harmonious_construct, symmetric_sequencing_for_spec,
    ConstructError, ConstructionTrace,
};
use crate::families::builtin_specs;
use crate::group::{build_group, hall_paige, is_binary, FiniteGroup, GroupSpec, Subset};
use crate::search::{
    extend_partial, search_property_jobs, supersequenceable_check, PropertyReport, SearchBudget,
    SearchError, SuperReading, SupersequenceReport, Verdict,
};
use crate::seq::{verify, PropertyKind, Seq};
use crate::seqfile::{read_seq_file, write_seq_file, LoadedSeq};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

/// Groups up to this order are searched exhaustively unless limits are given.
pub const EXHAUSTIVE_ORDER: usize = 12;
pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

/// Kinds shown by `report`.
pub const REPORT_KINDS: [PropertyKind; 5] = [
    PropertyKind::Sequencing,
    PropertyKind::RSequencing,
    PropertyKind::SymmetricSequencing,
    PropertyKind::TwoSequencing,
    PropertyKind::Harmonious,
];

#[derive(Debug, Parser)]
#[command(name = "seqgroup", version, about = "Construct, verify and search group sequencings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a sequence by an explicit construction and write a sequence file
    Construct(ConstructArgs),
    /// Check a sequence file against a property
    Verify(VerifyArgs),
    /// Decide a property by backtracking search
    Search(SearchArgs),
    /// Complete a partial sequence
    Extend(ExtendArgs),
    /// Print a matrix of search verdicts over the built-in families
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Reading {
    #[default]
    IdentityViaRSequencing,
    EndpointOnly,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Run to completion
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    #[arg(long, value_name = "N")]
    max_millis: Option<u64>,
    /// Worker threads for the search
    #[arg(long, value_name = "N", default_value_t = 1)]
    jobs: usize,
}

impl BudgetArgs {
    fn budget(&self, order: usize) -> Result<SearchBudget, SearchError> {
        let budget = if !self.exhaustive && self.max_nodes.is_none() && self.max_millis.is_none() {
            default_budget(order)
        } else {
            SearchBudget {
                max_nodes: self.max_nodes,
                max_millis: self.max_millis,
                exhaustive: self.exhaustive,
            }
        };
        budget.validate()?;
        Ok(budget)
    }
}

pub fn default_budget(order: usize) -> SearchBudget {
    if order <= EXHAUSTIVE_ORDER {
        SearchBudget::exhaustive()
    } else {
        SearchBudget::nodes(DEFAULT_MAX_NODES)
    }
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    kind: String,
    /// Write the sequence file here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print the construction trace as JSON on stderr
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    kind: String,
    #[arg(long, value_name = "PATH")]
    seq: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    group: String,
    /// A property kind, or `supersequenceable`
    #[arg(long)]
    kind: String,
    #[command(flatten)]
    budget: BudgetArgs,
    /// How `supersequenceable` certifies the identity
    #[arg(long, value_enum, default_value_t)]
    reading: Reading,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct ExtendArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    kind: String,
    /// Sequence file holding the prefix
    #[arg(long, value_name = "PATH")]
    seq: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long, value_name = "N")]
    max_order: usize,
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    #[arg(long, value_name = "N", default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// A failure that ends the command with the given exit code.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn fail(message: impl ToString) -> Self {
        Self {
            code: EXIT_FAIL,
            message: message.to_string(),
        }
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Output { out, err };
    let result = match cli.command {
        Command::Construct(a) => construct(a, &mut io),
        Command::Verify(a) => verify_cmd(a, &mut io),
        Command::Search(a) => search_cmd(a, &mut io),
        Command::Extend(a) => extend_cmd(a, &mut io),
        Command::Report(a) => report_cmd(a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {}", e.message);
            e.code
        }
    }
}

fn emit(io: &mut Output<'_>, text: &str) -> Result<(), Exit> {
    io.out
        .write_all(text.as_bytes())
        .map_err(|e| Exit::usage(format!("cannot write output: {e}")))
}

fn parse_group(text: &str) -> Result<(GroupSpec, FiniteGroup), Exit> {
    let spec: GroupSpec = text.parse().map_err(Exit::usage)?;
    let group = build_group(&spec).map_err(Exit::usage)?;
    Ok((spec, group))
}

fn parse_kind(text: &str) -> Result<PropertyKind, Exit> {
    text.parse().map_err(Exit::usage)
}

fn load_seq(path: &PathBuf, spec: &GroupSpec) -> Result<LoadedSeq, Exit> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Exit::usage(format!("cannot read {}: {e}", path.display())))?;
    let loaded = read_seq_file(&text).map_err(Exit::usage)?;
    if &loaded.spec != spec {
        return Err(Exit::usage(format!(
            "{} holds a sequence of {}, not {}",
            path.display(),
            loaded.spec,
            spec
        )));
    }
    Ok(loaded)
}

fn verdict_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Found => EXIT_OK,
        Verdict::Refuted => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn labelled(group: &FiniteGroup, seq: &Seq) -> Vec<String> {
    seq.labels(group).into_iter().map(str::to_owned).collect()
}

fn construct(args: ConstructArgs, io: &mut Output<'_>) -> Result<u8, Exit> {
    let (spec, group) = parse_group(&args.group)?;
    let kind = parse_kind(&args.kind)?;
    let built: Result<(Seq, Option<ConstructionTrace>), ConstructError> = match kind {
        PropertyKind::DoubleRSequencing => {
            let factors = spec
                .cyclic_orders()
                .ok_or_else(|| Exit::fail(ConstructError::NotCyclicFactors(spec.to_string())))?;
            dr_sequencing_abelian(&factors).map(|(_, s, t)| (s, Some(t)))
        }
        PropertyKind::SymmetricSequencing => {
            symmetric_sequencing_for_spec(&spec).map(|(_, s, t)| (s, Some(t)))
        }
        PropertyKind::SymmetricHarmonious => symmetric_harmonious_construct(&group).map(|s| (s, None)),
        other => {
            return Err(Exit::usage(format!(
                "no construction for {other}; constructible kinds are double-r-sequencing, symmetric-sequencing and symmetric-harmonious"
            )))
        }
    };
    let (seq, trace) = built.map_err(Exit::fail)?;
    let report = verify(&group, &Subset::full(&group), kind, &seq).map_err(Exit::fail)?;
    if let Some(failure) = report.failure {
        return Err(Exit::fail(format!("constructed sequence fails {kind}: {failure}")));
    }
    let text = write_seq_file(&group, &spec, &seq);
    match &args.out {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| Exit::usage(format!("cannot write {}: {e}", path.display())))?,
        None => emit(io, &text)?,
    }
    if args.trace {
        let text = match &trace {
            Some(t) => to_json(t),
            None => to_json(&serde_json::json!({
                "construction": kind.name(),
                "group": spec.to_string(),
                "output": labelled(&group, &seq),
            })),
        };
        io.err
            .write_all(text.as_bytes())
            .map_err(|e| Exit::usage(format!("cannot write trace: {e}")))?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    group: String,
    kind: PropertyKind,
    pass: bool,
    failure: Option<String>,
    terms: Vec<&'a str>,
    derived: Vec<&'a str>,
}

fn verify_cmd(args: VerifyArgs, io: &mut Output<'_>) -> Result<u8, Exit> {
    let (spec, _) = parse_group(&args.group)?;
    let kind = parse_kind(&args.kind)?;
    let loaded = load_seq(&args.seq, &spec)?;
    let group = &loaded.group;
    let set = Subset::full(group);
    let report = verify(group, &set, kind, &loaded.seq).map_err(Exit::usage)?;
    let output = VerifyOutput {
        group: spec.to_string(),
        kind,
        pass: report.pass,
        failure: report.failure.as_ref().map(|f| f.to_string()),
        terms: loaded.seq.labels(group),
        derived: report.derived.labels(group),
    };
    let text = match args.format {
        Format::Json => to_json(&output),
        Format::Text => {
            let mut t = String::new();
            let _ = writeln!(t, "group: {}", output.group);
            let _ = writeln!(t, "kind: {kind}");
            let _ = writeln!(t, "result: {}", if output.pass { "pass" } else { "fail" });
            if let Some(f) = &output.failure {
                let _ = writeln!(t, "failure: {f}");
            }
            let _ = writeln!(t, "terms: {}", output.terms.join(" "));
            let _ = writeln!(t, "derived: {}", output.derived.join(" "));
            t
        }
    };
    emit(io, &text)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct ReportOutput {
    group: String,
    kind: String,
    verdict: Verdict,
    witness: Option<Vec<String>>,
    nodes_explored: u64,
    elapsed_millis: u64,
    subset: Vec<String>,
}

impl ReportOutput {
    fn new(spec: &GroupSpec, group: &FiniteGroup, report: &PropertyReport) -> Self {
        Self {
            group: spec.to_string(),
            kind: report.kind.to_string(),
            verdict: report.verdict,
            witness: report.witness.as_ref().map(|w| labelled(group, w)),
            nodes_explored: report.nodes_explored,
            elapsed_millis: report.elapsed_millis,
            subset: report.subset.iter().map(|&x| group.label(x).to_owned()).collect(),
        }
    }

    fn text(&self) -> String {
        let mut t = String::new();
        let _ = writeln!(t, "group: {}", self.group);
        let _ = writeln!(t, "kind: {}", self.kind);
        let _ = writeln!(t, "verdict: {}", self.verdict);
        if let Some(w) = &self.witness {
            let _ = writeln!(t, "witness: {}", w.join(" "));
        }
        let _ = writeln!(t, "nodes: {}", self.nodes_explored);
        let _ = writeln!(t, "elapsed_ms: {}", self.elapsed_millis);
        t
    }
}

fn print_report(
    io: &mut Output<'_>,
    format: Format,
    spec: &GroupSpec,
    group: &FiniteGroup,
    report: &PropertyReport,
) -> Result<u8, Exit> {
    let output = ReportOutput::new(spec, group, report);
    let text = match format {
        Format::Json => to_json(&output),
        Format::Text => output.text(),
    };
    emit(io, &text)?;
    Ok(verdict_code(report.verdict))
}

fn search_cmd(args: SearchArgs, io: &mut Output<'_>) -> Result<u8, Exit> {
    let (spec, group) = parse_group(&args.group)?;
    let budget = args.budget.budget(group.order()).map_err(Exit::usage)?;
    if args.kind == "supersequenceable" {
        let reading = match args.reading {
            Reading::IdentityViaRSequencing => SuperReading::IdentityViaRSequencing,
            Reading::EndpointOnly => SuperReading::EndpointOnly,
        };
        let report = supersequenceable_check(&group, &budget, reading).map_err(Exit::usage)?;
        return print_super(io, args.format, &spec, &group, &report);
    }
    let kind = parse_kind(&args.kind)?;
    let report = search_property_jobs(&group, &Subset::full(&group), kind, &budget, args.budget.jobs.max(1))
        .map_err(Exit::usage)?;
    print_report(io, args.format, &spec, &group, &report)
}

fn print_super(
    io: &mut Output<'_>,
    format: Format,
    spec: &GroupSpec,
    group: &FiniteGroup,
    report: &SupersequenceReport,
) -> Result<u8, Exit> {
    let text = match format {
        Format::Json => {
            let entries: Vec<_> = report
                .entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "h": group.label(e.h),
                        "verdict": e.verdict,
                        "branch": e.branch,
                        "witness": e.witness.as_ref().map(|w| labelled(group, w)),
                        "nodes_explored": e.nodes_explored,
                    })
                })
                .collect();
            to_json(&serde_json::json!({
                "group": spec.to_string(),
                "kind": "supersequenceable",
                "reading": report.reading,
                "verdict": report.verdict,
                "entries": entries,
                "elapsed_millis": report.elapsed_millis,
            }))
        }
        Format::Text => {
            let mut t = String::new();
            let _ = writeln!(t, "group: {spec}");
            let _ = writeln!(t, "kind: supersequenceable");
            let _ = writeln!(t, "verdict: {}", report.verdict);
            for e in &report.entries {
                let how = match e.branch {
                    Some(b) => serde_json::to_value(b).expect("branch serializes").as_str().unwrap_or_default().to_owned(),
                    None => "-".to_owned(),
                };
                let _ = writeln!(t, "h {}: {} ({how})", group.label(e.h), e.verdict);
            }
            t
        }
    };
    emit(io, &text)?;
    Ok(verdict_code(report.verdict))
}

fn extend_cmd(args: ExtendArgs, io: &mut Output<'_>) -> Result<u8, Exit> {
    let (spec, _) = parse_group(&args.group)?;
    let kind = parse_kind(&args.kind)?;
    if !kind.is_partial() {
        return Err(Exit::usage(format!("{kind} is not a partial kind")));
    }
    let loaded = load_seq(&args.seq, &spec)?;
    let group = &loaded.group;
    let budget = args.budget.budget(group.order()).map_err(Exit::usage)?;
    let report = match extend_partial(group, &Subset::full(group), kind, &loaded.seq, &budget) {
        Ok(r) => r,
        Err(e @ SearchError::InvalidPrefix(_)) => return Err(Exit::fail(e)),
        Err(e) => return Err(Exit::usage(e)),
    };
    print_report(io, args.format, &spec, group, &report)
}

#[derive(Debug, Serialize)]
struct ReportCell {
    kind: PropertyKind,
    verdict: Verdict,
}

#[derive(Debug, Serialize)]
struct ReportRow {
    group: String,
    order: usize,
    binary: bool,
    hall_paige: bool,
    cells: Vec<ReportCell>,
}

#[derive(Debug, Serialize)]
struct ReportMatrix {
    max_order: usize,
    kinds: Vec<PropertyKind>,
    rows: Vec<ReportRow>,
}

fn report_cmd(args: ReportArgs, io: &mut Output<'_>) -> Result<u8, Exit> {
    let mut rows = Vec::new();
    for spec in builtin_specs(args.max_order) {
        let group = build_group(&spec).map_err(Exit::usage)?;
        if group.order() < 2 {
            continue;
        }
        let budget = match args.max_nodes {
            Some(n) => SearchBudget::nodes(n),
            None => default_budget(group.order()),
        };
        budget.validate().map_err(Exit::usage)?;
        let full = Subset::full(&group);
        let cells = REPORT_KINDS
            .iter()
            .map(|&kind| {
                search_property_jobs(&group, &full, kind, &budget, args.jobs.max(1))
                    .map(|r| ReportCell { kind, verdict: r.verdict })
                    .map_err(Exit::usage)
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(ReportRow {
            group: spec.to_string(),
            order: group.order(),
            binary: is_binary(&group),
            hall_paige: hall_paige(&group),
            cells,
        });
    }
    let inconclusive = rows
        .iter()
        .flat_map(|r| &r.cells)
        .any(|c| c.verdict == Verdict::Inconclusive);
    let matrix = ReportMatrix {
        max_order: args.max_order,
        kinds: REPORT_KINDS.to_vec(),
        rows,
    };
    let text = match args.format {
        Format::Json => to_json(&matrix),
        Format::Text => report_text(&matrix),
    };
    emit(io, &text)?;
    Ok(if inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK })
}

fn report_text(matrix: &ReportMatrix) -> String {
    let short = |v: Verdict| match v {
        Verdict::Found => "yes",
        Verdict::Refuted => "no",
        Verdict::Inconclusive => "?",
    };
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut header = vec!["group".to_owned(), "order".to_owned(), "binary".to_owned(), "hall-paige".to_owned()];
    header.extend(matrix.kinds.iter().map(|k| k.name().to_owned()));
    let mut table = vec![header];
    for row in &matrix.rows {
        let mut line = vec![
            row.group.clone(),
            row.order.to_string(),
            yes_no(row.binary).to_owned(),
            yes_no(row.hall_paige).to_owned(),
        ];
        line.extend(row.cells.iter().map(|c| short(c.verdict).to_owned()));
        table.push(line);
    }
    let widths: Vec<usize> = (0..table[0].len())
        .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut t = String::new();
    for line in table {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(t, "{}", cells.join("  ").trim_end());
    }
    t
}
