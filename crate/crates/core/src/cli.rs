//! Command-line front end. Output is plain text and byte-for-byte
//! deterministic; diagnostics go to the error stream prefixed with
//! `file:line:column`.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::model::{Axiom, KnowledgeBase, ModelError};
use crate::oracle::{find_model, OracleError};
use crate::reasoner::{Reasoner, ReasonerError};
use crate::rules::{materialize, FactStore, MaterializeConfig, MaterializeMode, RuleError, SafetyMode};
use crate::syntax::{knowledge_base, parse_statements, serialize_dl, Located, Statement};
use crate::tableau::{Outcome, Tableau, TableauConfig, TableauError, DEFAULT_MAX_NODES};
use crate::turtle::{from_turtle, to_turtle, TurtleError};
use crate::validate::{validate, Diagnostic, Severity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tableau-kb",
    version,
    about = "Reasoning over description-logic knowledge bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report whether the knowledge base is consistent.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
        /// Print the rule applications and clashes of the run.
        #[arg(long)]
        trace: bool,
    },
    /// Print the concept hierarchy.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
        /// Output format; plain text by default.
        #[arg(long, value_name = "FORMAT")]
        output: Option<OutputFormat>,
    },
    /// Print the most specific concept names of every individual.
    Realize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
    },
    /// Apply the rules and role chains and print the derived facts.
    Materialize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
        /// Match rule bodies against asserted facts only, or against everything
        /// the knowledge base entails.
        #[arg(long, value_enum, default_value_t = Mode::Asserted)]
        mode: Mode,
        /// Reject rules with unguarded variables instead of guarding them.
        #[arg(long)]
        strict_rules: bool,
        /// Output format; plain text by default.
        #[arg(long, value_name = "FORMAT")]
        output: Option<OutputFormat>,
        /// Print the rule instances behind every derived fact.
        #[arg(long)]
        trace: bool,
    },
    /// Translate between the DL syntax and Turtle. The target format is taken
    /// from the extension of `--out`, else it is the other format.
    Convert {
        #[command(flatten)]
        input: Input,
    },
    /// Check that the knowledge base can be handed to the reasoners.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Search for a finite model by enumeration.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Largest domain size tried.
        #[arg(long, value_name = "D", default_value_t = 4)]
        oracle_bound: usize,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Input files; `.dl` or `.ttl`. Several files are read as one knowledge base.
    #[arg(required = true, value_name = "FILE")]
    files: Vec<PathBuf>,
    /// Input format, overriding the file extension.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output to a file instead of standard output.
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Limits {
    /// Node limit of a tableau run.
    #[arg(long, value_name = "N", env = "TABLEAUKB_MAX_NODES", default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dl,
    Ttl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Ttl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Asserted,
    Entailment,
}

/// A diagnostic with its place in the input.
struct Message {
    path: String,
    line: usize,
    column: usize,
    severity: &'static str,
    message: String,
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: {}: {}",
            self.path, self.line, self.column, self.severity, self.message
        )
    }
}

/// One parsed statement with the file it came from.
struct Entry {
    path: String,
    at: Located,
}

struct Loaded {
    kb: KnowledgeBase,
    entries: Vec<Entry>,
    format: Format,
    warnings: Vec<Message>,
}

/// Everything a command produces; written out only at the end.
struct Report {
    out: String,
    diags: Vec<Message>,
    code: i32,
}

impl Report {
    fn new() -> Self {
        Report {
            out: String::new(),
            diags: vec![],
            code: EXIT_OK,
        }
    }

    fn fail(mut self, code: i32, diag: Message) -> Self {
        self.diags.push(diag);
        self.code = code;
        self
    }
}

fn at(path: &str, line: usize, column: usize, severity: &'static str, message: impl Into<String>) -> Message {
    Message {
        path: path.to_string(),
        line,
        column,
        severity,
        message: message.into(),
    }
}

fn error(path: &str, message: impl Into<String>) -> Message {
    at(path, 1, 1, "error", message)
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (report, out_path) = execute(cli.command);
    for d in &report.diags {
        let _ = writeln!(stderr, "{d}");
    }
    match out_path {
        Some(path) if report.code != EXIT_INPUT => {
            if let Err(e) = std::fs::write(&path, &report.out) {
                let _ = writeln!(stderr, "{}", error(&path.display().to_string(), e.to_string()));
                return EXIT_INPUT;
            }
        }
        _ => {
            let _ = stdout.write_all(report.out.as_bytes());
        }
    }
    report.code
}

fn execute(command: Command) -> (Report, Option<PathBuf>) {
    match command {
        Command::Check { input, limits, trace } => (with_input(&input, |l| check(l, &limits, trace)), input.out),
        Command::Classify { input, limits, output } => {
            (with_input(&input, |l| classify(l, &limits, output)), input.out)
        }
        Command::Realize { input, limits } => (with_input(&input, |l| realize(l, &limits)), input.out),
        Command::Materialize {
            input,
            limits,
            mode,
            strict_rules,
            output,
            trace,
        } => {
            let config = MaterializeConfig {
                mode: match mode {
                    Mode::Asserted => MaterializeMode::Asserted,
                    Mode::Entailment => MaterializeMode::Entailment,
                },
                safety: if strict_rules {
                    SafetyMode::Strict
                } else {
                    SafetyMode::Auto
                },
                max_nodes: limits.max_nodes,
                timeout: None,
            };
            (
                with_input(&input, |l| materialize_cmd(l, &config, output, trace)),
                input.out,
            )
        }
        Command::Convert { input } => {
            let target = match input.out.as_deref().map(format_of) {
                Some(Ok(f)) => Some(f),
                Some(Err(msg)) => {
                    let path = input.out.as_ref().unwrap().display().to_string();
                    return (Report::new().fail(EXIT_INPUT, error(&path, msg)), None);
                }
                None => None,
            };
            (with_input(&input, |l| convert(l, target)), input.out)
        }
        Command::Validate { input } => (with_input(&input, validate_cmd), input.out),
        Command::Oracle { input, oracle_bound } => (with_input(&input, |l| oracle(l, oracle_bound)), input.out),
    }
}

fn with_input(input: &Input, f: impl FnOnce(&Loaded) -> Report) -> Report {
    match load(input) {
        Ok(loaded) => {
            let mut report = f(&loaded);
            let mut diags = loaded.warnings;
            diags.append(&mut report.diags);
            report.diags = diags;
            report
        }
        Err(diags) => Report {
            out: String::new(),
            diags,
            code: EXIT_INPUT,
        },
    }
}

fn format_of(path: &Path) -> Result<Format, String> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("dl") => Ok(Format::Dl),
        Some("ttl") => Ok(Format::Ttl),
        _ => Err("cannot infer the format from the extension; use --format dl|ttl".into()),
    }
}

fn load(input: &Input) -> Result<Loaded, Vec<Message>> {
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    let mut first_format = None;
    for file in &input.files {
        let path = file.display().to_string();
        let format = match input.format {
            Some(f) => f,
            None => format_of(file).map_err(|m| vec![error(&path, m)])?,
        };
        first_format.get_or_insert(format);
        let text = std::fs::read_to_string(file).map_err(|e| vec![error(&path, e.to_string())])?;
        match format {
            Format::Dl => {
                let statements = parse_statements(&text)
                    .map_err(|e| vec![at(&path, e.line, e.column, "error", e.kind.to_string())])?;
                entries.extend(statements.into_iter().map(|at| Entry { path: path.clone(), at }));
            }
            Format::Ttl => {
                let import = from_turtle(&text).map_err(|e| vec![turtle_error(&path, &e)])?;
                for d in import.diagnostics {
                    warnings.push(at(&path, 1, 1, "warning", format!("{}: {}", d.message, d.triple)));
                }
                entries.extend(import.kb.axioms().iter().map(|ax| Entry {
                    path: path.clone(),
                    at: Located {
                        line: 1,
                        column: 1,
                        statement: Statement::Axiom(ax.clone()),
                    },
                }));
            }
        }
    }
    let kb = build(&entries).map_err(|e| {
        let n = first_prefix(&entries, |kb| kb.is_none());
        vec![entry_diag(&entries, n, "error", e.to_string())]
    })?;
    Ok(Loaded {
        kb,
        entries,
        format: first_format.unwrap_or(Format::Dl),
        warnings,
    })
}

fn build(entries: &[Entry]) -> Result<KnowledgeBase, ModelError> {
    let statements: Vec<Located> = entries.iter().map(|e| e.at.clone()).collect();
    knowledge_base(&statements)
}

fn turtle_error(path: &str, e: &TurtleError) -> Message {
    match e {
        TurtleError::Syntax { line, column, message } => at(path, *line as usize, *column as usize, "error", message),
        other => error(path, other.to_string()),
    }
}

/// Index of the last statement of the shortest prefix satisfying `hit`.
fn first_prefix(entries: &[Entry], hit: impl Fn(Option<&KnowledgeBase>) -> bool) -> Option<usize> {
    (1..=entries.len())
        .find(|&n| hit(build(&entries[..n]).ok().as_ref()))
        .map(|n| n - 1)
}

fn entry_diag(entries: &[Entry], index: Option<usize>, severity: &'static str, message: String) -> Message {
    match index.and_then(|i| entries.get(i)).or(entries.first()) {
        Some(e) => at(&e.path, e.at.line, e.at.column, severity, message),
        None => at("<input>", 1, 1, severity, message),
    }
}

/// Places a validation diagnostic at the statement that first provokes it.
fn locate(loaded: &Loaded, d: &Diagnostic) -> Message {
    let exact = first_prefix(&loaded.entries, |kb| kb.is_some_and(|kb| validate(kb).contains(d)));
    let index = exact.or_else(|| {
        first_prefix(&loaded.entries, |kb| {
            kb.is_some_and(|kb| validate(kb).iter().any(|e| e.code == d.code))
        })
    });
    let severity = match d.severity {
        Severity::Error => "error",
        Severity::Warning => "warning",
    };
    entry_diag(&loaded.entries, index, severity, d.message.clone())
}

fn rule_diag(loaded: &Loaded, rule: &str, message: String) -> Message {
    let index = loaded
        .entries
        .iter()
        .position(|e| matches!(&e.at.statement, Statement::Rule(r) if r.to_string() == rule));
    entry_diag(&loaded.entries, index, "error", message)
}

fn fallback(loaded: &Loaded, severity: &'static str, message: impl Into<String>) -> Message {
    entry_diag(&loaded.entries, None, severity, message.into())
}

/// Validation errors as located diagnostics; empty when admissible.
fn admissible(loaded: &Loaded) -> Vec<Message> {
    validate(&loaded.kb)
        .iter()
        .filter(|d| d.is_error())
        .map(|d| locate(loaded, d))
        .collect()
}

fn invalid(loaded: &Loaded, diags: &[Diagnostic]) -> Report {
    let mut report = Report::new();
    report.diags = diags.iter().map(|d| locate(loaded, d)).collect();
    report.code = EXIT_INPUT;
    report
}

fn limit(loaded: &Loaded, max_nodes: usize) -> Report {
    let mut report = Report::new();
    report.out.push_str("inconclusive\n");
    report.fail(
        EXIT_LIMIT,
        fallback(loaded, "error", format!("tableau exceeded {max_nodes} nodes")),
    )
}

fn rule_failure(loaded: &Loaded, e: RuleError) -> Report {
    match e {
        RuleError::Unsafe { ref rule, .. } => Report::new().fail(EXIT_INPUT, rule_diag(loaded, rule, e.to_string())),
        RuleError::Invalid(diags) => invalid(loaded, &diags),
        RuleError::Inconsistent | RuleError::BecameInconsistent => {
            let mut report = Report::new();
            report.out.push_str("inconsistent\n");
            report.fail(EXIT_NO, fallback(loaded, "error", e.to_string()))
        }
        RuleError::Model(e) => Report::new().fail(EXIT_INPUT, fallback(loaded, "error", e.to_string())),
    }
}

fn reasoner_failure(loaded: &Loaded, e: ReasonerError, max_nodes: usize) -> Report {
    match e {
        ReasonerError::Inconsistent => {
            let mut report = Report::new();
            report.out.push_str("inconsistent\n");
            report.code = EXIT_NO;
            report
        }
        ReasonerError::Tableau(TableauError::ResourceLimit { .. }) => limit(loaded, max_nodes),
        ReasonerError::Tableau(TableauError::Invalid(diags)) => invalid(loaded, &diags),
        ReasonerError::Rules(e) => rule_failure(loaded, e),
        other => Report::new().fail(EXIT_INPUT, fallback(loaded, "error", other.to_string())),
    }
}

fn check(loaded: &Loaded, limits: &Limits, trace: bool) -> Report {
    let errors = admissible(loaded);
    if !errors.is_empty() {
        let mut report = Report::new();
        report.diags = errors;
        report.code = EXIT_INPUT;
        return report;
    }
    let config = TableauConfig {
        max_nodes: limits.max_nodes,
    };
    let base = loaded
        .kb
        .with_rules(Vec::new())
        .expect("dropping rules keeps a valid knowledge base");
    let verdict = match Tableau::new(&base, config).and_then(|t| t.consistency()) {
        Ok(v) => v,
        Err(TableauError::ResourceLimit { max_nodes }) => return limit(loaded, max_nodes),
        Err(TableauError::Invalid(diags)) => return invalid(loaded, &diags),
    };
    let mut report = Report::new();
    let mut consistent = verdict.is_satisfiable();
    let chains = loaded.kb.rbox().any(|ax| matches!(ax, Axiom::ComplexRoleInclusion(..)));
    if consistent && (!loaded.kb.rules().is_empty() || chains) {
        let config = MaterializeConfig {
            mode: MaterializeMode::Entailment,
            max_nodes: limits.max_nodes,
            ..Default::default()
        };
        match materialize(&loaded.kb, &config) {
            Ok(store) => warn_incomplete(loaded, &store, &mut report),
            Err(RuleError::BecameInconsistent) => consistent = false,
            Err(e) => return rule_failure(loaded, e),
        }
    }
    for reason in &verdict.possibly_incomplete {
        caveat(loaded, reason, &mut report);
    }
    report
        .out
        .push_str(if consistent { "consistent\n" } else { "inconsistent\n" });
    if let Outcome::Unsatisfiable(clash) = &verdict.outcome {
        report.out.push_str(&format!("clash: {}\n", clash.kind));
    }
    if trace {
        for step in &verdict.trace {
            report.out.push_str(&format!("{step}\n"));
        }
        report.out.push_str(&format!("backtracks: {}\n", verdict.backtracks));
    }
    report.code = if consistent { EXIT_OK } else { EXIT_NO };
    report
}

fn warn_incomplete(loaded: &Loaded, store: &FactStore, report: &mut Report) {
    for reason in &store.incomplete {
        report
            .diags
            .push(fallback(loaded, "warning", format!("incomplete: {reason}")));
    }
    for reason in &store.caveats {
        caveat(loaded, reason, report);
    }
}

fn caveat(loaded: &Loaded, reason: &str, report: &mut Report) {
    let message = format!("possibly incomplete: {reason}");
    if !report.diags.iter().any(|d| d.message == message) {
        report.diags.push(fallback(loaded, "warning", message));
    }
}

fn reasoner(loaded: &Loaded, limits: &Limits) -> Result<Reasoner, Report> {
    let errors = admissible(loaded);
    if !errors.is_empty() {
        let mut report = Report::new();
        report.diags = errors;
        report.code = EXIT_INPUT;
        return Err(report);
    }
    let config = TableauConfig {
        max_nodes: limits.max_nodes,
    };
    Reasoner::new(&loaded.kb, config).map_err(|e| reasoner_failure(loaded, e, limits.max_nodes))
}

fn classify(loaded: &Loaded, limits: &Limits, output: Option<OutputFormat>) -> Report {
    let r = match reasoner(loaded, limits) {
        Ok(r) => r,
        Err(report) => return report,
    };
    match r.classify() {
        Ok(h) => {
            let mut report = Report::new();
            report.out = match output {
                Some(OutputFormat::Ttl) => h.to_turtle().to_string(),
                _ => h.to_text(),
            };
            if !r.is_consistent() {
                report.code = EXIT_NO;
            }
            report
        }
        Err(e) => reasoner_failure(loaded, e, limits.max_nodes),
    }
}

fn realize(loaded: &Loaded, limits: &Limits) -> Report {
    let result = reasoner(loaded, limits).map(|r| r.realize());
    match result {
        Ok(Ok(types)) => {
            let mut report = Report::new();
            for (a, cs) in types {
                let names: Vec<String> = cs.into_iter().collect();
                report.out.push_str(&format!("{a}: {}\n", names.join(", ")));
            }
            report
        }
        Ok(Err(e)) => reasoner_failure(loaded, e, limits.max_nodes),
        Err(report) => report,
    }
}

fn materialize_cmd(loaded: &Loaded, config: &MaterializeConfig, output: Option<OutputFormat>, trace: bool) -> Report {
    let store = match materialize(&loaded.kb, config) {
        Ok(store) => store,
        Err(e) => return rule_failure(loaded, e),
    };
    let mut report = Report::new();
    match output {
        Some(OutputFormat::Ttl) => {
            let derived = KnowledgeBase::new(store.derived_axioms(), vec![]).map(|kb| to_turtle(&kb));
            match derived {
                Ok(Ok(doc)) => report.out.push_str(&doc.to_string()),
                Ok(Err(e)) => return report.fail(EXIT_INPUT, fallback(loaded, "error", e.to_string())),
                Err(e) => return report.fail(EXIT_INPUT, fallback(loaded, "error", e.to_string())),
            }
        }
        _ => report.out.push_str(&store.to_dl()),
    }
    if trace {
        report.out.push('\n');
        report.out.push_str(&store.provenance_report());
    }
    warn_incomplete(loaded, &store, &mut report);
    if !store.is_complete() {
        report.code = EXIT_LIMIT;
    }
    report
}

fn convert(loaded: &Loaded, target: Option<Format>) -> Report {
    let target = target.unwrap_or(match loaded.format {
        Format::Dl => Format::Ttl,
        Format::Ttl => Format::Dl,
    });
    let mut report = Report::new();
    match target {
        Format::Dl => report.out = serialize_dl(&loaded.kb),
        Format::Ttl => match to_turtle(&loaded.kb) {
            Ok(doc) => report.out = doc.to_string(),
            Err(TurtleError::Unsupported { axiom, reason }) => {
                let index = loaded.entries.iter().position(|e| match &e.at.statement {
                    Statement::Axiom(a) => a.to_string() == axiom,
                    Statement::Rule(r) => r.to_string() == axiom,
                });
                let message = format!("cannot write `{axiom}` as Turtle: {reason}");
                return report.fail(EXIT_INPUT, entry_diag(&loaded.entries, index, "error", message));
            }
            Err(e) => return report.fail(EXIT_INPUT, fallback(loaded, "error", e.to_string())),
        },
    }
    report
}

fn validate_cmd(loaded: &Loaded) -> Report {
    let mut report = Report::new();
    let diags = validate(&loaded.kb);
    report.diags = diags.iter().map(|d| locate(loaded, d)).collect();
    if diags.iter().any(Diagnostic::is_error) {
        report.code = EXIT_INPUT;
    } else {
        report.out.push_str("valid\n");
    }
    report
}

fn oracle(loaded: &Loaded, bound: usize) -> Report {
    let mut report = Report::new();
    match find_model(&loaded.kb, bound) {
        Ok(Some(model)) => {
            report.out.push_str("model found\n");
            report.out.push_str(&model.to_table());
        }
        Ok(None) => {
            report
                .out
                .push_str(&format!("no model with at most {bound} elements\n"));
            report.code = EXIT_NO;
        }
        Err(e @ OracleError::BudgetExceeded { .. }) => {
            report.out.push_str("inconclusive\n");
            return report.fail(EXIT_LIMIT, fallback(loaded, "error", e.to_string()));
        }
        Err(e) => return report.fail(EXIT_INPUT, fallback(loaded, "error", e.to_string())),
    }
    report
}
