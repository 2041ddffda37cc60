//! Command-line front end. Every command prints a deterministic report, as
//! plain text or as a JSON document, and exits with
//! 0 (holds / feasible / found), 1 (refuted / infeasible / none) or
//! 2 (bad input, or a resource budget ran out).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certificate::{build_certificate, verify_certificate, Certificate};
use crate::checkers::{
    conflict_witness, is_pliable, is_structurally_submodular, is_uncrossable, partition_uncrossable,
    satisfies_gamma, validate_construction, ViolationReport,
};
use crate::config::{self, Config};
use crate::decompose::{express, verify_expression};
use crate::error::LpError;
use crate::lp::{build_realizability_lp, solve_feasibility, LpReport, RealizeMode};
use crate::{construct_family, ESet, Element, Family, TieBreak};

pub const REPORT_VERSION: &str = concat!("pliable ", env!("CARGO_PKG_VERSION"));

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pliable", version, about = "Pliable set families over the hypercube")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the report (for `construct`: the family file) here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = config::ENV_MAX_K)]
    pub max_k: Option<u32>,
    #[arg(long, global = true, env = config::ENV_LP_MAX_K)]
    pub lp_max_k: Option<u32>,
    #[arg(long, global = true, env = config::ENV_CONSTRUCT_BUDGET)]
    pub construct_budget: Option<u64>,
    #[arg(long, global = true, env = config::ENV_PARTITION_BUDGET)]
    pub partition_budget: Option<u64>,
    #[arg(long, global = true, env = config::ENV_PIVOT_BUDGET)]
    pub pivot_budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Pliable,
    Structural,
    Uncrossable,
    Gamma,
    Lemmas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Literal,
    Complemented,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the family for k and write it (default: family-k<K>-<policy>.json).
    Construct {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Policy::Min)]
        tiebreak: Policy,
    },
    /// Check one property of a family file.
    Check {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum)]
        property: PropertyArg,
    },
    /// Build the telescoping certificate for k and verify it against a
    /// family (constructed on the fly when --family is absent).
    Certify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Policy::Min)]
        tiebreak: Policy,
    },
    /// Decide sublevel realizability by a symmetric submodular function.
    Realize {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Complemented)]
        mode: ModeArg,
    },
    /// Search for a partition into d uncrossable subfamilies.
    Partition {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Rewrite a member as nested differences of coordinate sets.
    Express {
        #[arg(long)]
        family: PathBuf,
        /// Comma-separated element ids, e.g. `4,5,7`.
        #[arg(long)]
        set: String,
    },
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub version: &'static str,
    pub inputs: Value,
    pub outcome: String,
    pub payload: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
    #[serde(skip)]
    pub exit: i32,
}

impl Report {
    fn new(command: &'static str, inputs: Value) -> Self {
        Report {
            command,
            version: REPORT_VERSION,
            inputs,
            outcome: String::new(),
            payload: Value::Null,
            lines: Vec::new(),
            exit: EXIT_OK,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("{}: {}\n", self.command, self.outcome);
                for l in &self.lines {
                    s.push_str(l);
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// Input problem surfaced with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn config(cli: &Cli) -> Result<Config, InputError> {
    let mut cfg = Config::default();
    if let Some(v) = cli.max_k {
        cfg.max_k = v;
    }
    if let Some(v) = cli.lp_max_k {
        cfg.lp_max_k = v;
    }
    if let Some(v) = cli.construct_budget {
        cfg.construct_pair_budget = v;
    }
    if let Some(v) = cli.partition_budget {
        cfg.partition_node_budget = v;
    }
    if let Some(v) = cli.pivot_budget {
        cfg.pivot_budget = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn policy(p: Policy) -> TieBreak {
    match p {
        Policy::Min => TieBreak::LexMin,
        Policy::Max => TieBreak::LexMax,
    }
}

fn read_family(path: &Path) -> Result<Family, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Family::from_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Write via a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payload serializes")
}

fn violation_lines(r: &ViolationReport) -> Vec<String> {
    r.witnesses
        .iter()
        .map(|w| format!("  {}", serde_json::to_string(w).expect("witness serializes")))
        .collect()
}

fn cmd_construct(k: u32, tb: Policy, out: Option<&Path>, cfg: &Config) -> Result<Report, InputError> {
    let p = policy(tb);
    let f = construct_family(k, p, cfg)?;
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("family-k{k}-{}.json", p.label())));
    let mut doc = f.to_json();
    doc.push('\n');
    write_atomic(&path, &doc).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let sizes = f.generation_sizes();
    let mut r = Report::new("construct", json!({ "k": k, "tiebreak": p.label() }));
    r.outcome = "constructed".into();
    r.lines.push(format!("{} sets written to {}", f.len(), path.display()));
    for (g, n) in sizes.iter().enumerate() {
        r.lines.push(format!("  F_{g}: {n} sets"));
    }
    r.payload = json!({ "sets": f.len(), "generation_sizes": sizes });
    Ok(r)
}

fn cmd_check(path: &Path, property: PropertyArg) -> Result<Report, InputError> {
    let f = read_family(path)?;
    let report = match property {
        PropertyArg::Pliable => is_pliable(&f),
        PropertyArg::Structural => is_structurally_submodular(&f),
        PropertyArg::Uncrossable => is_uncrossable(&f),
        PropertyArg::Gamma => satisfies_gamma(&f),
        PropertyArg::Lemmas => validate_construction(&f)?,
    };
    let mut r = Report::new(
        "check",
        json!({ "family": path.display().to_string(), "property": report.property.label() }),
    );
    r.outcome = if report.ok { "holds" } else { "violated" }.into();
    r.exit = if report.ok { EXIT_OK } else { EXIT_REFUTED };
    r.lines.push(format!("{} witnesses over {} sets", report.witnesses.len(), f.len()));
    r.lines.extend(violation_lines(&report));
    r.payload = to_value(&report);
    Ok(r)
}

fn certificate_payload(f: &Family, c: &Certificate) -> Value {
    let pairs: Vec<Value> = c
        .pairs()
        .into_iter()
        .map(|(a, b)| {
            json!({
                "a": a, "b": b,
                "intersection": a & b, "union": a | b,
                "a_minus_b": a - b, "b_minus_a": b - a,
                "crossing": a.crosses(&b),
            })
        })
        .collect();
    let w: Vec<Value> = c
        .w_sets
        .iter()
        .enumerate()
        .map(|(i, s)| json!({ "index": i + 3, "set": s, "member": f.contains(s) }))
        .collect();
    json!({ "pairs": pairs, "w_sets": w, "summed": c.summed })
}

fn cmd_certify(k: u32, family: Option<&Path>, tb: Policy, cfg: &Config) -> Result<Report, InputError> {
    let f = match family {
        Some(p) => read_family(p)?,
        None => construct_family(k, policy(tb), cfg)?,
    };
    let c = build_certificate(k)?;
    let verdict = verify_certificate(&f, &c)?;
    let mut inputs = json!({ "k": k });
    match family {
        Some(p) => inputs["family"] = json!(p.display().to_string()),
        None => inputs["tiebreak"] = json!(policy(tb).label()),
    }
    let mut r = Report::new("certify", inputs);
    r.outcome = if verdict.ok { "verified" } else { "rejected" }.into();
    r.exit = if verdict.ok { EXIT_OK } else { EXIT_REFUTED };
    for (i, (a, b)) in c.pairs().into_iter().enumerate() {
        r.lines.push(format!(
            "  pair {}: A = {a}, B = {b}, A-B = {}, B-A = {}",
            i + 1,
            a - b,
            b - a
        ));
    }
    for (i, s) in c.w_sets.iter().enumerate() {
        let tag = if f.contains(s) { "member" } else { "non-member" };
        r.lines.push(format!("  W_{} = {s}: {tag}", i + 3));
    }
    let sum: Vec<String> = c
        .summed
        .terms()
        .iter()
        .map(|(coef, s)| format!("{}{s}", if *coef > 0 { "+" } else { "-" }))
        .collect();
    r.lines.push(format!("  sum: {}", sum.join(" ")));
    r.lines.extend(violation_lines(&verdict));
    let mut payload = certificate_payload(&f, &c);
    payload["verification"] = to_value(&verdict);
    r.payload = payload;
    Ok(r)
}

fn cmd_realize(path: &Path, mode: ModeArg, cfg: &Config) -> Result<Report, InputError> {
    let f = read_family(path)?;
    let mode = match mode {
        ModeArg::Literal => RealizeMode::Literal,
        ModeArg::Complemented => RealizeMode::Complemented,
    };
    let mut r = Report::new(
        "realize",
        json!({ "family": path.display().to_string(), "mode": mode.label() }),
    );
    let p = match build_realizability_lp(&f, mode, cfg) {
        Ok(p) => p,
        Err(e @ LpError::ComplementClosure { witness, complement }) => {
            r.outcome = "rejected".into();
            r.exit = EXIT_REFUTED;
            r.lines.push(format!("  {e}"));
            r.payload = json!({
                "reason": "trivially unrealizable: complement closure violated",
                "witness": witness,
                "complement": complement,
            });
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    let outcome = solve_feasibility(&p, cfg.pivot_budget);
    let report = LpReport::new(&p, &outcome);
    r.outcome = report.outcome.into();
    r.exit = match report.outcome {
        "feasible" => EXIT_OK,
        "infeasible" => EXIT_REFUTED,
        _ => EXIT_INPUT,
    };
    r.lines.push(format!(
        "  {} variables, {} rows, verified: {}",
        report.variables, report.rows, report.verified
    ));
    for m in &report.multipliers {
        r.lines.push(format!("  {} x {}", m.value, m.origin));
    }
    if let Some(l) = &report.lambda {
        r.lines.push(format!("  lambda = {l}"));
        for w in &report.witness {
            r.lines.push(format!("  g({}) = {}", w.class, w.value));
        }
    }
    r.payload = to_value(&report);
    Ok(r)
}

fn cmd_partition(path: &Path, d: usize, cfg: &Config) -> Result<Report, InputError> {
    let f = read_family(path)?;
    let outcome = partition_uncrossable(&f, d, cfg.partition_node_budget);
    let mut r = Report::new("partition", json!({ "family": path.display().to_string(), "d": d }));
    let (label, exit) = match &outcome {
        crate::checkers::PartitionOutcome::Found { .. } => ("found", EXIT_OK),
        crate::checkers::PartitionOutcome::Impossible { .. } => ("impossible", EXIT_REFUTED),
        crate::checkers::PartitionOutcome::BudgetExhausted { .. } => ("budget-exhausted", EXIT_INPUT),
    };
    r.outcome = label.into();
    r.exit = exit;
    let mut payload = json!({ "search": to_value(&outcome) });
    if let Ok(conflicts) = conflict_witness(&f) {
        for c in &conflicts {
            r.lines.push(format!(
                "  V{} and V{}: union {} absent: {}, difference {} absent: {}",
                c.i, c.j, c.union, c.union_absent, c.difference, c.difference_absent
            ));
        }
        payload["conflicts"] = to_value(&conflicts);
    }
    if let Some(blocks) = outcome.blocks() {
        for (i, b) in blocks.iter().enumerate() {
            let sets: Vec<String> = b.iter().map(|&m| f.set(m).to_string()).collect();
            r.lines.push(format!("  block {}: {}", i + 1, sets.join(" ")));
        }
    }
    r.payload = payload;
    Ok(r)
}

fn parse_set(f: &Family, raw: &str) -> Result<ESet, InputError> {
    let ids = raw
        .split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Element>().map_err(|_| InputError(format!("bad element id {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(f.ground().set_of(ids)?)
}

fn cmd_express(path: &Path, raw: &str) -> Result<Report, InputError> {
    let f = read_family(path)?;
    let s = parse_set(&f, raw)?;
    let idx = f.position(&s).ok_or_else(|| InputError(format!("{s} is not a member")))?;
    let mut r = Report::new(
        "express",
        json!({ "family": path.display().to_string(), "set": s }),
    );
    match express(&f, idx) {
        Ok(tree) => {
            let i = s.sole_unit_index().expect("express only accepts single unit-vector sets");
            let verdict = verify_expression(&tree, s, i);
            r.outcome = if verdict.ok { "expressed" } else { "unverified" }.into();
            r.exit = if verdict.ok { EXIT_OK } else { EXIT_REFUTED };
            r.lines.push(format!("  {s} = {tree}"));
            r.lines.extend(verdict.reasons.iter().map(|x| format!("  {x}")));
            r.payload = json!({ "text": tree.to_string(), "tree": tree, "verification": verdict });
        }
        Err(e) => {
            r.outcome = "not-expressible".into();
            r.exit = EXIT_REFUTED;
            r.lines.push(format!("  {e}"));
            r.payload = json!({ "reason": e.to_string() });
        }
    }
    Ok(r)
}

/// Run an already parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, InputError> {
    let cfg = config(cli)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Construct { k, tiebreak } => cmd_construct(*k, *tiebreak, out, &cfg),
        Command::Check { family, property } => cmd_check(family, *property),
        Command::Certify { k, family, tiebreak } => cmd_certify(*k, family.as_deref(), *tiebreak, &cfg),
        Command::Realize { family, mode } => cmd_realize(family, *mode, &cfg),
        Command::Partition { family, d } => cmd_partition(family, *d, &cfg),
        Command::Express { family, set } => cmd_express(family, set),
    }
}

/// Parse, run, print; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
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
    match execute(&cli) {
        Ok(report) => {
            let text = report.render(cli.format);
            if let (Some(path), false) = (&cli.out, matches!(cli.command, Command::Construct { .. })) {
                if let Err(e) = write_atomic(path, &text) {
                    let _ = writeln!(stderr, "error: {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            }
            let _ = stdout.write_all(text.as_bytes());
            report.exit
        }
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
    }
}
