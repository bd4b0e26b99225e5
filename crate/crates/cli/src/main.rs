mod analyze;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use brace_core::clutching::{ClutchingData, BUNDLED_CLUTCHING};
use brace_core::homotopy_data::{ingest_table, HtpyTable, Space, BUNDLED_TABLE};
use brace_core::suites::{run_suite, Suite, DEFAULT_SEED};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::report::{Report, TableSources};

pub const TABLE_ENV: &str = "BRACE_TABLE_PATH";

#[derive(Parser, Debug)]
#[command(name = "brace", version, about = "Brace products and splitting verdicts for fibrations with sections")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Homotopy table (htpy-table/1); overrides BRACE_TABLE_PATH.
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<PathBuf>,
    /// Clutching data (clutching/1).
    #[arg(long, global = true, value_name = "PATH")]
    clutching: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run every applicable verdict for a fibration.
    Analyze(analyze::AnalyzeArgs),
    /// Run a randomized identity/property suite.
    Verify(VerifyArgs),
    /// Inspect or validate a homotopy table.
    Tables {
        #[command(subcommand)]
        action: TablesCmd,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// jacobi, derivation, lie-map, bilinearity, exactness, j-rules or all.
    suite: String,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Whitehead degree cap (default: 12 for jacobi, 9 otherwise).
    #[arg(long)]
    degree_cap: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum TablesCmd {
    /// Print entries with citations, optionally for one space (`S3`, `Sphere 3`, `SO(3)`, `SU(3)`).
    Show { space: Vec<String> },
    /// Validate a table file (default: the active table).
    Validate { path: Option<PathBuf> },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Flag {
    #[value(name = "0")]
    Off,
    #[value(name = "1")]
    On,
}

pub struct Ctx {
    pub table: HtpyTable,
    pub data: ClutchingData,
    pub sources: TableSources,
}

/// Flag > environment > bundled.
fn table_source(flag: &Option<PathBuf>) -> Option<PathBuf> {
    flag.clone().or_else(|| std::env::var_os(TABLE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_table(cli: &Cli) -> Result<(HtpyTable, String)> {
    Ok(match table_source(&cli.table) {
        Some(p) => (ingest_table(&read(&p)?)?.0, p.display().to_string()),
        None => (ingest_table(BUNDLED_TABLE)?.0, "bundled htpy-table/1".to_string()),
    })
}

fn load_ctx(cli: &Cli) -> Result<Ctx> {
    let (table, htpy) = load_table(cli)?;
    let (data, clutching) = match &cli.clutching {
        Some(p) => (ClutchingData::load(&read(p)?, &table)?, p.display().to_string()),
        None => (
            ClutchingData::load(BUNDLED_CLUTCHING, &table)
                .with_context(|| format!("bundled clutching data does not fit the table {htpy}"))?,
            "bundled clutching/1".to_string(),
        ),
    };
    Ok(Ctx { table, data, sources: TableSources { htpy, clutching } })
}

fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    args.join(" ")
}

fn suite_cap(s: Suite) -> u32 {
    match s {
        Suite::Jacobi | Suite::Exactness | Suite::JRules => 12,
        _ => 9,
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report> {
    let suites = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![Suite::parse(&a.suite)?] };
    let sources = TableSources { htpy: "bundled htpy-table/1".into(), clutching: "bundled clutching/1".into() };
    let inputs = json!({ "suite": a.suite, "trials": a.trials, "degree_cap": a.degree_cap, "seed": a.seed });
    let mut r = Report::new(command_echo(), inputs, sources);
    let mut reports = vec![];
    let mut failed = false;
    for s in suites {
        let rep = run_suite(s, a.trials, a.degree_cap.unwrap_or_else(|| suite_cap(s)), a.seed)?;
        failed |= !rep.ok();
        reports.push(rep);
    }
    reports.sort_by_key(|r| r.suite);
    r.details = json!({ "suites": reports });
    Ok(r.finish(failed))
}

fn parse_space(words: &[String]) -> Result<Space> {
    let s: String = words.join(" ");
    let t = s.trim();
    let digits = |x: &str| x.trim_matches(|c: char| "^()_ ".contains(c)).parse::<u32>().ok();
    let lower = t.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("sphere") {
        if let Some(n) = digits(rest) {
            return Ok(Space::Sphere(n));
        }
    }
    if let Some(rest) = lower.strip_prefix("so") {
        if let Some(n) = digits(rest) {
            return Ok(Space::So(n));
        }
    }
    if let Some(rest) = lower.strip_prefix('s') {
        if let Some(n) = digits(rest) {
            return Ok(Space::Sphere(n));
        }
    }
    if t.is_empty() {
        bail!("empty space name");
    }
    Ok(Space::LieGroup(t.to_string()))
}

fn cmd_tables(cli: &Cli, action: &TablesCmd) -> Result<Report> {
    match action {
        TablesCmd::Show { space } => {
            let (table, htpy) = load_table(cli)?;
            let filter = if space.is_empty() { None } else { Some(parse_space(space)?) };
            let rows: Vec<_> = table
                .entries()
                .filter(|e| match &filter {
                    None => true,
                    Some(Space::LieGroup(name)) => e.space.to_string().eq_ignore_ascii_case(name),
                    Some(sp) => &e.space == sp,
                })
                .map(|e| {
                    json!({
                        "entry": e.label(),
                        "space": e.space.to_string(),
                        "degree": e.degree,
                        "group": e.group.to_string(),
                        "citation": e.citation,
                        "provenance": e.provenance,
                    })
                })
                .collect();
            if let Some(sp) = &filter {
                if rows.is_empty() {
                    bail!("no table entries for {sp}");
                }
            }
            let inputs = json!({ "space": filter.as_ref().map(|s| s.to_string()) });
            let sources = TableSources { htpy, clutching: "not loaded".into() };
            let mut r = Report::new(command_echo(), inputs, sources);
            r.details = json!({ "entries": rows });
            Ok(r.finish(false))
        }
        TablesCmd::Validate { path } => {
            let (doc, src) = match path.clone().or_else(|| table_source(&cli.table)) {
                Some(p) => (read(&p)?, p.display().to_string()),
                None => (BUNDLED_TABLE.to_string(), "bundled htpy-table/1".to_string()),
            };
            let (_, report) = ingest_table(&doc)?;
            let inputs = json!({ "path": src });
            let sources = TableSources { htpy: src, clutching: "not loaded".into() };
            let mut r = Report::new(command_echo(), inputs, sources);
            r.details = json!({ "status": "OK", "validation": report });
            Ok(r.finish(false))
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.cmd {
        Cmd::Analyze(a) => analyze::cmd_analyze(&load_ctx(cli)?, a, command_echo()),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Tables { action } => cmd_tables(cli, action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.to_text());
            }
            ExitCode::from(r.outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
