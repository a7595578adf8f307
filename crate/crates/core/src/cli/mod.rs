//! Command-line frontend. Every command builds a [`Report`]: `key=value`
//! lines for the terminal, a JSON value for `--json` and an optional TSV
//! table for `--tsv`.

mod args;
mod commands;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use cayleyiso::budget::Budgets;
use cayleyiso::Error;

pub use args::Cli;

pub struct Report {
    pub lines: Vec<String>,
    pub json: serde_json::Value,
    pub tsv: Option<String>,
    /// Some result differs from its stored expectation.
    pub mismatch: bool,
}

impl Report {
    fn new(json: serde_json::Value) -> Self {
        Report { lines: Vec::new(), json, tsv: None, mismatch: false }
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}={value}"));
    }
}

fn budgets(common: &args::Common) -> cayleyiso::Result<Budgets> {
    let mut b = Budgets::from_env()?;
    if let Some(v) = common.budget_aut {
        b.aut = v;
    }
    if let Some(v) = common.budget_search {
        b.search = v;
    }
    if let Some(v) = common.budget_census {
        b.census = v;
    }
    if b.aut == 0 || b.search == 0 || b.census == 0 {
        return Err(Error::Parse("budgets must be positive".into()));
    }
    Ok(b)
}

fn execute(cli: &Cli) -> cayleyiso::Result<Report> {
    let b = budgets(&cli.common)?;
    let report = commands::dispatch(&cli.command, &cli.common, &b)?;
    if let Some(path) = &cli.common.json {
        fs::write(path, serde_json::to_string_pretty(&report.json)? + "\n")?;
    }
    if let Some(path) = &cli.common.tsv {
        let text = report.tsv.clone().unwrap_or_else(|| commands::lines_as_tsv(&report.lines));
        fs::write(path, text)?;
    }
    Ok(report)
}

pub fn main_with_args() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            eprintln!("{}", json!({ "error": { "kind": "usage", "message": message.trim_end() } }));
            return ExitCode::from(1);
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            for l in &report.lines {
                if writeln!(out, "{l}").is_err() {
                    break;
                }
            }
            if report.mismatch {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            ExitCode::from(1)
        }
    }
}
