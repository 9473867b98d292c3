mod config;
mod emit;
mod suites;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use config::{Format, RunArgs, RunConfig};
use suites::{run_suite, Status};

#[derive(Parser)]
#[command(name = "ybl", version, about = "Exact checks for Bethe algebras, cohomology models and Wronskians")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and report pass/fail per check.
    Verify(RunArgs),
    /// Print a computed object: xi, bethe-matrix P S [plus|minus], mu KIND CLASS,
    /// quantum-matrix star|bullet I, wronskian, pairing round|angle F G, cm-matrix.
    Emit {
        #[arg(required = true, num_args = 1..)]
        object: Vec<String>,
        #[command(flatten)]
        args: RunArgs,
    },
}

fn write_out(cfg: &RunConfig, out: Option<&std::path::Path>, json: &serde_json::Value, text: &str) -> Result<()> {
    let body = match cfg.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(json)?),
        Format::Text => text.to_string(),
    };
    match out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(body.as_bytes())?),
    }
}

fn verify_text(reports: &[suites::SuiteReport], overall: Status) -> String {
    let mut s = String::new();
    for r in reports {
        for c in &r.checks {
            let st = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            s.push_str(&format!("{st:<4}  {:<20} {}", r.suite, c.id));
            if let Some(w) = &c.witness {
                s.push_str(&format!("  witness: {w}"));
            }
            if let Some(n) = &c.note {
                s.push_str(&format!("  ({n})"));
            }
            if let Some(ms) = c.elapsed_ms {
                s.push_str(&format!("  [{ms} ms]"));
            }
            s.push('\n');
        }
    }
    s.push_str(&format!("overall: {}\n", if overall == Status::Fail { "fail" } else { "pass" }));
    s
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let config_error = |e: anyhow::Error| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    };
    match cli.cmd {
        Cmd::Verify(args) => {
            let cfg = RunConfig::from_args(&args).map_err(config_error)?;
            let setup = cfg.setup().map_err(|e| config_error(e.into()))?;
            let reports: Vec<_> = cfg.suites.iter().map(|s| run_suite(s, &cfg, &setup)).collect();
            let failed = reports.iter().flat_map(|r| &r.checks).any(|c| c.status == Status::Fail);
            let overall = if failed { Status::Fail } else { Status::Pass };
            let json = json!({
                "schema": "ybl/1",
                "config": cfg.echo(),
                "suites": reports,
                "status": overall,
            });
            write_out(&cfg, args.out.as_deref(), &json, &verify_text(&reports, overall)).map_err(config_error)?;
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Cmd::Emit { object, args } => {
            let cfg = RunConfig::from_args(&args).map_err(config_error)?;
            let setup = cfg.setup().map_err(|e| config_error(e.into()))?;
            let e = emit::emit(&cfg, &setup, &object).map_err(config_error)?;
            write_out(&cfg, args.out.as_deref(), &e.json, &e.text).map_err(config_error)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|c| c)
}
