//! `qrgroups`: command-line front end.

mod cli;
mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use qrgroups::exec::with_workers;

use cli::Cli;
use config::RunConfig;
use report::exit;

fn emit(doc: &serde_json::Value, cfg: Option<&RunConfig>) -> Result<(), String> {
    let text = report::render(doc);
    match cfg.and_then(|c| c.output.as_ref()) {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let _ = emit(&report::failure("Usage", e.to_string().trim()), None);
            return ExitCode::from(exit::USAGE as u8);
        }
    };
    let cfg = match RunConfig::resolve(&cli.global) {
        Ok(cfg) => cfg,
        Err(msg) => {
            let _ = emit(&report::failure("Usage", &msg), None);
            return ExitCode::from(exit::USAGE as u8);
        }
    };

    let outcome = with_workers(cfg.workers, || commands::run(&cli.command, &cfg));
    let (doc, code) = match outcome {
        Ok(o) => (report::success(cli.command.name(), o.result), o.code),
        Err(f) => (report::failure(f.kind(), &f.detail()), f.code()),
    };
    if let Err(msg) = emit(&doc, Some(&cfg)) {
        eprintln!("{msg}");
        return ExitCode::from(exit::USAGE as u8);
    }
    ExitCode::from(code as u8)
}
