use std::process::ExitCode;

use anyhow::Context;
use bajra_cli::{run, Cli};
use clap::Parser;

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let outcome = run(&cli.command);
    let json = outcome.report.to_json();
    match &cli.out {
        Some(path) => std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?,
        None => println!("{json}"),
    }
    if let Some(e) = &outcome.report.error {
        eprintln!("{}: {}", e.kind, e.message);
    }
    Ok(ExitCode::from(outcome.code as u8))
}
