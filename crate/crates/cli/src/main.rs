use std::process::ExitCode;

use clap::Parser;
use hypercycle_cli::args::{Cli, Command, Format};
use hypercycle_cli::commands::{
    analyze_cmd, basis_cmd, filtrate_cmd, gram_cmd, import_oh_cmd, load, recover_classical_cmd,
};
use hypercycle_cli::report::Report;
use hypercycle_cli::verify::{verify_loaded, verify_random};
use hypercycle_cli::{CliError, DEFAULT_SEED, EXIT_INCONSISTENCY};
use hypercycle::FieldSpec;

fn run(cli: &Cli) -> Result<(Report, bool), CliError> {
    let field = cli.field;
    let single = |r: Result<Report, CliError>| r.map(|r| (r, true));
    match &cli.command {
        Command::Analyze { path } => single(analyze_cmd(&load(path, field)?)),
        Command::Basis { path } => single(basis_cmd(&load(path, field)?)),
        Command::Gram { path, truncate } => single(gram_cmd(&load(path, field)?, *truncate)),
        Command::Filtrate { path } => single(filtrate_cmd(&load(path, field)?)),
        Command::RecoverClassical { path } => single(recover_classical_cmd(&load(path, field)?)),
        Command::ImportOh { path } => single(import_oh_cmd(&load(path, field)?)),
        Command::Verify { paths, random, seed } => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let v = match (random, paths.is_empty()) {
                (Some(n), true) => verify_random(*n, seed, field.unwrap_or(FieldSpec::Rationals)),
                (None, false) => {
                    let loaded = paths
                        .iter()
                        .map(|p| Ok((p.display().to_string(), load(p, field)?)))
                        .collect::<Result<Vec<_>, CliError>>()?;
                    verify_loaded(&loaded, seed)
                }
                _ => return Err(CliError::Input("verify takes either instance paths or --random".into())),
            };
            if let Some(case) = v.cases.iter().find(|c| c.failure.is_some()) {
                eprintln!(
                    "counterexample: case {} ({}): {}",
                    case.index,
                    case.source,
                    case.failure.as_deref().unwrap_or_default()
                );
            }
            let ok = v.failed == 0;
            let mut report = Report::new("verify");
            report.verify = Some(v);
            Ok((report, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    match run(&cli) {
        Ok((report, ok)) => {
            let text = report.to_json();
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("{}: {e}", path.display());
                        return ExitCode::from(hypercycle_cli::EXIT_INPUT);
                    }
                }
                None => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INCONSISTENCY)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
