use std::process::ExitCode;

use clap::Parser;

use lcdual_cli::{check, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Check(args) = cli.command;
    match check(&args) {
        Ok(outcome) => {
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, &outcome.rendered) {
                    eprintln!("error: {}: cannot write report: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.rendered);
            }
            if let Some(s) = outcome.report.first_failing_suite() {
                eprintln!("verification failed; first failing suite: {}", s.name());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
