//! `volent`: catalog lookup, entropy evaluation, numerical verification and
//! collision scans for bounded symmetric domains.
//!
//! Exit status is 0 when every check passes, 1 when a verification fails and
//! 2 on invalid input.

mod args;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.resolved_config();
    let outcome = match &cli.command {
        Command::Info(a) => report::info(&a.joined()),
        Command::Entropy(a) => report::entropy(&a.joined()),
        Command::Verify(v) => report::verify(v, cli.seed),
        Command::Scan(s) => Ok(report::scan(s.max_dim)),
    };
    match outcome {
        Ok(report) => {
            print!("{}", report.render(cli.format, &config));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
