mod args;
mod bench;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Audit, Cli, Command, Gen};

fn run(cli: &Cli) -> commands::Outcome {
    match &cli.command {
        Command::Gen(Gen::Random(a)) => commands::gen_random(a),
        Command::Gen(Gen::Lb(a)) => commands::gen_lb(a),
        Command::Build(b) => commands::build(b),
        Command::Verify(a) => commands::verify(a),
        Command::Audit(Audit::Lb(a)) => commands::audit_lb(a),
        Command::Bench(a) => bench::bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
