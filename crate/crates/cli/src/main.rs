mod args;
mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Session;
use config::RunConfig;
use error::{Classify, Kind};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunConfig::load(cli.config.as_deref())
        .or_fail(Kind::Input)
        .and_then(|config| {
            let ctx = Session {
                config,
                verbose: cli.verbose,
            };
            match &cli.command {
                Command::Validate(a) => commands::validate(&ctx, a),
                Command::Dea(a) => commands::dea(&ctx, a),
                Command::Regress(a) => commands::regress(&ctx, a),
                Command::Report(a) => commands::report(&ctx, a),
                Command::Synth(a) => commands::synth(&ctx, a),
            }
        });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
