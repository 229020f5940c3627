mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Count(args) => output::emit(&commands::count(&args)?, &args.output),
        Command::Pmf(args) => output::emit(&commands::distribution(&args, false)?, &args.output),
        Command::Cdf(args) => output::emit(&commands::distribution(&args, true)?, &args.output),
        Command::Moments(args) => output::emit(&commands::moments_command(&args)?, &args.output),
        Command::Pvalue(args) => output::emit(&commands::pvalue(&args)?, &args.dist.output),
        Command::Table(args) => output::emit(&commands::table(&args)?, &args.output),
        Command::Verify(args) => {
            let (report, all) = commands::verify(&args)?;
            output::emit(&report, &args.output)?;
            if all {
                Ok(())
            } else {
                Err(CliError::verify_failed("one or more identities failed"))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => return CliError::usage(err.render().to_string().trim_end()).report(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => err.report(),
    }
}
