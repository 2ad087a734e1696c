mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use piercing_core::Error;

use args::{Cli, Format};

const EXIT_MALFORMED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_MALFORMED } else { 0 });
        }
    };
    if let Some(n) = cli.run.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_MALFORMED);
        }
    }
    let outcome = match commands::run(&cli.command, &cli.run) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::BudgetExhausted(_) => EXIT_BUDGET,
                _ => EXIT_MALFORMED,
            });
        }
    };
    let body = match cli.run.format {
        Format::Json => outcome.json,
        Format::Csv => match outcome.csv {
            Some(rows) => rows.join("\n") + "\n",
            None => {
                eprintln!("error: this command has no CSV form; use --format json");
                return ExitCode::from(EXIT_MALFORMED);
            }
        },
    };
    if let Err(e) = commands::emit(&body, cli.run.output.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_MALFORMED);
    }
    ExitCode::from(outcome.status)
}
