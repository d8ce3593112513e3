mod args;
mod cases;
mod commands;
mod failure;
mod settings;

use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command};
use settings::Settings;

fn emit(s: &Settings, stem: &str, v: &Value) -> anyhow::Result<()> {
    std::fs::create_dir_all(&s.out)?;
    let text = serde_json::to_string_pretty(v)? + "\n";
    std::fs::write(s.out.join(format!("{stem}.json")), &text)?;
    print!("{text}");
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let s = Settings::resolve(&cli.global)?;
    let (stem, v) = match (cli.global.paper_case, &cli.command) {
        (Some(_), Some(_)) => return Err(failure::usage("--paper-case cannot be combined with a subcommand")),
        (Some(c), None) => (cases::name(c), cases::run(&s, c)?),
        (None, None) => return Err(failure::usage("no subcommand given; see --help")),
        (None, Some(cmd)) => match cmd {
            Command::Spiral(a) => ("spiral", commands::spiral(&s, a)?),
            Command::Integrate(a) => ("integrate", commands::integrate(&s, a)?),
            Command::Dim(a) => ("dim", commands::dim(&s, a)?),
            Command::Sweep(a) => ("sweep", commands::sweep(&s, a)?),
            Command::String(a) => ("string", commands::string(&s, a)?),
            Command::Oracle(a) => ("oracle", commands::oracle(a)?),
        },
    };
    emit(&s, stem, &v)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { failure::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(failure::exit_code(&e))
        }
    }
}
