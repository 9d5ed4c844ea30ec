mod args;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliResult, Outcome};
use report::RunReport;

fn dispatch(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Extend(a) => commands::extend(a),
        Command::Approx(a) => commands::approx(&a.input.input, a.mode, a.alpha_star),
        Command::Norm(a) => commands::norm(&a.input.input, a.exact),
        Command::Wtransform(a) => commands::wtransform(&a.input),
        Command::Gadget(c) => commands::gadget(c),
        Command::Gen(c) => commands::gen(c),
        Command::Check(c) => commands::check(c),
    }
}

fn print_report(argv: Vec<String>, outcome: &Outcome, start: Instant) {
    let report = RunReport {
        command: argv,
        input_digest: outcome.input_digest.clone(),
        result: outcome.result.clone(),
        wall_time_us: start.elapsed().as_micros() as u64,
        solver_stats: outcome.stats,
        exit_code: outcome.code,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
}

fn run(argv: Vec<String>) -> i32 {
    let start = Instant::now();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = match dispatch(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match &outcome.artifact {
        Some(artifact) => match &artifact.path {
            Some(path) => {
                if let Err(e) = std::fs::write(path, format!("{}\n", artifact.text)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
                print_report(argv, &outcome, start);
            }
            None => println!("{}", artifact.text),
        },
        None => print_report(argv, &outcome, start),
    }
    eprintln!("{}", outcome.summary);
    outcome.code
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args().collect()) as u8)
}
