//! `horizon` — cloning fidelities of a quantum black hole at the command
//! line: closed forms, truncated-Fock brute force, sweeps, and self-checks.

mod args;
mod config;
mod error;
mod presets;
mod row;
mod run;
mod state_cmd;
mod validate;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    match run::dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
