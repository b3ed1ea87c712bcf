use std::process::ExitCode;

use clap::Parser;
use mahler::commands::{render, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let resp = run(&cli);
    for n in &resp.notes {
        eprintln!("{n}");
    }
    let text = render(&resp.body);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(resp.code as u8)
}
