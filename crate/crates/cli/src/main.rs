use clap::Parser;
use maq::{init_threads, run, RunConfig};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_threads();
    let (code, text) = run(&config);
    if code != 0 {
        eprintln!("{text}");
        return ExitCode::from(code as u8);
    }
    match &config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("cannot write {path}: {e}");
                return ExitCode::from(1);
            }
        }
        None => {
            let _ = writeln!(std::io::stdout(), "{text}");
        }
    }
    ExitCode::SUCCESS
}
