use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use jdgsvd::cli::{exit, execute, Args};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    match execute(&args) {
        Ok((outcome, text)) => {
            if let Some(text) = text {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
            if let Some(err) = &outcome.report.error {
                eprintln!("jdgsvd: solver failed: {err}");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("jdgsvd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
