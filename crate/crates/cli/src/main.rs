//! `isodist`: command-line access to the census, volcano, density and
//! Chebotarev machinery.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use commands::{Cli, Failure};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            let mut lines = rendered.lines();
            let first = lines.next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("error[E_USAGE]: {first}");
            for line in lines {
                eprintln!("{line}");
            }
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok(out) => match emit(&cli, &out.text) {
            Ok(()) if out.failed => ExitCode::from(1),
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error[E_IO]: {e}");
                ExitCode::from(2)
            }
        },
        Err(failure) => {
            if let Some(text) = &failure.partial {
                let _ = emit(&cli, text);
            }
            eprintln!("error[{}]: {}", failure.code, failure.message);
            ExitCode::from(failure.status())
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

impl Failure {
    fn status(&self) -> u8 {
        if self.verification {
            1
        } else {
            2
        }
    }
}
