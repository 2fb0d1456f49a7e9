use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use mds_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are invalid input; help and version are not errors
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = run(&cli).and_then(|report| Ok((report.render(cli.global.format)?, report.success)));
    match result {
        Ok((text, success)) => {
            let written = match &cli.global.output {
                Some(path) => std::fs::write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("mds: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if success {
                ExitCode::SUCCESS
            } else {
                eprintln!("mds: cross-check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("mds: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
