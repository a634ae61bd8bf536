use conecollapse_cli::{run, CliError};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(out) => {
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            ExitCode::from(e.exit_code().clamp(0, 255) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
