use std::io::Write;
use std::process::ExitCode;

use triwell_cli::{emit, execute, parse_config, ConfigError};

const CONFIG_ERROR: u8 = 2;
const NUMERICAL_FAILURE: u8 = 3;

fn main() -> ExitCode {
    let config = match parse_config(std::env::args_os()) {
        Ok(c) => c,
        Err(ConfigError::Info(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("triwell: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let table = match execute(&config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("triwell: {e}");
            return ExitCode::from(NUMERICAL_FAILURE);
        }
    };
    let bytes = emit(&table, &config);
    let written = match &config.output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("triwell: cannot write output: {e}");
        return ExitCode::from(CONFIG_ERROR);
    }
    ExitCode::SUCCESS
}
