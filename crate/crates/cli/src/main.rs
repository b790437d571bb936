use std::process::ExitCode;

use clap::Parser;

use prolongkit_cli::config::MODE_ENV;
use prolongkit_cli::{run, Cli, RunConfig, RunError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_mode = std::env::var(MODE_ENV).ok();
    let result = RunConfig::from_cli(cli, env_mode.as_deref()).map_err(RunError::Usage).and_then(|config| {
        let out = run(&config)?;
        match &config.output {
            Some(path) => std::fs::write(path, &out.document)
                .map_err(|e| RunError::Failed(format!("cannot write {path}: {e}")))?,
            None => print!("{}", out.document),
        }
        Ok(out.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
