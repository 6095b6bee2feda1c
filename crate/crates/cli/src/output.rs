use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::{CliError, CliResult, OutputArgs, OutputFormat};

/// Result of one subcommand in every supported rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub passed: bool,
}

impl Outcome {
    pub fn render(&self, format: OutputFormat) -> CliResult<String> {
        Ok(match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => self.text.clone(),
            OutputFormat::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage("CSV output is only available for `spectrum`".into()))?,
        })
    }
}

fn extension(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Json => "json",
        OutputFormat::Csv => "csv",
        OutputFormat::Text => "txt",
    }
}

/// Writes the outcome to `--out`, else to `<env_dir>/<command>.<ext>`, else stdout.
pub fn emit(command: &str, outcome: &Outcome, args: &OutputArgs, env_dir: Option<&Path>) -> CliResult<()> {
    let body = outcome.render(args.format)?;
    let target: Option<PathBuf> = match (&args.out, env_dir) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{command}.{}", extension(args.format)))),
        (None, None) => None,
    };
    match target {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, body)?;
        }
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}
