//! Command-line front end.

use crate::config::ExperimentConfig;
use crate::error::BenchError;
use crate::experiments::execute;
use crate::output::{manifest, write_all};
use crate::presets::{find, PRESETS};
use clap::{Args, Parser, Subcommand};
use std::fs;
use std::path::PathBuf;

/// Environment variable naming the base output directory.
pub const OUT_DIR_ENV: &str = "MCWAVE_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "mcwave", version, about = "Multicarrier waveform benchmark runner")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an experiment from a config file or a named preset.
    Run(RunArgs),
    /// List the built-in presets.
    Presets,
    /// Parse and validate a config without running it.
    Validate(Source),
}

#[derive(Debug, Args)]
pub struct Source {
    /// Path to a TOML experiment file.
    #[arg(conflicts_with = "preset", required_unless_present = "preset")]
    pub config: Option<PathBuf>,
    /// Name of a built-in preset.
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: Source,
    /// Output directory (overrides the config and the environment).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Replace the configured number of trials.
    #[arg(long)]
    pub trials: Option<i64>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Loads the configuration and a short label for it.
pub fn load(source: &Source) -> Result<(ExperimentConfig, String, Option<String>), BenchError> {
    match (&source.preset, &source.config) {
        (Some(name), _) => Ok((find(name)?.config()?, name.clone(), Some(name.clone()))),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| BenchError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "run".into());
            Ok((ExperimentConfig::from_toml(&text)?, label, None))
        }
        (None, None) => Err(BenchError::Validation {
            field: "config".into(),
            message: "pass a config path or --preset".into(),
        }),
    }
}

fn output_dir(args: &RunArgs, cfg: &ExperimentConfig, label: &str) -> PathBuf {
    if let Some(out) = &args.out {
        return out.clone();
    }
    if let Some(dir) = &cfg.output_dir {
        return PathBuf::from(dir);
    }
    let base = std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("mcwave-out"));
    base.join(label)
}

/// Runs an experiment and returns the directory written.
pub fn cmd_run(args: &RunArgs) -> Result<PathBuf, BenchError> {
    let (mut cfg, label, preset) = load(&args.source)?;
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    let validated = cfg.validate()?;
    let run = || execute(&validated);
    let out = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| BenchError::Validation {
                field: "threads".into(),
                message: e.to_string(),
            })?
            .install(run)?,
        None => run()?,
    };
    let dir = output_dir(args, &validated.config, &label);
    let m = manifest(&validated, preset.as_deref(), &out);
    write_all(&dir, &out.artifacts, &m)?;
    Ok(dir)
}

pub fn cmd_presets() -> String {
    let mut s = String::new();
    for p in PRESETS {
        s.push_str(&format!("{}\n  anchor: {}\n  desk:   {}\n", p.name, p.anchor, p.desk_delta));
    }
    s
}

pub fn cmd_validate(source: &Source) -> Result<String, BenchError> {
    let (cfg, label, _) = load(source)?;
    let v = cfg.validate()?;
    Ok(format!(
        "{label}: ok ({} experiment, {} trials, {} schemes)",
        v.config.kind.as_str(),
        v.trials,
        v.schemes.len()
    ))
}

/// Parses arguments, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a).map(|dir| format!("wrote {}", dir.display())),
        Command::Presets => Ok(cmd_presets()),
        Command::Validate(s) => cmd_validate(s),
    };
    match result {
        Ok(msg) => {
            println!("{}", msg.trim_end());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
