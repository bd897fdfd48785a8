//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use gmt_core::scenarios::{ScenarioConfig, SCENARIO_IDS};

use crate::runner::{execute, RunConfig};
use crate::settings::{load, parse_assignment};
use crate::{Exit, LabError, Result};

#[derive(Debug, Parser)]
#[command(name = "gmt-lab", version, about = "Run the level-set union experiments")]
pub struct Cli {
    /// Print the scenario ids and exit.
    #[arg(long)]
    pub list: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario or `all`.
    Run(RunArgs),
    /// List scenario ids with their config keys and defaults.
    List,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Scenario id, or `all`.
    pub scenario: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory [default: results].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Scenarios run concurrently [default: 1].
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Reuse a non-empty output directory.
    #[arg(long)]
    pub force: bool,
    /// Override a config key; `key` or `scenario-id.key`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", value_parser = parse_assignment)]
    pub set: Vec<(String, String)>,
    /// Flat `key = value` file applied before `--set`.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunArgs {
    /// Defaults, then the config file, then flags.
    pub fn to_config(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => load(path)?,
            None => Default::default(),
        };
        let mut overrides = file.overrides;
        overrides.extend(self.set.iter().cloned());
        Ok(RunConfig {
            selector: self.scenario.clone(),
            out: self.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("results")),
            seed: self.seed.or(file.seed).unwrap_or(0),
            jobs: self.jobs.or(file.jobs).unwrap_or(1),
            force: self.force,
            overrides,
        })
    }
}

fn list(out: &mut dyn Write, with_keys: bool) -> std::io::Result<()> {
    for id in SCENARIO_IDS {
        writeln!(out, "{id}")?;
        if with_keys {
            let cfg = ScenarioConfig::default_for(id).expect("listed ids are known");
            for (k, v) in cfg.params() {
                writeln!(out, "    {k} = {v}")?;
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    Exit::Pass
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    Exit::Usage
                }
            };
        }
    };
    let result: Result<Exit> = match (&cli.command, cli.list) {
        (_, true) => list(out, false).map(|_| Exit::Pass).map_err(|e| LabError::io("<stdout>", e)),
        (Some(Command::List), _) => list(out, true).map(|_| Exit::Pass).map_err(|e| LabError::io("<stdout>", e)),
        (Some(Command::Run(args)), _) => args.to_config().and_then(|cfg| execute(&cfg, out)),
        (None, false) => Err(LabError::Usage("missing command; try `gmt-lab run all` or `gmt-lab list`".into())),
    };
    match result {
        Ok(exit) => exit,
        Err(e) => {
            let exit = e.exit();
            let _ = writeln!(err, "{}: {e}", if exit == Exit::Usage { "usage error" } else { "error" });
            exit
        }
    }
}
