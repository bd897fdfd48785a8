//! Runs scenarios and writes one directory per scenario:
//! `report.json`, one CSV per series, PGM rasters, and `FAILED` when the
//! scenario errored or a verdict failed.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use gmt_core::scenarios::{configs_for, ExperimentReport, Outcome, ScenarioConfig, Verdict};

use crate::files::{write_raster_pgm, write_report_json, write_series_csv};
use crate::{Exit, LabError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// One scenario id or `all`.
    pub selector: String,
    pub out: PathBuf,
    pub seed: u64,
    pub jobs: usize,
    pub force: bool,
    pub overrides: Vec<(String, String)>,
}

impl RunConfig {
    pub fn new(selector: &str, out: impl Into<PathBuf>) -> Self {
        RunConfig { selector: selector.into(), out: out.into(), seed: 0, jobs: 1, force: false, overrides: Vec::new() }
    }
}

/// Result of one scenario.
#[derive(Debug)]
pub struct ScenarioRun {
    pub id: &'static str,
    pub report: Option<ExperimentReport>,
    pub exit: Exit,
    pub summary: String,
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' }).collect()
}

fn describe(v: &Verdict) -> String {
    let op = match v.comparison {
        gmt_core::scenarios::Comparison::AtMost => "<=",
        gmt_core::scenarios::Comparison::AtLeast => ">=",
    };
    let measured = v.measured.map_or("non-finite".to_string(), |m| format!("{m:.6}"));
    format!("{} = {measured} (want {op} {})", v.name, v.threshold)
}

fn write_marker(dir: &Path, text: &str) -> Result<()> {
    let path = dir.join("FAILED");
    std::fs::write(&path, text).map_err(|e| LabError::io(path, e))
}

fn prepare_dir(dir: &Path) -> Result<()> {
    if dir.exists() {
        std::fs::remove_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    }
    std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))
}

/// Runs one scenario into `root/<id>/`.
pub fn run_scenario(config: &ScenarioConfig, root: &Path, seed: u64) -> ScenarioRun {
    let id = config.id();
    let dir = root.join(id);
    let started = Instant::now();
    let result = prepare_dir(&dir).and_then(|_| {
        let output = config.run(seed)?;
        let mut report = output.report;
        for s in &report.series {
            let name = format!("{}.csv", file_stem(&s.name));
            write_series_csv(&dir.join(&name), s)?;
            report.artifacts.push(name);
        }
        for r in &output.rasters {
            let name = r.file_name(id);
            write_raster_pgm(&dir.join(&name), &r.raster)?;
            report.artifacts.push(name);
        }
        report.artifacts.push("report.json".into());
        report.wall_time = started.elapsed().as_secs_f64();
        write_report_json(&dir.join("report.json"), &report)?;
        Ok(report)
    });
    let elapsed = started.elapsed().as_secs_f64();
    match result {
        Ok(report) => {
            let (pass, fail, withheld) = report.outcome_counts();
            let mut summary = format!(
                "{} {id}: {pass} pass, {fail} fail, {withheld} withheld ({elapsed:.1}s)",
                if fail == 0 { "PASS" } else { "FAIL" }
            );
            let exit = if fail == 0 { Exit::Pass } else { Exit::Fail };
            if fail > 0 {
                let failed: Vec<String> =
                    report.verdicts.iter().filter(|v| v.outcome == Outcome::Fail).map(describe).collect();
                let _ = write!(summary, "; {}", failed.join("; "));
                if let Err(e) = write_marker(&dir, &(failed.join("\n") + "\n")) {
                    return ScenarioRun { id, report: Some(report), exit: Exit::Runtime, summary: format!("ERROR {id}: {e}") };
                }
            }
            ScenarioRun { id, report: Some(report), exit, summary }
        }
        Err(e) => {
            let _ = write_marker(&dir, &format!("error: {e}\n"));
            ScenarioRun { id, report: None, exit: e.exit().max(Exit::Fail), summary: format!("ERROR {id}: {e}") }
        }
    }
}

fn ensure_output_root(cfg: &RunConfig) -> Result<()> {
    let out = &cfg.out;
    if out.exists() {
        if !out.is_dir() {
            return Err(LabError::io(out, std::io::Error::other("output path exists and is not a directory")));
        }
        let non_empty = std::fs::read_dir(out).map_err(|e| LabError::io(out, e))?.next().is_some();
        if non_empty && !cfg.force {
            return Err(LabError::Usage(format!(
                "output directory {} is not empty; pass --force to reuse it",
                out.display()
            )));
        }
    }
    std::fs::create_dir_all(out).map_err(|e| LabError::io(out, e))
}

/// Runs the selected scenarios, printing one summary line each in run
/// order, and returns the overall exit status.
pub fn execute(cfg: &RunConfig, log: &mut dyn Write) -> Result<Exit> {
    let configs = configs_for(&cfg.selector, &cfg.overrides)?;
    if cfg.jobs == 0 {
        return Err(LabError::Usage("--jobs must be at least 1".into()));
    }
    ensure_output_root(cfg)?;
    let runs = run_all(&configs, &cfg.out, cfg.seed, cfg.jobs);
    let mut exit = Exit::Pass;
    for r in &runs {
        writeln!(log, "{}", r.summary).map_err(|e| LabError::io("<stdout>", e))?;
        exit = exit.max(r.exit);
    }
    Ok(exit)
}

/// Runs configs on up to `jobs` threads; results come back in input order.
pub fn run_all(configs: &[ScenarioConfig], root: &Path, seed: u64, jobs: usize) -> Vec<ScenarioRun> {
    let slots: Vec<Mutex<Option<ScenarioRun>>> = configs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, configs.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(config) = configs.get(i) else { break };
                *slots[i].lock().unwrap() = Some(run_scenario(config, root, seed));
            });
        }
    });
    slots.into_iter().map(|s| s.into_inner().unwrap().expect("every slot is filled")).collect()
}
