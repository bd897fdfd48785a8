//! Flat `key = value` config files.
//!
//! One assignment per line; `#` starts a comment; list values are
//! comma-separated. `seed`, `out` and `jobs` set run options, anything else is a
//! scenario override (plain `key` or `scenario-id.key`).

use std::path::{Path, PathBuf};

use crate::{LabError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileSettings {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub overrides: Vec<(String, String)>,
}

pub fn parse(text: &str) -> Result<FileSettings> {
    let mut s = FileSettings::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| LabError::Usage(format!("line {}: expected `key = value`, got `{line}`", i + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(LabError::Usage(format!("line {}: empty key", i + 1)));
        }
        let bad = |what: &str| LabError::Usage(format!("line {}: `{key}` must be {what}, got `{value}`", i + 1));
        match key {
            "seed" => s.seed = Some(value.parse().map_err(|_| bad("an unsigned integer"))?),
            "jobs" => s.jobs = Some(value.parse().map_err(|_| bad("a positive integer"))?),
            "out" => s.out = Some(PathBuf::from(value)),
            _ => s.overrides.push((key.to_string(), value.to_string())),
        }
    }
    Ok(s)
}

pub fn load(path: &Path) -> Result<FileSettings> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::Usage(format!("{}: {e}", path.display())))?;
    parse(&text)
}

/// Splits a `--set` argument.
pub fn parse_assignment(arg: &str) -> std::result::Result<(String, String), String> {
    match arg.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected KEY=VALUE, got `{arg}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_run_options_and_overrides() {
        let s = parse("# demo\nseed = 7\nout=results/\n\nqs = 8,16,32  # list\ndiscrete-incidence.s = 1.5\n").unwrap();
        assert_eq!(s.seed, Some(7));
        assert_eq!(s.out, Some(PathBuf::from("results/")));
        assert_eq!(s.overrides, vec![("qs".into(), "8,16,32".into()), ("discrete-incidence.s".into(), "1.5".into())]);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(parse("just words"), Err(LabError::Usage(_))));
        assert!(matches!(parse("seed = -1"), Err(LabError::Usage(_))));
        assert!(matches!(parse(" = 3"), Err(LabError::Usage(_))));
        assert_eq!(parse_assignment("a=b=c").unwrap(), ("a".into(), "b=c".into()));
        assert!(parse_assignment("novalue").is_err());
    }
}
