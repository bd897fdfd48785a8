//! Named experiments. Each scenario has a config struct whose fields are the
//! documented defaults, can be overridden by `key = value` strings, and runs
//! into an [`ExperimentReport`] plus the rasters worth saving.
//!
//! | id | what it measures |
//! |---|---|
//! | `fixed-level-positivity` | unit-circle unions over C×C vs a Cantor-on-a-line control |
//! | `flat-counterexample` | square-boundary unions over C×C, with circles as contrast |
//! | `discrete-incidence` | annuli around a separated lattice, area/q² across q |
//! | `intersection-hypothesis` | Monte Carlo band intersections for spheres and a degenerate paraboloid family |
//! | `interior-failure` | circles over a fat Cantor set: positive area, short horizontal runs |
//! | `kakeya-compression` | Perron tree areas and direction coverage |
//! | `bourgain-compression` | residual of `X = YZ` on the Bourgain curves |
//! | `transversality` | Jacobian of `(t, u) ↦ γ(t) + (cos u, sin u)` |

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::raster::GridRaster;
use crate::{Error, Result};

pub mod bourgain;
pub mod flat;
pub mod incidence;
pub mod interior;
pub mod intersection;
pub mod kakeya;
pub mod positivity;
pub mod transversality;

/// One named list of `(abscissa, value)` pairs.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Series {
    pub name: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>, x_label: &str, y_label: &str) -> Self {
        Series { name: name.into(), x_label: x_label.into(), y_label: y_label.into(), points: Vec::new() }
    }

    pub fn push(&mut self, x: f64, y: f64) {
        self.points.push((x, y));
    }

    pub fn with_points(mut self, points: Vec<(f64, f64)>) -> Self {
        self.points = points;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Comparison {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Outcome {
    Pass,
    Fail,
    /// Not judged, e.g. because a Monte Carlo estimate is low confidence.
    Withheld,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdict {
    pub name: String,
    pub comparison: Comparison,
    pub threshold: f64,
    /// `None` when the measurement was not finite.
    pub measured: Option<f64>,
    pub outcome: Outcome,
    pub note: Option<String>,
}

impl Verdict {
    pub fn check(name: &str, measured: f64, comparison: Comparison, threshold: f64) -> Self {
        let ok = match comparison {
            Comparison::AtMost => measured <= threshold,
            Comparison::AtLeast => measured >= threshold,
        };
        Verdict {
            name: name.into(),
            comparison,
            threshold,
            measured: measured.is_finite().then_some(measured),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            note: None,
        }
    }

    pub fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        Verdict::check(name, measured, Comparison::AtMost, threshold)
    }

    pub fn at_least(name: &str, measured: f64, threshold: f64) -> Self {
        Verdict::check(name, measured, Comparison::AtLeast, threshold)
    }

    pub fn withheld_if(mut self, withhold: bool, note: &str) -> Self {
        if withhold {
            self.outcome = Outcome::Withheld;
            self.note = Some(note.into());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExperimentReport {
    pub scenario_id: String,
    /// Every config key with its effective value, in declaration order.
    pub params: Vec<(String, String)>,
    pub series: Vec<Series>,
    pub verdicts: Vec<Verdict>,
    /// Files written for this run, relative to the scenario directory.
    pub artifacts: Vec<String>,
    pub seed: u64,
    /// Filled in by the runner; the core has no clock.
    pub wall_time: f64,
}

impl ExperimentReport {
    pub fn new(scenario_id: &str, params: Vec<(String, String)>, seed: u64) -> Self {
        ExperimentReport {
            scenario_id: scenario_id.into(),
            params,
            series: Vec::new(),
            verdicts: Vec::new(),
            artifacts: Vec::new(),
            seed,
            wall_time: 0.0,
        }
    }

    pub fn series(&self, name: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    /// No verdict failed. Withheld verdicts do not count as failures.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.outcome != Outcome::Fail)
    }

    pub fn outcome_counts(&self) -> (usize, usize, usize) {
        let count = |o| self.verdicts.iter().filter(|v| v.outcome == o).count();
        (count(Outcome::Pass), count(Outcome::Fail), count(Outcome::Withheld))
    }

    /// Every finite verdict measurement occurs as a series value or a param.
    pub fn measurements_are_traceable(&self) -> bool {
        self.verdicts.iter().filter_map(|v| v.measured).all(|m| {
            self.series.iter().any(|s| s.points.iter().any(|p| p.1 == m || p.0 == m))
                || self.params.iter().any(|(_, v)| v.parse::<f64>() == Ok(m))
        })
    }
}

/// A raster worth saving, tagged for its file name.
#[derive(Debug, Clone)]
pub struct NamedRaster {
    pub label: String,
    pub delta: f64,
    pub raster: GridRaster,
}

impl NamedRaster {
    /// `<scenario>-<label>_<n>_<delta>.pgm`
    pub fn file_name(&self, scenario_id: &str) -> String {
        format!("{scenario_id}-{}_{}_{}.pgm", self.label, self.raster.grid().cells_per_axis(), self.delta)
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioOutput {
    pub report: ExperimentReport,
    pub rasters: Vec<NamedRaster>,
}

/// Parsing and rendering of config values.
pub trait ConfigValue: Sized {
    fn parse_value(s: &str) -> core::result::Result<Self, String>;
    fn render(&self) -> String;
}

impl ConfigValue for f64 {
    fn parse_value(s: &str) -> core::result::Result<Self, String> {
        s.trim().parse::<f64>().map_err(|e| e.to_string()).and_then(|v| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err("value must be finite".into())
            }
        })
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

macro_rules! integer_value {
    ($($t:ty),*) => {$(
        impl ConfigValue for $t {
            fn parse_value(s: &str) -> core::result::Result<Self, String> {
                s.trim().parse::<$t>().map_err(|e| e.to_string())
            }

            fn render(&self) -> String {
                format!("{self}")
            }
        }
    )*};
}
integer_value!(usize, u32, u64);

impl ConfigValue for bool {
    fn parse_value(s: &str) -> core::result::Result<Self, String> {
        match s.trim() {
            "true" | "yes" | "1" => Ok(true),
            "false" | "no" | "0" => Ok(false),
            other => Err(format!("expected a boolean, got `{other}`")),
        }
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

impl<T: ConfigValue> ConfigValue for Vec<T> {
    fn parse_value(s: &str) -> core::result::Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(T::parse_value).collect()
    }

    fn render(&self) -> String {
        self.iter().map(|v| v.render()).collect::<Vec<_>>().join(",")
    }
}

/// Declares a config struct with defaults, `set(key, value)` and `params()`.
macro_rules! scenario_config {
    (
        $(#[$meta:meta])*
        $name:ident {
            $( $(#[$fmeta:meta])* $field:ident : $ty:ty = $default:expr, )*
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name {
            $( $(#[$fmeta])* pub $field: $ty, )*
        }

        impl Default for $name {
            fn default() -> Self {
                $name { $( $field: $default, )* }
            }
        }

        impl $name {
            pub const KEYS: &'static [&'static str] = &[$(stringify!($field)),*];

            pub fn set(&mut self, key: &str, value: &str) -> $crate::Result<()> {
                use $crate::scenarios::ConfigValue;
                match key {
                    $( stringify!($field) => {
                        self.$field = <$ty>::parse_value(value).map_err(|reason| $crate::Error::BadValue {
                            key: key.into(),
                            reason,
                        })?;
                    } )*
                    _ => {
                        return Err($crate::Error::UnknownKey { key: key.into(), scope: stringify!($name).into() })
                    }
                }
                Ok(())
            }

            pub fn params(&self) -> alloc::vec::Vec<(alloc::string::String, alloc::string::String)> {
                use $crate::scenarios::ConfigValue;
                alloc::vec![$( (stringify!($field).into(), self.$field.render()), )*]
            }
        }
    };
}
pub(crate) use scenario_config;

/// Scenario ids in run order.
pub const SCENARIO_IDS: [&str; 8] = [
    "fixed-level-positivity",
    "flat-counterexample",
    "discrete-incidence",
    "intersection-hypothesis",
    "interior-failure",
    "kakeya-compression",
    "bourgain-compression",
    "transversality",
];

/// Config of any scenario.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioConfig {
    FixedLevelPositivity(positivity::Config),
    FlatCounterexample(flat::Config),
    DiscreteIncidence(incidence::Config),
    IntersectionHypothesis(intersection::Config),
    InteriorFailure(interior::Config),
    KakeyaCompression(kakeya::Config),
    BourgainCompression(bourgain::Config),
    Transversality(transversality::Config),
}

macro_rules! dispatch {
    ($self:expr, $c:ident => $body:expr) => {
        match $self {
            ScenarioConfig::FixedLevelPositivity($c) => $body,
            ScenarioConfig::FlatCounterexample($c) => $body,
            ScenarioConfig::DiscreteIncidence($c) => $body,
            ScenarioConfig::IntersectionHypothesis($c) => $body,
            ScenarioConfig::InteriorFailure($c) => $body,
            ScenarioConfig::KakeyaCompression($c) => $body,
            ScenarioConfig::BourgainCompression($c) => $body,
            ScenarioConfig::Transversality($c) => $body,
        }
    };
}

impl ScenarioConfig {
    pub fn default_for(id: &str) -> Result<Self> {
        Ok(match id {
            "fixed-level-positivity" => ScenarioConfig::FixedLevelPositivity(Default::default()),
            "flat-counterexample" => ScenarioConfig::FlatCounterexample(Default::default()),
            "discrete-incidence" => ScenarioConfig::DiscreteIncidence(Default::default()),
            "intersection-hypothesis" => ScenarioConfig::IntersectionHypothesis(Default::default()),
            "interior-failure" => ScenarioConfig::InteriorFailure(Default::default()),
            "kakeya-compression" => ScenarioConfig::KakeyaCompression(Default::default()),
            "bourgain-compression" => ScenarioConfig::BourgainCompression(Default::default()),
            "transversality" => ScenarioConfig::Transversality(Default::default()),
            other => return Err(Error::UnknownKey { key: other.into(), scope: "scenario ids".into() }),
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            ScenarioConfig::FixedLevelPositivity(_) => SCENARIO_IDS[0],
            ScenarioConfig::FlatCounterexample(_) => SCENARIO_IDS[1],
            ScenarioConfig::DiscreteIncidence(_) => SCENARIO_IDS[2],
            ScenarioConfig::IntersectionHypothesis(_) => SCENARIO_IDS[3],
            ScenarioConfig::InteriorFailure(_) => SCENARIO_IDS[4],
            ScenarioConfig::KakeyaCompression(_) => SCENARIO_IDS[5],
            ScenarioConfig::BourgainCompression(_) => SCENARIO_IDS[6],
            ScenarioConfig::Transversality(_) => SCENARIO_IDS[7],
        }
    }

    pub fn keys(&self) -> &'static [&'static str] {
        match self {
            ScenarioConfig::FixedLevelPositivity(_) => positivity::Config::KEYS,
            ScenarioConfig::FlatCounterexample(_) => flat::Config::KEYS,
            ScenarioConfig::DiscreteIncidence(_) => incidence::Config::KEYS,
            ScenarioConfig::IntersectionHypothesis(_) => intersection::Config::KEYS,
            ScenarioConfig::InteriorFailure(_) => interior::Config::KEYS,
            ScenarioConfig::KakeyaCompression(_) => kakeya::Config::KEYS,
            ScenarioConfig::BourgainCompression(_) => bourgain::Config::KEYS,
            ScenarioConfig::Transversality(_) => transversality::Config::KEYS,
        }
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let id = self.id();
        dispatch!(self, c => c.set(key, value)).map_err(|e| match e {
            Error::UnknownKey { key, .. } => Error::UnknownKey { key, scope: id.to_string() },
            other => other,
        })
    }

    pub fn params(&self) -> Vec<(String, String)> {
        dispatch!(self, c => c.params())
    }

    pub fn run(&self, seed: u64) -> Result<ScenarioOutput> {
        match self {
            ScenarioConfig::FixedLevelPositivity(c) => positivity::run(c, seed),
            ScenarioConfig::FlatCounterexample(c) => flat::run(c, seed),
            ScenarioConfig::DiscreteIncidence(c) => incidence::run(c, seed),
            ScenarioConfig::IntersectionHypothesis(c) => intersection::run(c, seed),
            ScenarioConfig::InteriorFailure(c) => interior::run(c, seed),
            ScenarioConfig::KakeyaCompression(c) => kakeya::run(c, seed),
            ScenarioConfig::BourgainCompression(c) => bourgain::run(c, seed),
            ScenarioConfig::Transversality(c) => transversality::run(c, seed),
        }
    }
}

/// Applies overrides to a set of scenario configs. A plain `key` goes to
/// every config that declares it and must match at least one; `id.key`
/// targets a single scenario.
pub fn apply_overrides(configs: &mut [ScenarioConfig], overrides: &[(String, String)]) -> Result<()> {
    for (key, value) in overrides {
        if let Some((scope, field)) = key.split_once('.') {
            let target = configs
                .iter_mut()
                .find(|c| c.id() == scope)
                .ok_or_else(|| Error::UnknownKey { key: key.clone(), scope: "selected scenarios".into() })?;
            target.set(field, value)?;
            continue;
        }
        let mut matched = false;
        for c in configs.iter_mut() {
            if c.keys().contains(&key.as_str()) {
                c.set(key, value)?;
                matched = true;
            }
        }
        if !matched {
            return Err(Error::UnknownKey { key: key.clone(), scope: "selected scenarios".into() });
        }
    }
    Ok(())
}

/// Builds configs for `selector` (one id or `all`) with overrides applied.
pub fn configs_for(selector: &str, overrides: &[(String, String)]) -> Result<Vec<ScenarioConfig>> {
    let mut configs = if selector == "all" {
        SCENARIO_IDS.iter().map(|id| ScenarioConfig::default_for(id)).collect::<Result<Vec<_>>>()?
    } else {
        vec![ScenarioConfig::default_for(selector)?]
    };
    apply_overrides(&mut configs, overrides)?;
    Ok(configs)
}

/// Successive ratios `v[k+1] / v[k]`.
pub(crate) fn successive_ratios(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| w[1] / w[0]).collect()
}

pub(crate) fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn min_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, f64::min)
}

/// Sorted copy, descending, rejecting empty lists and non-positive entries.
pub(crate) fn descending_positive(key: &str, values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() || values.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::BadValue { key: key.into(), reason: "need a non-empty list of positive values".into() });
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v.dedup();
    Ok(v)
}

pub(crate) fn sorted_depths(key: &str, depths: &[u32]) -> Result<Vec<u32>> {
    if depths.is_empty() {
        return Err(Error::BadValue { key: key.into(), reason: "need at least one depth".into() });
    }
    let mut d = depths.to_vec();
    d.sort_unstable();
    d.dedup();
    Ok(d)
}
