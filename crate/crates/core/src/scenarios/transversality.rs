//! Jacobian of `F(t, u) = γ(t) + (cos u, sin u)`, the unit circle swept along
//! a curve. Finite differences are checked against `|γ′(t) · (cos u, sin u)|`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::str::FromStr;
#[allow(unused_imports)]
use num_traits::Float;

use super::{max_of, min_of, scenario_config, ConfigValue, ExperimentReport, ScenarioOutput, Series, Verdict};
use crate::linalg::determinant;
use crate::{Error, Result};

/// Curve carrying the circle centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    /// `γ(t) = (t, 0)`.
    Line,
    /// `γ(t) = (sin t, 1 − cos t)`, unit speed.
    Arc,
}

impl Curve {
    pub fn point(self, t: f64) -> [f64; 2] {
        match self {
            Curve::Line => [t, 0.0],
            Curve::Arc => [t.sin(), 1.0 - t.cos()],
        }
    }

    pub fn tangent(self, t: f64) -> [f64; 2] {
        match self {
            Curve::Line => [1.0, 0.0],
            Curve::Arc => [t.cos(), t.sin()],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Curve::Line => "line",
            Curve::Arc => "arc",
        }
    }
}

impl FromStr for Curve {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        match s.trim() {
            "line" => Ok(Curve::Line),
            "arc" => Ok(Curve::Arc),
            other => Err(format!("expected `line` or `arc`, got `{other}`")),
        }
    }
}

impl ConfigValue for Curve {
    fn parse_value(s: &str) -> core::result::Result<Self, String> {
        s.parse()
    }

    fn render(&self) -> String {
        self.name().into()
    }
}

scenario_config! {
    Config {
        curve: Curve = Curve::Line,
        t_samples: usize = 100,
        u_samples: usize = 100,
        t_lo: f64 = 0.0,
        t_hi: f64 = 1.0,
        u_lo: f64 = 0.0,
        u_hi: f64 = PI / 2.0,
        fd_step: f64 = 1e-5,
        max_error: f64 = 1e-3,
        band_lo: f64 = PI / 6.0,
        band_hi: f64 = PI / 3.0,
        band_min: f64 = 0.49,
    }
}

pub fn map(curve: Curve, t: f64, u: f64) -> [f64; 2] {
    let g = curve.point(t);
    [g[0] + u.cos(), g[1] + u.sin()]
}

/// `|det DF|` by central differences.
pub fn numeric_jacobian(curve: Curve, t: f64, u: f64, h: f64) -> f64 {
    let ft = [map(curve, t + h, u), map(curve, t - h, u)];
    let fu = [map(curve, t, u + h), map(curve, t, u - h)];
    let m = [
        (ft[0][0] - ft[1][0]) / (2.0 * h),
        (fu[0][0] - fu[1][0]) / (2.0 * h),
        (ft[0][1] - ft[1][1]) / (2.0 * h),
        (fu[0][1] - fu[1][1]) / (2.0 * h),
    ];
    determinant(&m, 2).abs()
}

pub fn analytic_jacobian(curve: Curve, t: f64, u: f64) -> f64 {
    let g = curve.tangent(t);
    (g[0] * u.cos() + g[1] * u.sin()).abs()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        1 => alloc::vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

pub fn run(cfg: &Config, seed: u64) -> Result<ScenarioOutput> {
    if cfg.t_samples == 0 || cfg.u_samples == 0 {
        return Err(Error::BadValue { key: "t_samples".into(), reason: "need at least one sample per axis".into() });
    }
    if !(cfg.fd_step > 0.0) {
        return Err(Error::BadValue { key: "fd_step".into(), reason: "must be positive".into() });
    }
    let ts = linspace(cfg.t_lo, cfg.t_hi, cfg.t_samples);
    let us = linspace(cfg.u_lo, cfg.u_hi, cfg.u_samples);
    let slack = 1e-9 * (1.0 + cfg.u_hi.abs());
    let mut min_j = Series::new("min_jacobian_over_t", "u", "jacobian");
    let mut err = Series::new("max_error_over_t", "u", "abs_error");
    let mut at_t0 = Series::new(format!("jacobian_at_t{}", cfg.t_lo), "u", "jacobian");
    let mut band = f64::INFINITY;
    for &u in &us {
        let values: Vec<(f64, f64)> = ts
            .iter()
            .map(|&t| {
                let j = numeric_jacobian(cfg.curve, t, u, cfg.fd_step);
                (j, (j - analytic_jacobian(cfg.curve, t, u)).abs())
            })
            .collect();
        let lowest = min_of(values.iter().map(|v| v.0));
        min_j.push(u, lowest);
        err.push(u, max_of(values.iter().map(|v| v.1)));
        at_t0.push(u, values[0].0);
        if u >= cfg.band_lo - slack && u <= cfg.band_hi + slack {
            band = band.min(lowest);
        }
    }
    if !band.is_finite() {
        return Err(Error::BadValue { key: "band_lo".into(), reason: "no u sample falls in the band".into() });
    }
    let mut report = ExperimentReport::new("transversality", cfg.params(), seed);
    report.verdicts.push(Verdict::at_most("pointwise_error", max_of(err.points.iter().map(|p| p.1)), cfg.max_error));
    report.verdicts.push(Verdict::at_least("band_minimum", band, cfg.band_min));
    report.series.extend([min_j, err, at_t0]);
    Ok(ScenarioOutput { report, rasters: Vec::new() })
}
