//! Points of the Bourgain curves all satisfy `X = YZ`: a two-parameter family
//! of curves packed into one surface.

use alloc::vec::Vec;
use rand::Rng;

use super::{max_of, scenario_config, ExperimentReport, ScenarioOutput, Series, Verdict};
use crate::phase::bourgain_curve_point;
use crate::rng::seeded;
use crate::{Error, Result};

scenario_config! {
    Config {
        samples: usize = 10_000,
        /// `y₁, y₂, t` are drawn uniformly from `[-range, range]`.
        range: f64 = 2.0,
        max_residual: f64 = 1e-12,
    }
}

/// `|X − YZ|` at a curve point.
pub fn residual(p: [f64; 3]) -> f64 {
    (p[0] - p[1] * p[2]).abs()
}

pub fn run(cfg: &Config, seed: u64) -> Result<ScenarioOutput> {
    if cfg.samples == 0 || !(cfg.range > 0.0) {
        return Err(Error::BadValue { key: "samples".into(), reason: "need samples > 0 and range > 0".into() });
    }
    let mut rng = seeded(seed);
    let mut res = Series::new("residual_by_sample", "sample", "abs_x_minus_yz");
    for k in 0..cfg.samples {
        let [y1, y2, t]: [f64; 3] = core::array::from_fn(|_| rng.random_range(-cfg.range..=cfg.range));
        res.push(k as f64, residual(bourgain_curve_point(y1, y2, t)));
    }
    let worst = max_of(res.points.iter().map(|p| p.1));
    let summary = Series::new("max_residual", "samples", "abs_x_minus_yz").with_points(alloc::vec![(cfg.samples as f64, worst)]);
    let mut report = ExperimentReport::new("bourgain-compression", cfg.params(), seed);
    report.verdicts.push(Verdict::at_most("surface_residual", worst, cfg.max_residual));
    report.series.extend([res, summary]);
    Ok(ScenarioOutput { report, rasters: Vec::new() })
}
