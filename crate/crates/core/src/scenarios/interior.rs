//! Unit circles centered on a fat Cantor set `F × {0}`: the union has positive
//! area, yet every horizontal slice sits inside `(F + s) ∪ (F − s)` with
//! `s = √(1 − y²)`, so long horizontal runs disappear as the depth grows.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{max_of, min_of, scenario_config, sorted_depths, successive_ratios, ExperimentReport, NamedRaster, ScenarioOutput, Series, Verdict};
use crate::fractal::{fat_cantor, IntervalSet};
use crate::raster::{max_inscribed_interval_within, rasterize_shapes_band, GridRaster, GridSpec, Shape};
use crate::{Error, Result};

scenario_config! {
    Config {
        n: usize = 8192,
        box_lo: f64 = -1.5,
        box_hi: f64 = 2.5,
        depths: Vec<u32> = alloc::vec![3, 4, 5, 6],
        /// Band half-width for the area series.
        area_delta: f64 = 0.01,
        /// Band half-width for the run series, in cells.
        run_delta_cells: f64 = 0.25,
        /// Runs are measured on rows with `|y| ≤ row_limit`.
        row_limit: f64 = 0.9,
        /// Row limit for an unjudged companion series. Below `√3/2` the two
        /// translates of `F` are disjoint; at 0.86 the gap between them is
        /// wider than a cell.
        disjoint_row_limit: f64 = 0.86,
        min_area: f64 = 0.3,
        /// Slack on the run bound, in cells.
        bound_cells: f64 = 4.0,
    }
}

/// Union of unit circles centered on `set × {0}`.
pub fn fat_cantor_circles(set: &IntervalSet, delta: f64, grid: &GridSpec) -> Result<GridRaster> {
    let shapes: Vec<Shape> = set
        .intervals()
        .iter()
        .map(|&(a, b)| Shape::SweptCircle { x: [a, b], y: [0.0, 0.0], radius: 1.0 })
        .collect();
    rasterize_shapes_band(&shapes, delta, grid)
}

/// `2 · (largest interval) + cells · h`.
pub fn run_bound(set: &IntervalSet, cells: f64, cell: f64) -> f64 {
    2.0 * set.max_length() + cells * cell
}

pub fn run(cfg: &Config, seed: u64) -> Result<ScenarioOutput> {
    if !(cfg.box_lo <= -1.5 && cfg.box_hi >= 2.5) {
        return Err(Error::BadValue { key: "box_lo".into(), reason: "box must contain [-1.5, 2.5]".into() });
    }
    let grid = GridSpec::square(cfg.box_lo, cfg.box_hi, cfg.n)?;
    let depths = sorted_depths("depths", &cfg.depths)?;
    let h = grid.cell_size(0);
    let run_delta = cfg.run_delta_cells * h;
    let mut report = ExperimentReport::new("interior-failure", cfg.params(), seed);
    let mut area = Series::new("area_by_depth", "depth", "area");
    let mut fine_area = Series::new("fine_area_by_depth", "depth", "area");
    let mut runs = Series::new("max_run_by_depth", "depth", "max_horizontal_run");
    let mut bounds = Series::new("run_bound_by_depth", "depth", "bound");
    let mut disjoint = Series::new("max_run_disjoint_rows_by_depth", "depth", "max_horizontal_run");
    let mut rasters = Vec::new();
    for &depth in &depths {
        let f = fat_cantor(depth)?;
        let coarse = fat_cantor_circles(&f, cfg.area_delta, &grid)?;
        area.push(depth as f64, coarse.area());
        let fine = fat_cantor_circles(&f, run_delta, &grid)?;
        fine_area.push(depth as f64, fine.area());
        runs.push(depth as f64, max_inscribed_interval_within(&fine, 0, -cfg.row_limit, cfg.row_limit)?);
        disjoint.push(
            depth as f64,
            max_inscribed_interval_within(&fine, 0, -cfg.disjoint_row_limit, cfg.disjoint_row_limit)?,
        );
        bounds.push(depth as f64, run_bound(&f, cfg.bound_cells, h));
        if depth == *depths.last().unwrap() {
            rasters.push(NamedRaster { label: format!("depth{depth}"), delta: cfg.area_delta, raster: coarse });
        }
    }
    let run_values: Vec<f64> = runs.points.iter().map(|p| p.1).collect();
    let mut growth = Series::new("run_ratio_by_depth", "depth", "run_over_previous");
    for (r, d) in successive_ratios(&run_values).into_iter().zip(&depths[1..]) {
        growth.push(*d as f64, r);
    }
    let (_, last_run) = *runs.points.last().unwrap();
    let (_, last_bound) = *bounds.points.last().unwrap();
    report.verdicts.push(Verdict::at_least("area_positive", min_of(area.points.iter().map(|p| p.1)), cfg.min_area));
    if !growth.points.is_empty() {
        report.verdicts.push(Verdict::at_most("run_non_increasing", max_of(growth.points.iter().map(|p| p.1)), 1.0));
    }
    report.verdicts.push(Verdict::at_most("run_bound_deepest", last_run, last_bound));
    report.series.extend([area, fine_area, runs, bounds, disjoint, growth]);
    Ok(ScenarioOutput { report, rasters })
}
