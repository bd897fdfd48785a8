//! Square boundaries centered on C×C: the flat sides line up and the union
//! should lose area with depth; circles at the same centers do not.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{descending_positive, max_of, min_of, scenario_config, sorted_depths, successive_ratios, ExperimentReport, NamedRaster, ScenarioOutput, Series, Verdict};
use crate::fractal::{cantor_middle_thirds, IntervalSet};
use crate::linalg::least_squares;
use crate::raster::{rasterize_shapes_band, GridSpec, Shape};
use crate::{Error, Result};

scenario_config! {
    Config {
        n: usize = 2048,
        box_lo: f64 = -1.5,
        box_hi: f64 = 2.5,
        depths: Vec<u32> = alloc::vec![3, 4, 5],
        /// Band half-width for the depth comparison.
        delta: f64 = 0.01,
        /// Ladder for the δ → 0 extrapolation at the deepest depth.
        intercept_deltas: Vec<f64> = alloc::vec![0.04, 0.02, 0.01, 0.005],
        half_side: f64 = 1.0,
        /// Largest allowed `area(depth + 1) / area(depth)`.
        factor: f64 = 0.8,
        /// Largest allowed extrapolated area at δ = 0.
        intercept_max: f64 = 0.05,
    }
}

/// Centers of the cells of `C_depth × C_depth`.
pub fn cell_centers(depth: u32) -> Result<Vec<[f64; 2]>> {
    let c = cantor_middle_thirds(depth)?;
    Ok(midpoint_grid(&c))
}

fn midpoint_grid(c: &IntervalSet) -> Vec<[f64; 2]> {
    let mids: Vec<f64> = c.intervals().iter().map(|(a, b)| 0.5 * (a + b)).collect();
    mids.iter().flat_map(|&y| mids.iter().map(move |&x| [x, y])).collect()
}

pub fn square_union_area(depth: u32, half_side: f64, delta: f64, grid: &GridSpec) -> Result<f64> {
    let shapes: Vec<Shape> =
        cell_centers(depth)?.into_iter().map(|center| Shape::SquareBoundary { center, half_side }).collect();
    Ok(rasterize_shapes_band(&shapes, delta, grid)?.area())
}

pub fn circle_union_area(depth: u32, radius: f64, delta: f64, grid: &GridSpec) -> Result<f64> {
    let shapes: Vec<Shape> = cell_centers(depth)?.into_iter().map(|center| Shape::Circle { center, radius }).collect();
    Ok(rasterize_shapes_band(&shapes, delta, grid)?.area())
}

pub fn run(cfg: &Config, seed: u64) -> Result<ScenarioOutput> {
    let grid = GridSpec::square(cfg.box_lo, cfg.box_hi, cfg.n)?;
    let depths = sorted_depths("depths", &cfg.depths)?;
    if depths.len() < 2 {
        return Err(Error::BadValue { key: "depths".into(), reason: "need at least two depths".into() });
    }
    let ladder = descending_positive("intercept_deltas", &cfg.intercept_deltas)?;
    let mut report = ExperimentReport::new("flat-counterexample", cfg.params(), seed);
    let mut rasters = Vec::new();

    let mut squares = Series::new("square_area", "depth", "area");
    let mut circles = Series::new("circle_area", "depth", "area");
    for &depth in &depths {
        let centers = cell_centers(depth)?;
        let sq: Vec<Shape> =
            centers.iter().map(|&center| Shape::SquareBoundary { center, half_side: cfg.half_side }).collect();
        let ci: Vec<Shape> = centers.iter().map(|&center| Shape::Circle { center, radius: cfg.half_side }).collect();
        let rs = rasterize_shapes_band(&sq, cfg.delta, &grid)?;
        squares.push(depth as f64, rs.area());
        circles.push(depth as f64, rasterize_shapes_band(&ci, cfg.delta, &grid)?.area());
        if depth == *depths.last().unwrap() {
            rasters.push(NamedRaster { label: format!("squares-depth{depth}"), delta: cfg.delta, raster: rs });
        }
    }
    let deepest = *depths.last().unwrap();
    let mut by_delta = Series::new(format!("square_area_depth{deepest}"), "delta", "area");
    for &delta in &ladder {
        by_delta.push(delta, square_union_area(deepest, cfg.half_side, delta, &grid)?);
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = by_delta.points.iter().copied().unzip();
    let fit = least_squares(&xs, &ys).ok_or_else(|| Error::DegenerateFit("need two distinct deltas".into()))?;

    let sq_values: Vec<f64> = squares.points.iter().map(|p| p.1).collect();
    let ratios = successive_ratios(&sq_values);
    let ratio_series = Series::new("square_depth_ratio", "depth", "area_ratio")
        .with_points(depths[1..].iter().zip(&ratios).map(|(&d, &r)| (d as f64, r)).collect());
    let circle_steps: Vec<(f64, f64)> = circles.points.windows(2).map(|w| (w[1].0, w[1].1 - w[0].1)).collect();
    let step_series = Series::new("circle_depth_increment", "depth", "area_change").with_points(circle_steps);
    let intercept = Series::new("square_intercept", "depth", "area_at_zero_delta").with_points(alloc::vec![(deepest as f64, fit.intercept)]);

    report.verdicts.push(Verdict::at_most("square_depth_decay", max_of(ratios.iter().copied()), cfg.factor));
    report.verdicts.push(Verdict::at_most("square_zero_delta_intercept", fit.intercept, cfg.intercept_max));
    report.verdicts.push(Verdict::at_least(
        "circle_area_non_decreasing",
        min_of(step_series.points.iter().map(|p| p.1)),
        0.0,
    ));
    report.series.extend([squares, circles, by_delta, ratio_series, step_series, intercept]);
    Ok(ScenarioOutput { report, rasters })
}
