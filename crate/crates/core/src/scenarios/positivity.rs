//! Unit-circle unions over C×C stay fat as δ shrinks; over a Cantor set on a
//! line (dimension below one) they thin out.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{descending_positive, max_of, scenario_config, sorted_depths, ExperimentReport, NamedRaster, ScenarioOutput, Series, Verdict};
use crate::fractal::{cantor_middle_thirds, product_point_cloud, IntervalSet, PointSet};
use crate::raster::{rasterize_shapes_band, GridRaster, GridSpec, Shape};
use crate::rng::derive_seed;
use crate::{Error, Result};

scenario_config! {
    /// Defaults reproduce the depth-6, δ = 0.01, n = 2048 setting.
    Config {
        /// Cells per axis over `[box_lo, box_hi]²`.
        n: usize = 2048,
        box_lo: f64 = -1.5,
        box_hi: f64 = 2.5,
        /// Cantor depths; the deepest one carries the verdicts.
        depths: Vec<u32> = alloc::vec![4, 5, 6],
        /// Band half-widths.
        deltas: Vec<f64> = alloc::vec![0.04, 0.02, 0.01],
        samples_per_cell: usize = 1,
        radius: f64 = 1.0,
        /// Height of the line carrying the control Cantor set.
        line_y: f64 = 0.5,
        /// Minimum C×C area at the deepest depth and finest δ.
        min_area: f64 = 0.5,
        /// Largest relative area change per δ step at the deepest depth.
        stability: f64 = 0.05,
        /// Largest control ratio `area(δ/4) / area(δ)`.
        control_factor: f64 = 0.5,
    }
}

/// Circles of `radius` about every point of `centers`, as one band raster.
/// An empty center set gives an empty raster.
pub fn circle_union(centers: &PointSet, radius: f64, delta: f64, grid: &GridSpec) -> Result<GridRaster> {
    let shapes: Vec<Shape> = centers.points().map(|p| Shape::Circle { center: [p[0], p[1]], radius }).collect();
    rasterize_shapes_band(&shapes, delta, grid)
}

pub fn run(cfg: &Config, seed: u64) -> Result<ScenarioOutput> {
    let grid = GridSpec::square(cfg.box_lo, cfg.box_hi, cfg.n)?;
    let deltas = descending_positive("deltas", &cfg.deltas)?;
    let depths = sorted_depths("depths", &cfg.depths)?;
    let line = IntervalSet::singleton(cfg.line_y)?;
    let mut report = ExperimentReport::new("fixed-level-positivity", cfg.params(), seed);
    let mut rasters = Vec::new();
    let mut cc_last = Vec::new();
    let mut line_last = Vec::new();
    for &depth in &depths {
        let c = cantor_middle_thirds(depth)?;
        let cc = product_point_cloud(&c, &c, cfg.samples_per_cell, derive_seed(seed, depth as u64))?;
        let on_line = product_point_cloud(&c, &line, cfg.samples_per_cell, derive_seed(seed, 1000 + depth as u64))?;
        let mut a = Series::new(format!("cc_area_depth{depth}"), "delta", "area");
        let mut b = Series::new(format!("line_area_depth{depth}"), "delta", "area");
        for &delta in &deltas {
            let ra = circle_union(&cc, cfg.radius, delta, &grid)?;
            let rb = circle_union(&on_line, cfg.radius, delta, &grid)?;
            a.push(delta, ra.area());
            b.push(delta, rb.area());
            if depth == *depths.last().unwrap() && delta == *deltas.last().unwrap() {
                rasters.push(NamedRaster { label: format!("cc-depth{depth}"), delta, raster: ra });
                rasters.push(NamedRaster { label: format!("line-depth{depth}"), delta, raster: rb });
            }
        }
        cc_last = a.points.clone();
        line_last = b.points.clone();
        report.series.push(a);
        report.series.push(b);
    }

    let deepest = *depths.last().unwrap();
    let mut change = Series::new(format!("cc_relative_change_depth{deepest}"), "delta", "relative_change");
    for w in cc_last.windows(2) {
        change.push(w[1].0, (w[1].1 - w[0].1).abs() / w[0].1);
    }
    let mut shrink = Series::new(format!("line_shrink_depth{deepest}"), "delta", "area_ratio_vs_4delta");
    for &(d_small, a_small) in &line_last {
        if let Some(&(_, a_big)) = line_last.iter().find(|(d, _)| (d / d_small - 4.0).abs() < 1e-9) {
            shrink.push(d_small, a_small / a_big);
        }
    }
    if shrink.points.is_empty() {
        return Err(Error::BadValue { key: "deltas".into(), reason: "need two deltas a factor 4 apart".into() });
    }
    let finest = cc_last.last().unwrap().1;
    report.verdicts.push(Verdict::at_least("cc_area_positive", finest, cfg.min_area));
    if !change.points.is_empty() {
        report.verdicts.push(Verdict::at_most("cc_delta_stability", max_of(change.points.iter().map(|p| p.1)), cfg.stability));
    }
    report.verdicts.push(Verdict::at_most(
        "line_control_shrink",
        max_of(shrink.points.iter().map(|p| p.1)),
        cfg.control_factor,
    ));
    report.series.push(change);
    report.series.push(shrink);
    Ok(ScenarioOutput { report, rasters })
}
