//! Perron trees: the union area shrinks with the stage while every one of the
//! `2^stage` unit direction segments stays inside.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{max_of, min_of, scenario_config, successive_ratios, ExperimentReport, NamedRaster, ScenarioOutput, Series, Verdict};
use crate::fractal::{perron_tree, Aabb, TriangleSet};
use crate::raster::{rasterize_shapes_fill, GridRaster, GridSpec, Shape};
use crate::{Error, Result};

scenario_config! {
    Config {
        stages: Vec<u32> = alloc::vec![0, 1, 2, 3, 4, 5],
        n: usize = 2048,
        height: f64 = 1.0,
        /// Raster box margin around the union of all stages.
        margin: f64 = 0.05,
        /// Stage compared against stage 0.
        ratio_stage: u32 = 5,
        ratio_max: f64 = 0.35,
        segment_samples: usize = 100,
    }
}

pub fn tree_raster(tree: &TriangleSet, grid: &GridSpec) -> Result<GridRaster> {
    let shapes: Vec<Shape> = tree.triangles.iter().map(|t| Shape::Triangle { vertices: t.vertices }).collect();
    rasterize_shapes_fill(&shapes, grid)
}

/// Number of direction segments whose `samples` equally spaced points all lie
/// in the union.
pub fn covered_directions(tree: &TriangleSet, samples: usize) -> usize {
    (0..tree.direction_count)
        .filter(|&i| {
            let (a, b) = tree.direction_segment(i);
            (0..samples).all(|k| {
                let s = if samples == 1 { 0.5 } else { k as f64 / (samples - 1) as f64 };
                tree.contains([a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])])
            })
        })
        .count()
}

pub fn run(cfg: &Config, seed: u64) -> Result<ScenarioOutput> {
    let mut stages = cfg.stages.clone();
    stages.sort_unstable();
    stages.dedup();
    if stages.first() != Some(&0) || !stages.contains(&cfg.ratio_stage) {
        return Err(Error::BadValue { key: "stages".into(), reason: "must include 0 and ratio_stage".into() });
    }
    if stages.iter().any(|&s| s > 6) {
        return Err(Error::BadValue { key: "stages".into(), reason: "stages must be at most 6".into() });
    }
    let trees = stages.iter().map(|&s| perron_tree(s, cfg.height)).collect::<Result<Vec<_>>>()?;
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for t in &trees {
        let (l, h) = t.bounds();
        for k in 0..2 {
            lo[k] = lo[k].min(l[k]);
            hi[k] = hi[k].max(h[k]);
        }
    }
    let side = (hi[0] - lo[0]).max(hi[1] - lo[1]) + 2.0 * cfg.margin;
    let bounds = Aabb::new(
        alloc::vec![lo[0] - cfg.margin, lo[1] - cfg.margin],
        alloc::vec![lo[0] - cfg.margin + side, lo[1] - cfg.margin + side],
    )?;
    let grid = GridSpec::new(bounds, cfg.n)?;

    let mut report = ExperimentReport::new("kakeya-compression", cfg.params(), seed);
    let mut area = Series::new("area_by_stage", "stage", "area");
    let mut covered = Series::new("directions_covered_by_stage", "stage", "directions");
    let mut fraction = Series::new("coverage_fraction_by_stage", "stage", "fraction");
    let mut rasters = Vec::new();
    for (tree, &stage) in trees.iter().zip(&stages) {
        let r = tree_raster(tree, &grid)?;
        area.push(stage as f64, r.area());
        let c = covered_directions(tree, cfg.segment_samples);
        covered.push(stage as f64, c as f64);
        fraction.push(stage as f64, c as f64 / tree.direction_count as f64);
        if stage == cfg.ratio_stage {
            rasters.push(NamedRaster { label: format!("stage{stage}"), delta: 0.0, raster: r });
        }
    }
    let areas: Vec<f64> = area.points.iter().map(|p| p.1).collect();
    let mut ratio = Series::new("area_ratio_to_stage0", "stage", "ratio");
    for (s, a) in stages.iter().zip(&areas) {
        ratio.push(*s as f64, a / areas[0]);
    }
    let at = stages.iter().position(|&s| s == cfg.ratio_stage).unwrap();
    let step = successive_ratios(&areas);
    let mut steps = Series::new("area_step_ratio", "stage", "area_over_previous");
    for (r, s) in step.iter().zip(&stages[1..]) {
        steps.push(*s as f64, *r);
    }
    if !steps.points.is_empty() {
        report.verdicts.push(Verdict::at_most("area_non_increasing", max_of(step.iter().copied()), 1.0));
    }
    report.verdicts.push(Verdict::at_most("compression_ratio", ratio.points[at].1, cfg.ratio_max));
    report.verdicts.push(Verdict::at_least("direction_coverage", min_of(fraction.points.iter().map(|p| p.1)), 1.0));
    report.series.extend([area, covered, fraction, ratio, steps]);
    Ok(ScenarioOutput { report, rasters })
}
