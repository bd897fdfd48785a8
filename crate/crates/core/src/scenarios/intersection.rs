//! Intersections of pairs of δ-bands in three dimensions, normalized as
//! `|Σ_x^δ ∩ Σ_x'^δ| (δ + Δ) / δ²`. Perturbed spheres keep this bounded;
//! the paraboloid family with `t(x) = 1 − x₃` selects one surface for every
//! center, so the ratio grows like `1/δ`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{descending_positive, max_of, min_of, scenario_config, ExperimentReport, ScenarioOutput, Series, Verdict};
use crate::fractal::Aabb;
use crate::phase::{PhaseKind, PhaseSpec};
use crate::raster::{monte_carlo_intersection, LevelBand, McEstimate};
use crate::rng::derive_seed;
use crate::{Error, Result};

scenario_config! {
    Config {
        deltas: Vec<f64> = vec![0.04, 0.02, 0.01],
        separations: Vec<f64> = vec![0.25, 0.5, 1.0, 1.5],
        /// Also tabulate Δ = 0 (same center and level); never judged.
        include_coincident: bool = true,
        samples: usize = 2_000_000,
        kappa: f64 = 0.3,
        /// Bound on the sphere-family ratio.
        c_pass: f64 = 50.0,
        /// Largest max/min of sphere ratios across one δ-halving.
        stability: f64 = 1.5,
        /// Least growth of the paraboloid ratio per δ-halving.
        growth: f64 = 1.8,
        growth_separation: f64 = 1.0,
        /// Separations above this are skipped for the paraboloid (centers on `[0, 1]`).
        paraboloid_max_separation: f64 = 1.0,
        paraboloid_lateral: f64 = 1.0,
        paraboloid_z: Vec<f64> = vec![0.9, 3.1],
        /// Largest allowed standard error relative to the estimate.
        max_rel_se: f64 = 0.1,
    }
}

/// Pair of bands with centers `(0, 0, 0)` and `(0, 0, Δ)`.
pub fn sphere_pair(kappa: f64, separation: f64) -> Result<(LevelBand, LevelBand)> {
    let phase = PhaseSpec::new(PhaseKind::DiffeoDistance, 3)?.with_kappa(kappa)?;
    Ok((
        LevelBand::new(phase.clone(), vec![0.0; 3], 1.0)?,
        LevelBand::new(phase, vec![0.0, 0.0, separation], 1.0)?,
    ))
}

/// Box containing `Σ_x^δ` for a perturbed unit sphere about `x`.
pub fn sphere_box(center: &[f64], delta: f64, kappa: f64) -> Aabb {
    let r = 1.0 + delta + kappa.abs();
    Aabb { lo: center.iter().map(|c| c - r).collect(), hi: center.iter().map(|c| c + r).collect() }
}

/// Paraboloid bands for centers `(0, 0, 0)` and `(0, 0, Δ)` at levels `1 − x₃`.
pub fn paraboloid_pair(separation: f64) -> Result<(LevelBand, LevelBand)> {
    let phase = PhaseSpec::new(PhaseKind::TranslatedParaboloid, 3)?;
    Ok((
        LevelBand::new(phase.clone(), vec![0.0; 3], 1.0)?,
        LevelBand::new(phase, vec![0.0, 0.0, separation], 1.0 - separation)?,
    ))
}

pub fn normalized_ratio(estimate: f64, delta: f64, separation: f64) -> f64 {
    estimate * (delta + separation) / (delta * delta)
}

struct Table {
    ratios: Vec<Vec<f64>>,
    low_confidence: bool,
    worst_rel_se: f64,
}

fn tabulate(
    report: &mut ExperimentReport,
    family: &str,
    separations: &[f64],
    deltas: &[f64],
    samples: usize,
    seed: u64,
    pair: impl Fn(f64) -> Result<(LevelBand, LevelBand)>,
    bounds: impl Fn(&LevelBand, &LevelBand, f64) -> Result<Aabb>,
) -> Result<Table> {
    let mut table = Table { ratios: Vec::new(), low_confidence: false, worst_rel_se: 0.0 };
    for (i, &sep) in separations.iter().enumerate() {
        let (a, b) = pair(sep)?;
        let mut ratio = Series::new(format!("{family}_ratio_sep{sep}"), "delta", "ratio");
        let mut raw = Series::new(format!("{family}_intersection_sep{sep}"), "delta", "measure");
        let mut se = Series::new(format!("{family}_rel_se_sep{sep}"), "delta", "relative_standard_error");
        for (j, &delta) in deltas.iter().enumerate() {
            let bx = bounds(&a, &b, delta)?;
            let est: McEstimate =
                monte_carlo_intersection(&a, &b, delta, &bx, samples, derive_seed(seed, (i * 100 + j) as u64))?;
            raw.push(delta, est.estimate);
            ratio.push(delta, normalized_ratio(est.estimate, delta, sep));
            let rel = if est.estimate > 0.0 { est.std_error / est.estimate } else { 1.0 };
            se.push(delta, rel);
            if sep > 0.0 {
                table.low_confidence |= est.low_confidence;
                table.worst_rel_se = table.worst_rel_se.max(rel);
            }
        }
        table.ratios.push(ratio.points.iter().map(|p| p.1).collect());
        report.series.extend([ratio, raw, se]);
    }
    Ok(table)
}

pub fn run(cfg: &Config, seed: u64) -> Result<ScenarioOutput> {
    let deltas = descending_positive("deltas", &cfg.deltas)?;
    let separations = descending_positive("separations", &cfg.separations)?.into_iter().rev().collect::<Vec<_>>();
    if cfg.paraboloid_z.len() != 2 || !(cfg.paraboloid_z[1] > cfg.paraboloid_z[0]) {
        return Err(Error::BadValue { key: "paraboloid_z".into(), reason: "need `lo,hi` with hi > lo".into() });
    }
    let mut report = ExperimentReport::new("intersection-hypothesis", cfg.params(), seed);
    let kappa = cfg.kappa;

    let sphere_bounds = |a: &LevelBand, b: &LevelBand, delta: f64| {
        sphere_box(&a.center, delta, kappa)
            .intersect(&sphere_box(&b.center, delta, kappa))
            .ok_or(Error::Empty("sphere boxes do not meet"))
    };
    let spheres = tabulate(&mut report, "sphere", &separations, &deltas, cfg.samples, derive_seed(seed, 1), |s| sphere_pair(kappa, s), sphere_bounds)?;

    let para_seps: Vec<f64> = separations.iter().copied().filter(|s| *s <= cfg.paraboloid_max_separation).collect();
    let lat = cfg.paraboloid_lateral;
    let para_box = Aabb::new(vec![-lat, -lat, cfg.paraboloid_z[0]], vec![lat, lat, cfg.paraboloid_z[1]])?;
    let paraboloids = tabulate(&mut report, "paraboloid", &para_seps, &deltas, cfg.samples, derive_seed(seed, 2), paraboloid_pair, |_, _, _| Ok(para_box.clone()))?;

    if cfg.include_coincident {
        tabulate(&mut report, "sphere_coincident", &[0.0], &deltas, cfg.samples, derive_seed(seed, 3), |s| sphere_pair(kappa, s), sphere_bounds)?;
    }

    let mut stability = Series::new("sphere_halving_spread", "separation", "max_over_min");
    for (sep, row) in separations.iter().zip(&spheres.ratios) {
        let spread = max_of(row.windows(2).map(|w| w[0].max(w[1]) / w[0].min(w[1])));
        stability.push(*sep, spread);
    }
    let gi = para_seps
        .iter()
        .position(|s| (s - cfg.growth_separation).abs() < 1e-12)
        .ok_or_else(|| Error::BadValue { key: "growth_separation".into(), reason: "must be one of the paraboloid separations".into() })?;
    let mut growth = Series::new(format!("paraboloid_growth_sep{}", cfg.growth_separation), "delta", "ratio_growth");
    for (w, d) in paraboloids.ratios[gi].windows(2).zip(&deltas[1..]) {
        growth.push(*d, w[1] / w[0]);
    }
    let worst = spheres.worst_rel_se.max(paraboloids.worst_rel_se);
    let precision = Series::new("worst_rel_se", "families", "relative_standard_error").with_points(vec![(2.0, worst)]);
    let low = spheres.low_confidence || paraboloids.low_confidence;
    let note = "low-confidence Monte Carlo estimate";

    report.verdicts.push(
        Verdict::at_most("sphere_ratio_bounded", max_of(spheres.ratios.iter().flatten().copied()), cfg.c_pass)
            .withheld_if(spheres.low_confidence, note),
    );
    report.verdicts.push(
        Verdict::at_most("sphere_ratio_delta_stable", max_of(stability.points.iter().map(|p| p.1)), cfg.stability)
            .withheld_if(spheres.low_confidence, note),
    );
    report.verdicts.push(
        Verdict::at_least("paraboloid_ratio_growth", min_of(growth.points.iter().map(|p| p.1)), cfg.growth)
            .withheld_if(paraboloids.low_confidence, note),
    );
    report.verdicts.push(Verdict::at_most("monte_carlo_precision", worst, cfg.max_rel_se).withheld_if(low, note));
    report.series.extend([stability, growth, precision]);
    Ok(ScenarioOutput { report, rasters: Vec::new() })
}
