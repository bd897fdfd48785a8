use std::f64::consts::PI;

use gmt_core::fractal::{fat_cantor, Aabb, PointSet};
use gmt_core::phase::bourgain_curve_point;
use gmt_core::raster::{max_inscribed_interval_within, GridSpec};
use gmt_core::scenarios::transversality::{analytic_jacobian, numeric_jacobian, Curve};
use gmt_core::scenarios::*;
use gmt_core::Error;

fn run(id: &str, overrides: &[(&str, &str)], seed: u64) -> ScenarioOutput {
    let o: Vec<(String, String)> = overrides.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    configs_for(id, &o).unwrap().remove(0).run(seed).unwrap()
}

const SMALL: &[(&str, &[(&str, &str)])] = &[
    ("fixed-level-positivity", &[("n", "256"), ("depths", "3"), ("deltas", "0.08,0.02")]),
    ("flat-counterexample", &[("n", "256"), ("depths", "2,3"), ("delta", "0.02"), ("intercept_deltas", "0.08,0.04,0.02")]),
    ("discrete-incidence", &[("qs", "4,8"), ("n", "512")]),
    ("intersection-hypothesis", &[("samples", "100000"), ("deltas", "0.04,0.02"), ("separations", "0.5,1")]),
    ("interior-failure", &[("n", "512"), ("depths", "2,3"), ("area_delta", "0.02")]),
    ("kakeya-compression", &[("n", "256"), ("stages", "0,1,2,3"), ("ratio_stage", "3")]),
    ("bourgain-compression", &[("samples", "500")]),
    ("transversality", &[("t_samples", "10"), ("u_samples", "10"), ("curve", "arc")]),
];

#[test]
fn reruns_are_bit_identical_and_traceable() {
    assert_eq!(SMALL.len(), SCENARIO_IDS.len());
    for (id, overrides) in SMALL {
        let a = run(id, overrides, 5);
        let b = run(id, overrides, 5);
        assert_eq!(a.report, b.report, "{id}");
        assert_eq!(a.report.scenario_id, *id);
        assert!(a.report.measurements_are_traceable(), "{id}");
        assert!(!a.report.verdicts.is_empty(), "{id}");
        for (x, y) in a.rasters.iter().zip(&b.rasters) {
            assert_eq!(x.raster.to_cells(), y.raster.to_cells());
        }
        let keys: Vec<String> = a.report.params.iter().map(|(k, _)| k.clone()).collect();
        assert_eq!(keys, ScenarioConfig::default_for(id).unwrap().keys());
    }
}

#[test]
fn empty_center_set_gives_empty_union() {
    let g = GridSpec::square(-1.5, 2.5, 256).unwrap();
    let empty = PointSet::empty(Aabb::cube(2, 0.0, 1.0));
    let r = positivity::circle_union(&empty, 1.0, 0.02, &g).unwrap();
    assert_eq!(r.area(), 0.0);
}

#[test]
fn single_square_matches_offset_value() {
    let g = GridSpec::square(-1.5, 2.5, 2048).unwrap();
    let area = flat::square_union_area(0, 1.0, 0.05, &g).unwrap();
    assert!((area - 0.81).abs() <= 0.05 * 0.81, "area {area}");
    let exact = 0.8 - (4.0 - PI) * 0.0025;
    assert!((area - exact).abs() <= 0.05 * exact);
}

#[test]
fn circles_do_not_lose_area_with_depth() {
    let g = GridSpec::square(-1.5, 2.5, 1024).unwrap();
    let areas: Vec<f64> = (1..=4).map(|d| flat::circle_union_area(d, 1.0, 0.01, &g).unwrap()).collect();
    for w in areas.windows(2) {
        assert!(w[1] >= w[0], "{areas:?}");
    }
}

#[test]
fn annulus_thickness_formula() {
    assert!((incidence::annulus_half_width(16, 1.5) - 16f64.powf(-1.0 / 3.0)).abs() < 1e-12);
    assert!((incidence::annulus_half_width(16, 1.5) - 0.3969).abs() < 1e-4);
}

#[test]
fn incidence_dominates_area_for_each_q() {
    let out = run("discrete-incidence", &[("qs", "4,8,16"), ("n", "1024")], 2);
    let area = out.report.series("area_over_q2").unwrap();
    let inc = out.report.series("incidence_over_q2").unwrap();
    for (a, i) in area.points.iter().zip(&inc.points) {
        assert!(i.1 >= a.1);
    }
}

#[test]
fn coincident_pair_is_tabulated_but_not_judged() {
    let out = run("intersection-hypothesis", &[("samples", "200000"), ("deltas", "0.04,0.02"), ("separations", "1")], 1);
    let co = out.report.series("sphere_coincident_ratio_sep0").unwrap();
    let band = out.report.series("sphere_coincident_intersection_sep0").unwrap();
    for (r, b) in co.points.iter().zip(&band.points) {
        assert!((r.1 - b.1 / b.0).abs() <= 1e-12 * r.1);
    }
    let judged = out.report.verdict("sphere_ratio_bounded").unwrap().measured.unwrap();
    assert!(out.report.series("sphere_ratio_sep1").unwrap().points.iter().any(|p| p.1 == judged));
    assert!(out.report.verdicts.iter().all(|v| !v.name.contains("coincident")));
}

#[test]
fn low_confidence_withholds_verdicts() {
    let out = run("intersection-hypothesis", &[("samples", "1000"), ("deltas", "0.02,0.01"), ("separations", "1")], 1);
    assert!(out.report.verdicts.iter().all(|v| v.outcome == Outcome::Withheld));
    assert!(out.report.passed());
}

#[test]
fn depth_two_run_bound() {
    let f = fat_cantor(2).unwrap();
    assert_eq!(f.len(), 4);
    let h = 4.0 / 1024.0;
    assert!((interior::run_bound(&f, 4.0, h) - (2.0 * 0.15625 + 4.0 * h)).abs() < 1e-15);
}

#[test]
fn rows_beyond_unit_height_are_empty() {
    let g = GridSpec::square(-1.5, 2.5, 1024).unwrap();
    let delta = 0.01;
    let r = interior::fat_cantor_circles(&fat_cantor(3).unwrap(), delta, &g).unwrap();
    assert_eq!(max_inscribed_interval_within(&r, 0, 1.0 + delta + 1e-9, f64::INFINITY).unwrap(), 0.0);
    assert_eq!(max_inscribed_interval_within(&r, 0, f64::NEG_INFINITY, -1.0 - delta - 1e-9).unwrap(), 0.0);
    assert!(r.area() >= 0.3);
}

#[test]
fn kakeya_stage_zero_is_the_base_triangle() {
    let out = run("kakeya-compression", &[("stages", "0,1"), ("ratio_stage", "1"), ("n", "2048")], 0);
    let a0 = out.report.series("area_by_stage").unwrap().points[0].1;
    assert!((a0 - 0.5).abs() < 0.005, "{a0}");
}

#[test]
fn bourgain_examples() {
    assert_eq!(bourgain_curve_point(1.0, 2.0, 0.5), [-1.25, -2.5, 0.5]);
    assert_eq!(bourgain::residual(bourgain_curve_point(1.0, 2.0, 0.5)), 0.0);
    let p = bourgain_curve_point(0.7, -3.0, 0.0);
    assert_eq!(p, [0.0, 3.0, 0.0]);
    assert_eq!(bourgain::residual(p), 0.0);
    let out = run("bourgain-compression", &[], 0);
    assert_eq!(out.report.series("residual_by_sample").unwrap().points.len(), 10_000);
    assert!(out.report.passed());
}

#[test]
fn transversality_examples() {
    let h = 1e-5;
    assert!((numeric_jacobian(Curve::Line, 0.3, 0.0, h) - 1.0).abs() < 1e-9);
    assert!(numeric_jacobian(Curve::Line, 0.3, PI / 2.0, h) <= 1e-3);
    assert!((numeric_jacobian(Curve::Line, 0.3, PI / 3.0, h) - 0.5).abs() <= 1e-3);
    assert!((analytic_jacobian(Curve::Arc, 0.4, 0.4) - 1.0).abs() < 1e-15);
    for curve in ["line", "arc"] {
        assert!(run("transversality", &[("curve", curve)], 0).report.passed(), "{curve}");
    }
}

#[test]
fn forced_threshold_fails() {
    let out = run("intersection-hypothesis", &[("samples", "200000"), ("deltas", "0.04,0.02"), ("separations", "1"), ("c_pass", "0.001")], 0);
    assert_eq!(out.report.verdict("sphere_ratio_bounded").unwrap().outcome, Outcome::Fail);
    assert!(!out.report.passed());
}

#[test]
fn bad_overrides_are_rejected() {
    let o = |k: &str, v: &str| vec![(k.to_string(), v.to_string())];
    assert!(matches!(configs_for("all", &o("bogus", "1")), Err(Error::UnknownKey { .. })));
    assert!(matches!(configs_for("transversality", &o("curve", "spiral")), Err(Error::BadValue { .. })));
    assert!(matches!(configs_for("nope", &[]), Err(Error::UnknownKey { .. })));
    let bad = configs_for("kakeya-compression", &o("stages", "1,2")).unwrap();
    assert!(bad[0].run(0).is_err());
}
