use std::f64::consts::PI;

use gmt_core::fractal::{cantor_middle_thirds, fat_cantor, perron_tree, product_point_cloud, Aabb};
use gmt_core::phase::{PhaseKind, PhaseSpec};
use gmt_core::raster::*;

fn grid(lo: f64, hi: f64, n: usize) -> GridSpec {
    GridSpec::square(lo, hi, n).unwrap()
}

fn annulus_band(g: &GridSpec) -> GridRaster {
    rasterize_shapes_band(&[Shape::Circle { center: [0.0, 0.0], radius: 1.0 }], 0.1, g).unwrap()
}

#[test]
fn monte_carlo_agrees_with_grid_on_annulus() {
    let g = grid(-2.0, 2.0, 2048);
    let on_grid = annulus_band(&g).area();
    let phase = PhaseSpec::new(PhaseKind::UnitDistance, 2).unwrap();
    let band = LevelBand::new(phase, vec![0.0, 0.0], 1.0).unwrap();
    let mc = monte_carlo_measure(&[band], 0.1, &Aabb::cube(2, -2.0, 2.0), 1_000_000, 4).unwrap();
    assert!(!mc.low_confidence);
    assert!((mc.estimate - on_grid).abs() <= 3.0 * mc.std_error, "{} ± {} vs {on_grid}", mc.estimate, mc.std_error);
}

#[test]
fn paraboloid_pair_ratio_is_large() {
    let phase = PhaseSpec::new(PhaseKind::TranslatedParaboloid, 3).unwrap();
    let a = LevelBand::new(phase.clone(), vec![0.0; 3], 1.0).unwrap();
    let b = LevelBand::new(phase, vec![0.0, 0.0, 1.0], 0.0).unwrap();
    let bounds = Aabb::new(vec![-1.0, -1.0, 0.9], vec![1.0, 1.0, 3.1]).unwrap();
    let (delta, sep) = (0.02, 1.0);
    let mc = monte_carlo_intersection(&a, &b, delta, &bounds, 1_000_000, 2).unwrap();
    let ratio = mc.estimate * (delta + sep) / (delta * delta);
    assert!(ratio >= 40.0, "ratio {ratio}");
}

#[test]
fn unit_sphere_pair_ratio_is_bounded() {
    let phase = PhaseSpec::new(PhaseKind::DiffeoDistance, 3).unwrap().with_kappa(0.0).unwrap();
    let a = LevelBand::new(phase.clone(), vec![0.0; 3], 1.0).unwrap();
    let b = LevelBand::new(phase, vec![0.0, 0.0, 1.0], 1.0).unwrap();
    let bounds = Aabb::new(vec![-1.02, -1.02, -0.02], vec![1.02, 1.02, 1.02]).unwrap();
    let (delta, sep) = (0.02, 1.0);
    let mc = monte_carlo_intersection(&a, &b, delta, &bounds, 2_000_000, 3).unwrap();
    assert!(!mc.low_confidence);
    let ratio = mc.estimate * (delta + sep) / (delta * delta);
    assert!(ratio <= 30.0, "ratio {ratio}");
    // ring of radius √3/2 and cross-section (2δ)²/sin 60°
    let oracle = 2.0 * PI * 0.75f64.sqrt() * (2.0 * delta).powi(2) / (PI / 3.0).sin();
    assert!((mc.estimate - oracle).abs() <= 0.1 * oracle, "{} vs {oracle}", mc.estimate);
}

#[test]
fn monte_carlo_is_reproducible_and_flags_tiny_runs() {
    let phase = PhaseSpec::new(PhaseKind::UnitDistance, 3).unwrap();
    let band = LevelBand::new(phase, vec![0.0; 3], 1.0).unwrap();
    let bx = Aabb::cube(3, -1.2, 1.2);
    let a = monte_carlo_measure(std::slice::from_ref(&band), 0.05, &bx, 200_000, 17).unwrap();
    let b = monte_carlo_measure(std::slice::from_ref(&band), 0.05, &bx, 200_000, 17).unwrap();
    assert_eq!(a, b);
    assert!(monte_carlo_measure(&[band], 0.05, &bx, 10, 17).unwrap().low_confidence);
}

#[test]
fn annulus_refinement_converges() {
    let exact = PI * (1.1f64.powi(2) - 0.9f64.powi(2));
    let grids: Vec<GridSpec> = [256, 512, 1024].iter().map(|&n| grid(-2.0, 2.0, n)).collect();
    let steps = refinement_series(&grids, |g| Ok(annulus_band(g))).unwrap();
    for (step, tol) in steps.iter().zip([0.05, 0.02, 0.01]) {
        assert!((step.area - exact).abs() <= tol * exact, "n={} area {}", step.cells_per_axis, step.area);
    }
    assert_eq!(steps[0].change, 0.0);
}

#[test]
fn offset_square_refinement_approaches_polygon_value() {
    let delta = 0.05;
    let exact = 16.0 * delta - (4.0 - PI) * delta * delta;
    let grids: Vec<GridSpec> = [512, 1024, 2048, 4096].iter().map(|&n| grid(-2.0, 2.0, n)).collect();
    let square = [Shape::SquareBoundary { center: [0.0, 0.0], half_side: 1.0 }];
    let steps = refinement_series(&grids, |g| rasterize_shapes_band(&square, delta, g)).unwrap();
    for (s, g) in steps.iter().zip(&grids) {
        let perimeter_cells = 8.0 * g.cell_size(0);
        assert!((s.area - exact).abs() <= perimeter_cells, "n={} area {}", s.cells_per_axis, s.area);
    }
    assert!((steps[3].area - exact).abs() <= 0.01 * exact);
}

#[test]
fn empty_family_refines_to_zero() {
    let grids: Vec<GridSpec> = [64, 128].iter().map(|&n| grid(0.0, 1.0, n)).collect();
    let steps = refinement_series(&grids, |g| rasterize_shapes_band(&[], 0.05, g)).unwrap();
    assert!(steps.iter().all(|s| s.area == 0.0 && s.change == 0.0));
}

fn swept_circle_distance(p: [f64; 2], x: [f64; 2], y: [f64; 2], r: f64) -> f64 {
    let dx = (x[0] - p[0]).max(p[0] - x[1]).max(0.0);
    let dy = (y[0] - p[1]).max(p[1] - y[1]).max(0.0);
    let near = dx.hypot(dy);
    let far = (p[0] - x[0]).abs().max((p[0] - x[1]).abs()).hypot((p[1] - y[0]).abs().max((p[1] - y[1]).abs()));
    if near <= r && r <= far {
        0.0
    } else {
        (near - r).abs().min((far - r).abs())
    }
}

fn square_boundary_distance(p: [f64; 2], c: [f64; 2], h: f64) -> f64 {
    let ax = (p[0] - c[0]).abs();
    let ay = (p[1] - c[1]).abs();
    if ax <= h && ay <= h {
        (h - ax).min(h - ay)
    } else {
        (ax - h).max(0.0).hypot((ay - h).max(0.0))
    }
}

#[test]
fn swept_circle_matches_distance_oracle() {
    let g = grid(-1.5, 2.0, 512);
    let (x, y, r, delta) = ([0.2, 0.5], [-0.05, 0.1], 1.0, 0.02);
    let raster = rasterize_shapes_band(&[Shape::SweptCircle { x, y, radius: r }], delta, &g).unwrap();
    let oracle = GridRaster::from_predicate(&g, |c| swept_circle_distance([c[0], c[1]], x, y, r) <= delta);
    let diff = raster.filled_count().abs_diff(oracle.filled_count())
        + 2 * (oracle.filled_count() - raster.intersection(&oracle).unwrap().filled_count());
    assert!(diff as f64 <= 1e-3 * oracle.filled_count() as f64, "{diff} of {}", oracle.filled_count());
}

#[test]
fn swept_square_matches_sampled_oracle() {
    let g = grid(-1.5, 2.0, 512);
    let (x, y, h, delta) = ([0.2, 0.5], [0.0, 0.1], 1.0, 0.02);
    let raster = rasterize_shapes_band(&[Shape::SweptSquare { x, y, half_side: h }], delta, &g).unwrap();
    let centers: Vec<[f64; 2]> = (0..=150)
        .flat_map(|i| (0..=25).map(move |j| [x[0] + 0.3 * i as f64 / 150.0, y[0] + 0.1 * j as f64 / 25.0]))
        .collect();
    let oracle =
        GridRaster::from_predicate(&g, |p| centers.iter().any(|&c| square_boundary_distance([p[0], p[1]], c, h) <= delta));
    assert!(oracle.is_subset_of(&raster).unwrap());
    let extra = raster.filled_count() - oracle.filled_count();
    assert!(extra as f64 <= 0.01 * oracle.filled_count() as f64, "{extra} extra cells");
}

#[test]
fn parallel_and_sequential_unions_agree_bitwise() {
    let g = grid(-1.5, 2.5, 1024);
    let c = cantor_middle_thirds(4).unwrap();
    let cloud = product_point_cloud(&c, &c, 1, 8).unwrap();
    let shapes: Vec<Shape> = cloud.points().map(|p| Shape::Circle { center: [p[0], p[1]], radius: 1.0 }).collect();
    let a = rasterize_shapes_band(&shapes, 0.01, &g).unwrap();
    let b = rasterize_shapes_band_sequential(&shapes, 0.01, &g).unwrap();
    assert_eq!(a.to_cells(), b.to_cells());
    assert_eq!(a.filled_count(), b.filled_count());
}

#[test]
fn cantor_product_circle_union_is_fat() {
    let g = grid(-2.5, 2.5, 2048);
    let c = cantor_middle_thirds(6).unwrap();
    let cloud = product_point_cloud(&c, &c, 1, 0).unwrap();
    assert_eq!(cloud.len(), 4096);
    let shapes: Vec<Shape> = cloud.points().map(|p| Shape::Circle { center: [p[0], p[1]], radius: 1.0 }).collect();
    assert!(rasterize_shapes_band(&shapes, 0.01, &g).unwrap().area() >= 0.5);
}

#[test]
fn perron_stage_five_fill_area() {
    let tree = perron_tree(5, 1.0).unwrap();
    let (lo, hi) = tree.bounds();
    let side = (hi[0] - lo[0]).max(hi[1] - lo[1]) + 0.1;
    let bounds = Aabb::new(vec![lo[0] - 0.05, lo[1] - 0.05], vec![lo[0] - 0.05 + side, lo[1] - 0.05 + side]).unwrap();
    let g = GridSpec::new(bounds, 2048).unwrap();
    let shapes: Vec<Shape> = tree.triangles.iter().map(|t| Shape::Triangle { vertices: t.vertices }).collect();
    let area = rasterize_shapes_fill(&shapes, &g).unwrap().area();
    assert!(area <= 0.35 * tree.base_area(), "area {area}");
    assert!(area <= 0.175);
}

#[test]
fn fat_cantor_rows_respect_two_translate_bound_where_resolved() {
    let g = grid(-1.5, 2.5, 4096);
    let h = g.cell_size(0);
    let f = fat_cantor(4).unwrap();
    let shapes: Vec<Shape> =
        f.intervals().iter().map(|&(a, b)| Shape::SweptCircle { x: [a, b], y: [0.0, 0.0], radius: 1.0 }).collect();
    let r = rasterize_shapes_band(&shapes, 0.25 * h, &g).unwrap();
    let run = max_inscribed_interval_within(&r, 0, -0.86, 0.86).unwrap();
    assert!(run <= 2.0 * f.max_length() + 4.0 * h, "run {run}");
    let above = max_inscribed_interval_within(&r, 0, 1.0 + 0.25 * h + h, f64::INFINITY).unwrap();
    assert_eq!(above, 0.0);
}
