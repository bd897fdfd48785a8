use gmt_core::fractal::{cantor_middle_thirds, product_point_cloud, Aabb, IntervalSet, PointSet};
use gmt_core::raster::{rasterize_shapes_band, GridSpec, Shape};
use gmt_core::spectral::*;

const LOG3_2: f64 = 0.630_929_753_571_457_4;

fn circle_family_density(vertical: &IntervalSet, grid: &GridSpec) -> GriddedDensity {
    let c = cantor_middle_thirds(6).unwrap();
    let cloud = product_point_cloud(&c, vertical, 1, 3).unwrap();
    incidence_density(&IncidenceFamily::Circles, &cloud, &[1.0], grid.min_cell_size(), grid).unwrap()
}

fn ratios(norms: &[(f64, f64)]) -> Vec<f64> {
    norms.windows(2).map(|w| w[1].1 / w[0].1).collect()
}

#[test]
fn cantor_product_lp_slope() {
    let g = GridSpec::square(0.0, 1.0, 2048).unwrap();
    let c = cantor_middle_thirds(6).unwrap();
    let d = product_measure_density(&c, &c, &g).unwrap();
    assert!((d.total_mass() - 1.0).abs() < 1e-12);
    let norms = lp_projection_norms(&d, 10, WindowFamily::Partition).unwrap();
    let fit = fit_lp_slope(&norms, 3..=8).unwrap();
    let expected = (2.0 - 2.0 * LOG3_2) / 2.0;
    assert!((fit.slope - expected).abs() <= 0.10, "slope {}", fit.slope);
}

#[test]
fn dirac_lp_slope() {
    let g = GridSpec::square(0.0, 1.0, 1024).unwrap();
    let p = PointSet::uniform(2, &[vec![0.5, 0.5]], Aabb::cube(2, 0.0, 1.0)).unwrap();
    let d = grid_density_from_points(&p, &g).unwrap();
    let j_max = nyquist_level(1024);
    let norms = lp_projection_norms(&d, j_max, WindowFamily::Partition).unwrap();
    let fit = fit_lp_slope(&norms, 2..=j_max - 1).unwrap();
    assert!((fit.slope - 1.0).abs() <= 0.15, "slope {}", fit.slope);
}

#[test]
fn cloud_deposit_counts_distinct_cells() {
    let g = GridSpec::square(0.0, 1.0, 1024).unwrap();
    let c = cantor_middle_thirds(6).unwrap();
    let cloud = product_point_cloud(&c, &c, 1, 11).unwrap();
    let d = grid_density_from_points(&cloud, &g).unwrap();
    let mut cells: Vec<(usize, usize)> =
        cloud.points().map(|p| (g.index_of(0, p[0]).unwrap(), g.index_of(1, p[1]).unwrap())).collect();
    cells.sort_unstable();
    cells.dedup();
    assert_eq!(d.occupied_cells(), cells.len());
    assert!((d.total_mass() - 1.0).abs() < 1e-12);
}

#[test]
fn energy_windows_satisfy_parseval_on_cantor_measure() {
    let g = GridSpec::square(0.0, 1.0, 512).unwrap();
    let c = cantor_middle_thirds(5).unwrap();
    let d = product_measure_density(&c, &c, &g).unwrap();
    let norms = lp_projection_norms(&d, nyquist_level(512), WindowFamily::Energy).unwrap();
    let sum: f64 = norms.iter().map(|(_, v)| v * v).sum();
    let total = d.l2_norm().powi(2);
    assert!(sum >= 0.98 * total && sum <= 1.02 * total, "{sum} vs {total}");
}

#[test]
fn incidence_support_lies_in_union() {
    let g = GridSpec::square(-1.5, 2.5, 1024).unwrap();
    let c = cantor_middle_thirds(4).unwrap();
    let cloud = product_point_cloud(&c, &c, 1, 5).unwrap();
    let delta = 2.0 * g.min_cell_size();
    let nu = incidence_density(&IncidenceFamily::Circles, &cloud, &[1.0], delta, &g).unwrap();
    let shapes: Vec<Shape> = cloud.points().map(|p| Shape::Circle { center: [p[0], p[1]], radius: 1.0 }).collect();
    let union = rasterize_shapes_band(&shapes, delta, &g).unwrap();
    let n = g.cells_per_axis();
    for (k, v) in nu.values().iter().enumerate() {
        if *v > 0.0 {
            assert!(union.get(&[k % n, k / n]), "cell {k} carries mass outside the union");
        }
    }
    assert_eq!(nu.dropped_centers(), 0);
}

#[test]
fn far_apart_centers_split_mass() {
    let g = GridSpec::square(-4.0, 4.0, 256).unwrap();
    let bounds = Aabb::cube(2, -4.0, 4.0);
    let p = PointSet::uniform(2, &[vec![-2.0, 0.0], vec![2.0, 0.0]], bounds).unwrap();
    let nu = incidence_density(&IncidenceFamily::Circles, &p, &[1.0], 0.1, &g).unwrap();
    let n = g.cells_per_axis();
    let left: f64 = nu.values().iter().enumerate().filter(|(k, _)| k % n < n / 2).map(|(_, v)| v).sum::<f64>()
        * g.cell_volume();
    assert!((left - 0.5).abs() < 1e-12);
    assert!((nu.total_mass() - 1.0).abs() < 1e-12);
}

#[test]
fn mollified_uniform_density_is_constant() {
    let g = GridSpec::square(0.0, 1.0, 256).unwrap();
    let d = GriddedDensity::new(g.clone(), vec![1.0; g.cell_count()]).unwrap();
    let norms = mollified_l2(&d, &[0.04, 0.02, 0.01]).unwrap();
    for (_, v) in &norms {
        assert!((v - 1.0).abs() < 0.01);
    }
}

#[test]
fn mollified_cantor_product_circles_stay_bounded() {
    let g = GridSpec::square(-1.5, 2.5, 2048).unwrap();
    let nu = circle_family_density(&cantor_middle_thirds(6).unwrap(), &g);
    let norms = mollified_l2(&nu, &[0.04, 0.02, 0.01]).unwrap();
    for r in ratios(&norms) {
        assert!(r <= 1.25, "ratio {r}");
    }
}

#[test]
fn mollified_cantor_line_circles_blow_up() {
    let g = GridSpec::square(-1.5, 2.5, 2048).unwrap();
    let nu = circle_family_density(&IntervalSet::singleton(0.5).unwrap(), &g);
    let norms = mollified_l2(&nu, &[0.04, 0.02, 0.01]).unwrap();
    let r = ratios(&norms);
    assert!(r[0] >= 1.15, "first halving {}", r[0]);
    let rate = ((1.0 - LOG3_2) / 2.0).exp2();
    for v in &r {
        assert!(*v >= 0.99 * rate, "ratio {v} vs dimension-count rate {rate}");
    }
}

#[test]
fn mollified_mass_is_preserved() {
    let g = GridSpec::square(-1.5, 2.5, 512).unwrap();
    let c = cantor_middle_thirds(4).unwrap();
    let cloud = product_point_cloud(&c, &c, 1, 1).unwrap();
    let nu = incidence_density(&IncidenceFamily::Circles, &cloud, &[1.0], g.min_cell_size(), &g).unwrap();
    for eps in [0.02, 0.05, 0.2] {
        let m = mollify(&nu, eps).unwrap();
        assert!((m.total_mass() - nu.total_mass()).abs() <= 1e-6 * nu.total_mass());
    }
    assert!(mollify(&nu, g.min_cell_size()).is_err());
}

#[test]
fn circle_and_curve_decay_slopes() {
    let freqs: Vec<f64> = (3..=9).map(|k| (1u32 << k) as f64).collect();
    let circle = surface_fourier_decay(DecayMode::Circle2d, &freqs, 1024, 0).unwrap();
    assert!((circle.slope + 0.5).abs() <= 0.07, "circle {}", circle.slope);
    let curve = surface_fourier_decay(DecayMode::Curve3d, &freqs, 1024, 0).unwrap();
    assert!((curve.slope + 1.0 / 3.0).abs() <= 0.07, "curve {}", curve.slope);
}

#[test]
fn decay_fit_is_deterministic_and_needs_octaves() {
    let freqs = [0.0, 8.0, 16.0, 32.0, 64.0];
    let a = surface_fourier_decay(DecayMode::Circle2d, &freqs, 64, 9).unwrap();
    let b = surface_fourier_decay(DecayMode::Circle2d, &freqs, 64, 9).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.norms.len(), 4);
    assert!(surface_fourier_decay(DecayMode::Circle2d, &[8.0, 16.0], 64, 0).is_err());
    assert!(surface_fourier_decay(DecayMode::Circle2d, &freqs, 8, 0).is_err());
}
