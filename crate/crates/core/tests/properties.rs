use proptest::prelude::*;

use gmt_core::fractal::{cantor_middle_thirds, fat_cantor, perron_tree, product_point_cloud, separated_lattice, Aabb};
use gmt_core::phase::{PhaseKind, PhaseSpec};
use gmt_core::raster::*;
use gmt_core::spectral::*;

fn grid() -> GridSpec {
    GridSpec::square(0.0, 1.0, 96).unwrap()
}

fn scatter(seed: u64, density: u64) -> GridRaster {
    scatter_on(&grid(), seed, density)
}

fn scatter_on(g: &GridSpec, seed: u64, density: u64) -> GridRaster {
    GridRaster::from_predicate(g, move |c| {
        let mut z = seed ^ (c[0].to_bits().wrapping_mul(0x9E37_79B9_7F4A_7C15)) ^ c[1].to_bits().rotate_left(29);
        z = (z ^ (z >> 31)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 29)).wrapping_mul(0x94D0_49BB_1331_11EB);
        (z ^ (z >> 32)) % 100 < density
    })
}

fn shape() -> impl Strategy<Value = Shape> {
    let p = || (0.0..1.0f64, 0.0..1.0f64).prop_map(|(x, y)| [x, y]);
    prop_oneof![
        (p(), 0.05..0.6f64).prop_map(|(center, radius)| Shape::Circle { center, radius }),
        (p(), 0.05..0.6f64).prop_map(|(center, half_side)| Shape::SquareBoundary { center, half_side }),
        (p(), p()).prop_map(|(a, b)| Shape::Segment { a, b }),
        (p(), p(), p()).prop_map(|(a, b, c)| Shape::Triangle { vertices: [a, b, c] }),
        (p(), 0.1..0.5f64, 0.0..0.05f64)
            .prop_map(|(center, radius, half_width)| Shape::Annulus { center, radius, half_width }),
        (0.0..0.5f64, 0.0..0.3f64, 0.0..0.2f64)
            .prop_map(|(x0, w, y0)| Shape::SweptCircle { x: [x0, x0 + w], y: [y0, y0 + 0.1], radius: 0.4 }),
        (0.0..0.5f64, 0.0..0.3f64, 0.0..0.2f64)
            .prop_map(|(x0, w, y0)| Shape::SweptSquare { x: [x0, x0 + w], y: [y0, y0], half_side: 0.3 }),
    ]
}

proptest! {
    #[test]
    fn inclusion_exclusion_is_exact(a in any::<u64>(), b in any::<u64>(), da in 1u64..99, db in 1u64..99) {
        let (ra, rb) = (scatter(a, da), scatter(b, db));
        let mut u = ra.clone();
        u.union_with(&rb).unwrap();
        let i = ra.intersection(&rb).unwrap();
        prop_assert_eq!(u.filled_count() + i.filled_count(), ra.filled_count() + rb.filled_count());
        prop_assert!(u.count_is_consistent() && i.count_is_consistent());
        prop_assert_eq!(intersection_area(&ra, &rb).unwrap(), i.area());
    }

    #[test]
    fn union_is_commutative_associative_idempotent(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (ra, rb, rc) = (scatter(a, 30), scatter(b, 30), scatter(c, 30));
        let ab = union_raster(&[ra.clone(), rb.clone()]).unwrap();
        let ba = union_raster(&[rb.clone(), ra.clone()]).unwrap();
        prop_assert_eq!(ab.to_cells(), ba.to_cells());
        let left = union_raster(&[ab.clone(), rc.clone()]).unwrap();
        let right = union_raster(&[ra.clone(), union_raster(&[rb, rc]).unwrap()]).unwrap();
        prop_assert_eq!(left.to_cells(), right.to_cells());
        prop_assert_eq!(union_raster(&[ra.clone(), ra.clone()]).unwrap().to_cells(), ra.to_cells());
        prop_assert!(ab.area() >= ra.area());
    }

    #[test]
    fn shape_bands_grow_with_delta(s in shape(), d1 in 0.003..0.05f64, extra in 0.0..0.05f64) {
        let g = grid();
        let small = rasterize_shapes_band(&[s], d1, &g).unwrap();
        let large = rasterize_shapes_band(&[s], d1 + extra, &g).unwrap();
        prop_assert!(small.is_subset_of(&large).unwrap());
        prop_assert_eq!(shape_band_cells(&s, d1, &g).unwrap(), small.filled_count());
    }

    #[test]
    fn phase_bands_grow_with_delta(x in 0.2..0.8f64, y in 0.2..0.8f64, d1 in 0.003..0.05f64, extra in 0.0..0.05f64) {
        let g = grid();
        let phase = PhaseSpec::new(PhaseKind::UnitDistance, 2).unwrap();
        let band = |d| rasterize_band(BandSource::Level { phase: &phase, center: &[x, y], level: 0.3 }, d, &g).unwrap();
        prop_assert!(band(d1).is_subset_of(&band(d1 + extra)).unwrap());
    }

    #[test]
    fn parallel_union_matches_sequential(shapes in prop::collection::vec(shape(), 0..24), delta in 0.003..0.03f64) {
        let g = grid();
        let a = rasterize_shapes_band(&shapes, delta, &g).unwrap();
        let b = rasterize_shapes_band_sequential(&shapes, delta, &g).unwrap();
        prop_assert_eq!(a.to_cells(), b.to_cells());
    }

    #[test]
    fn lattice_is_separated(seed in any::<u64>(), q in 2usize..12) {
        let p = separated_lattice(q, seed).unwrap();
        prop_assert_eq!(p.len(), q * q);
        prop_assert!(p.min_pairwise_distance() >= 0.5);
    }

    #[test]
    fn cloud_weights_are_normalized_and_reproducible(seed in any::<u64>(), depth in 0u32..5, spc in 1usize..4) {
        let c = cantor_middle_thirds(depth).unwrap();
        let a = product_point_cloud(&c, &c, spc, seed).unwrap();
        let b = product_point_cloud(&c, &c, spc, seed).unwrap();
        prop_assert!((a.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mollifier_preserves_mass(seed in any::<u64>(), eps in 0.04..0.3f64) {
        let g = GridSpec::square(0.0, 1.0, 64).unwrap();
        let r = scatter_on(&g, seed, 20);
        let d = GriddedDensity::new(g.clone(), r.to_cells().iter().map(|&v| v as f64).collect()).unwrap();
        let m = mollify(&d, eps).unwrap();
        prop_assert!((m.total_mass() - d.total_mass()).abs() <= 1e-6 * d.total_mass());
    }

    #[test]
    fn energy_windows_conserve_l2(seed in any::<u64>(), density in 1u64..99) {
        let g = GridSpec::square(0.0, 1.0, 64).unwrap();
        let values: Vec<f64> = scatter_on(&g, seed, density).to_cells().iter().map(|&v| v as f64).collect();
        prop_assume!(values.iter().any(|v| *v > 0.0));
        let d = GriddedDensity::new(g, values).unwrap();
        let norms = lp_projection_norms(&d, nyquist_level(64), WindowFamily::Energy).unwrap();
        let sum: f64 = norms.iter().map(|(_, v)| v * v).sum();
        let total = d.l2_norm().powi(2);
        prop_assert!(sum >= 0.98 * total && sum <= 1.02 * total);
    }

    #[test]
    fn decay_fits_are_deterministic(seed in any::<u64>()) {
        let freqs = [4.0, 8.0, 16.0, 32.0];
        let a = surface_fourier_decay(DecayMode::Circle2d, &freqs, 16, seed).unwrap();
        let b = surface_fourier_decay(DecayMode::Circle2d, &freqs, 16, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn interval_lengths_match_closed_forms() {
    for depth in 0..=20u32 {
        let c = cantor_middle_thirds(depth).unwrap();
        assert!((c.total_length() - (2.0f64 / 3.0).powi(depth as i32)).abs() <= 1e-12);
        assert_eq!(c.len(), 1 << depth);
        let f = fat_cantor(depth).unwrap();
        assert!((f.total_length() - (1.0 - 0.5 * (1.0 - 0.5f64.powi(depth as i32)))).abs() <= 1e-12);
        for w in f.intervals().windows(2) {
            assert!(w[0].1 < w[1].0);
        }
    }
}

#[test]
fn perron_trees_cover_directions_and_shrink() {
    let bounds = Aabb::new(vec![-0.6, -0.05], vec![1.1, 1.65]).unwrap();
    let g = GridSpec::new(bounds, 1024).unwrap();
    let mut last = f64::INFINITY;
    for stage in 0..=6 {
        let tree = perron_tree(stage, 1.0).unwrap();
        let (lo, hi) = tree.bounds();
        assert!(lo[0] >= -0.6 && hi[0] <= 1.1);
        let mut slopes = Vec::new();
        for i in 0..tree.direction_count {
            let (a, b) = tree.direction_segment(i);
            assert!((b[1] - a[1] - 1.0).abs() < 1e-12);
            for k in 0..100 {
                let s = k as f64 / 99.0;
                assert!(tree.contains([a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]));
            }
            slopes.push(b[0] - a[0]);
        }
        slopes.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
        assert_eq!(slopes.len(), 1 << stage);
        let shapes: Vec<Shape> = tree.triangles.iter().map(|t| Shape::Triangle { vertices: t.vertices }).collect();
        let area = rasterize_shapes_fill(&shapes, &g).unwrap().area();
        assert!(area <= last + 1e-12, "stage {stage}: {area} > {last}");
        last = area;
    }
}
