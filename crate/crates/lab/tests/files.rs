use gmt_core::fractal::{cantor_middle_thirds, Aabb, PointSet};
use gmt_core::raster::{GridRaster, GridSpec};
use gmt_core::spectral::{fit_lp_slope, GriddedDensity};
use gmt_lab::files::*;

fn lines(path: &std::path::Path) -> Vec<String> {
    std::fs::read_to_string(path).unwrap().lines().map(String::from).collect()
}

#[test]
fn point_and_interval_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let p = PointSet::weighted(2, &[vec![0.5, 0.25], vec![1.0, 0.0]], vec![0.75, 0.25], Aabb::cube(2, 0.0, 1.0)).unwrap();
    let path = tmp.path().join("p.csv");
    write_point_set_csv(&path, &p).unwrap();
    assert_eq!(lines(&path), ["x0,x1,weight", "0.5,0.25,0.75", "1,0,0.25"]);

    let c = cantor_middle_thirds(1).unwrap();
    let path = tmp.path().join("c.csv");
    write_interval_set_csv(&path, &c).unwrap();
    let l = lines(&path);
    assert_eq!(l[0], "a,b");
    assert_eq!(l.len(), 3);
    assert_eq!(l[1].split(',').map(|v| v.parse::<f64>().unwrap()).collect::<Vec<_>>(), [0.0, 1.0 / 3.0]);
}

#[test]
fn decay_fit_csv_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let norms: Vec<(u32, f64)> = (1..=5).map(|j| (j, (0.5 * j as f64).exp2())).collect();
    let fit = fit_lp_slope(&norms, 1..=5).unwrap();
    let path = tmp.path().join("d.csv");
    write_decay_fit_csv(&path, &fit).unwrap();
    let l = lines(&path);
    assert_eq!(l[0], "level,norm,fitted_value");
    assert_eq!(l.len(), 6);
    for row in &l[1..] {
        let v: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((v[1] - v[2]).abs() <= 1e-9 * v[1]);
    }
}

#[test]
fn raster_pgm_has_highest_row_on_top() {
    let tmp = tempfile::tempdir().unwrap();
    let g = GridSpec::square(0.0, 1.0, 16).unwrap();
    let r = GridRaster::from_predicate(&g, |p| p[1] > 0.75);
    let path = tmp.path().join("r.pgm");
    write_raster_pgm(&path, &r).unwrap();
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P5"));
    let (w, h, px) = read_pgm(&path).unwrap();
    assert_eq!((w, h), (16, 16));
    assert!(px[..4 * 16].iter().all(|&b| b == 255));
    assert!(px[4 * 16..].iter().all(|&b| b == 0));

    let g3 = GridSpec::new(Aabb::cube(3, 0.0, 1.0), 16).unwrap();
    assert!(write_raster_pgm(&tmp.path().join("x.pgm"), &GridRaster::empty(&g3)).is_err());
}

#[test]
fn spectrum_pgm_centres_zero_frequency() {
    let tmp = tempfile::tempdir().unwrap();
    let g = GridSpec::square(0.0, 1.0, 16).unwrap();
    let d = GriddedDensity::new(g.clone(), vec![1.0; g.cell_count()]).unwrap();
    let path = tmp.path().join("s.pgm");
    write_spectrum_pgm(&path, &d).unwrap();
    let (w, _, px) = read_pgm(&path).unwrap();
    let peak = px.iter().position(|&b| b == 255).unwrap();
    assert_eq!((peak % w, w - 1 - peak / w), (8, 8));
    assert_eq!(px.iter().filter(|&&b| b > 0).count(), 1);
}
