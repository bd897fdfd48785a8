//! Artifact formats.
//!
//! * Series CSV: header `x_label,y_label`, one row per point, LF endings,
//!   floats in shortest round-trip form.
//! * Point set CSV: `x0,…,x{d-1},weight`. Interval set CSV: `a,b`.
//! * Decay fit CSV: `level,norm,fitted_value`.
//! * Raster PGM: binary P5, one byte per cell, 255 filled, 0 empty; the top
//!   image row is the highest `y`.
//! * Spectrum PGM: `|F|` with zero frequency centred, scaled as
//!   `255 · log10(1 + 9999 · |F| / max|F|) / 4`.
//! * Report JSON: the serialized `ExperimentReport`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use gmt_core::fractal::{IntervalSet, PointSet};
use gmt_core::raster::GridRaster;
use gmt_core::scenarios::{ExperimentReport, Series};
use gmt_core::spectral::{DecayFit, GriddedDensity};
use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder};

use crate::{LabError, Result};

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| csv_error(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> LabError {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => LabError::io(path, source),
        other => LabError::Format(format!("{}: {other:?}", path.display())),
    }
}

fn write_rows<I>(path: &Path, header: &[String], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut w = csv_writer(path)?;
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.write_record(row.iter().map(|v| format!("{v}"))).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| LabError::io(path, e))
}

pub fn write_series_csv(path: &Path, series: &Series) -> Result<()> {
    write_rows(path, &[series.x_label.clone(), series.y_label.clone()], series.points.iter().map(|&(x, y)| vec![x, y]))
}

pub fn read_series_csv(path: &Path) -> Result<(Vec<String>, Vec<(f64, f64)>)> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let header = r.headers().map_err(|e| csv_error(path, e))?.iter().map(String::from).collect();
    let mut points = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let parse = |i: usize| -> Result<f64> {
            rec.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| LabError::Format(format!("{}: bad number in row {rec:?}", path.display())))
        };
        points.push((parse(0)?, parse(1)?));
    }
    Ok((header, points))
}

pub fn write_point_set_csv(path: &Path, points: &PointSet) -> Result<()> {
    let mut header: Vec<String> = (0..points.dim()).map(|k| format!("x{k}")).collect();
    header.push("weight".into());
    let rows = (0..points.len()).map(|i| {
        let mut row = points.point(i).to_vec();
        row.push(points.weights()[i]);
        row
    });
    write_rows(path, &header, rows)
}

pub fn write_interval_set_csv(path: &Path, set: &IntervalSet) -> Result<()> {
    write_rows(path, &["a".into(), "b".into()], set.intervals().iter().map(|&(a, b)| vec![a, b]))
}

pub fn write_decay_fit_csv(path: &Path, fit: &DecayFit) -> Result<()> {
    let header = ["level".into(), "norm".into(), "fitted_value".into()];
    let fitted = fit.fitted();
    write_rows(path, &header, fit.abscissae.iter().zip(&fit.norms).zip(fitted).map(|((&x, &v), f)| vec![x, v, f]))
}

fn write_gray(path: &Path, width: usize, height: usize, bytes: &[u8]) -> Result<()> {
    let file = File::create(path).map_err(|e| LabError::io(path, e))?;
    let mut out = BufWriter::new(file);
    PnmEncoder::new(&mut out)
        .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
        .write_image(bytes, width as u32, height as u32, ExtendedColorType::L8)
        .map_err(|e| LabError::Format(format!("{}: {e}", path.display())))?;
    out.flush().map_err(|e| LabError::io(path, e))
}

/// Binary PGM of a planar raster.
pub fn write_raster_pgm(path: &Path, raster: &GridRaster) -> Result<()> {
    let grid = raster.grid();
    if grid.dim() != 2 {
        return Err(LabError::Format(format!("{}: only planar rasters export to PGM", path.display())));
    }
    let n = grid.cells_per_axis();
    let cells = raster.to_cells();
    let mut bytes = Vec::with_capacity(n * n);
    for row in cells.chunks_exact(n).rev() {
        bytes.extend(row.iter().map(|&c| c * 255));
    }
    write_gray(path, n, n, &bytes)
}

/// Log-scaled magnitude spectrum, zero frequency in the middle.
pub fn write_spectrum_pgm(path: &Path, density: &GriddedDensity) -> Result<()> {
    let n = density.grid().cells_per_axis();
    let mag = density.spectrum_magnitude()?;
    let peak = mag.iter().copied().fold(0.0, f64::max);
    let mut bytes = vec![0u8; n * n];
    let half = n / 2;
    for (k, &m) in mag.iter().enumerate() {
        let (u, v) = ((k % n + half) % n, (k / n + half) % n);
        let level = if peak > 0.0 { 255.0 * (1.0 + 9999.0 * m / peak).log10() / 4.0 } else { 0.0 };
        bytes[(n - 1 - v) * n + u] = level.round().clamp(0.0, 255.0) as u8;
    }
    write_gray(path, n, n, &bytes)
}

pub fn write_report_json(path: &Path, report: &ExperimentReport) -> Result<()> {
    let text = serde_json::to_string_pretty(report).map_err(|e| LabError::Format(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| LabError::io(path, e))
}

pub fn read_report_json(path: &Path) -> Result<ExperimentReport> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| LabError::Format(format!("{}: {e}", path.display())))
}

/// Parses a binary PGM written by this module into `(width, height, bytes)`.
pub fn read_pgm(path: &Path) -> Result<(usize, usize, Vec<u8>)> {
    let img = image::open(path).map_err(|e| LabError::Format(format!("{}: {e}", path.display())))?.into_luma8();
    Ok((img.width() as usize, img.height() as usize, img.into_raw()))
}
