//! Frequency-side diagnostics: Littlewood–Paley pieces of gridded measures,
//! incidence measures and their mollifications, and Fourier decay of curve
//! measures by direct quadrature.
//!
//! Frequencies on a grid are integer DFT indices (cycles per box side), so
//! window supports are stated in those units.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::invalid;
use crate::fft::{signed_frequency, Fft2};
use crate::fractal::{IntervalSet, PointSet};
use crate::linalg::least_squares;
use crate::phase::PhaseSpec;
use crate::raster::{for_each_shape_span, rasterize_band, BandSource, GridRaster, GridSpec, Shape};
use crate::rng::seeded;
use crate::{Error, Result};

/// Nonnegative density on a planar grid, stored row-major (x fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct GriddedDensity {
    grid: GridSpec,
    values: Vec<f64>,
    total_mass: f64,
    dropped: usize,
}

impl GriddedDensity {
    /// Values are densities (mass per unit area).
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if grid.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: grid.dim() });
        }
        if values.len() != grid.cell_count() {
            return Err(invalid!("{} values for {} cells", values.len(), grid.cell_count()));
        }
        if values.iter().any(|v| !(*v >= 0.0)) {
            return Err(invalid!("density values must be nonnegative"));
        }
        let total_mass = values.iter().sum::<f64>() * grid.cell_volume();
        Ok(GriddedDensity { grid, values, total_mass, dropped: 0 })
    }

    /// Uniform probability density on the filled cells of a raster.
    pub fn from_raster(raster: &GridRaster) -> Result<Self> {
        let count = raster.filled_count();
        if count == 0 {
            return Err(Error::Empty("raster has no filled cells"));
        }
        let level = 1.0 / (count as f64 * raster.grid().cell_volume());
        let values = raster.to_cells().into_iter().map(|c| c as f64 * level).collect();
        GriddedDensity::new(raster.grid().clone(), values)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Centers whose band missed the grid while building an incidence density.
    pub fn dropped_centers(&self) -> usize {
        self.dropped
    }

    /// Cell-volume-weighted L² norm.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    pub fn occupied_cells(&self) -> usize {
        self.values.iter().filter(|v| **v > 0.0).count()
    }

    fn spectrum(&self) -> Result<Vec<Complex64>> {
        let n = self.grid.cells_per_axis();
        if !n.is_power_of_two() {
            return Err(invalid!("spectral operations need a power-of-two grid, got n = {n}"));
        }
        let mut buf: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Fft2::new(n).forward(&mut buf);
        Ok(buf)
    }

    /// `|DFT|` of the values, row-major with zero frequency at index 0.
    pub fn spectrum_magnitude(&self) -> Result<Vec<f64>> {
        Ok(self.spectrum()?.iter().map(|c| c.norm()).collect())
    }
}

/// Deposits each point's weight in its containing cell; total mass 1.
pub fn grid_density_from_points(points: &PointSet, grid: &GridSpec) -> Result<GriddedDensity> {
    if points.dim() != 2 || grid.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: points.dim() });
    }
    if points.is_empty() {
        return Err(Error::Empty("point set"));
    }
    let n = grid.cells_per_axis();
    let inv_v = 1.0 / grid.cell_volume();
    let mut values = vec![0.0; grid.cell_count()];
    for (k, (p, w)) in points.points().zip(points.weights()).enumerate() {
        let (Some(i), Some(j)) = (grid.index_of(0, p[0]), grid.index_of(1, p[1])) else {
            return Err(Error::OutsideBox { index: k });
        };
        values[j * n + i] += w * inv_v;
    }
    GriddedDensity::new(grid.clone(), values)
}

/// Product of the natural measures on two interval sets (each interval
/// carries equal mass, spread uniformly), averaged exactly over grid cells.
/// Degenerate intervals deposit into their containing cell.
pub fn product_measure_density(horizontal: &IntervalSet, vertical: &IntervalSet, grid: &GridSpec) -> Result<GriddedDensity> {
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: grid.dim() });
    }
    let x = axis_profile(horizontal, grid, 0)?;
    let y = axis_profile(vertical, grid, 1)?;
    let inv_v = 1.0 / grid.cell_volume();
    let values = y.iter().flat_map(|wy| x.iter().map(move |wx| wx * wy * inv_v)).collect();
    GriddedDensity::new(grid.clone(), values)
}

/// Mass of the natural measure of `set` in each cell along `axis`.
fn axis_profile(set: &IntervalSet, grid: &GridSpec, axis: usize) -> Result<Vec<f64>> {
    if set.is_empty() {
        return Err(Error::Empty("interval set"));
    }
    let n = grid.cells_per_axis();
    let h = grid.cell_size(axis);
    let lo = grid.bounds().lo[axis];
    let share = 1.0 / set.len() as f64;
    let mut out = vec![0.0; n];
    for (k, &(a, b)) in set.intervals().iter().enumerate() {
        let (Some(i0), Some(i1)) = (grid.index_of(axis, a), grid.index_of(axis, b)) else {
            return Err(Error::OutsideBox { index: k });
        };
        if b == a {
            out[i0] += share;
            continue;
        }
        for (i, slot) in out.iter_mut().enumerate().take(i1 + 1).skip(i0) {
            let c0 = lo + i as f64 * h;
            let overlap = (b.min(c0 + h) - a.max(c0)).max(0.0);
            *slot += share * overlap / (b - a);
        }
    }
    Ok(out)
}

/// How the dyadic windows are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum WindowFamily {
    /// `η₀ + Σ η_j = 1`.
    #[default]
    Partition,
    /// `η₀² + Σ η_j² = 1`, the square roots of the partition windows.
    Energy,
}

/// Smooth step: 1 for `r ≤ 2`, 0 for `r ≥ 4`, `cos²` in `log₂ r` between.
pub fn lp_cutoff(r: f64) -> f64 {
    if r <= 2.0 {
        1.0
    } else if r >= 4.0 {
        0.0
    } else {
        let u = r.log2() - 1.0;
        let c = (0.5 * PI * u).cos();
        c * c
    }
}

/// Radial window `η_j(r)`: `β(r)` for `j = 0`, else `β(2^{-j} r) − β(2^{1-j} r)`,
/// supported in `[2^j, 2^{j+2}]`.
pub fn lp_window(j: u32, r: f64, family: WindowFamily) -> f64 {
    let p = if j == 0 {
        lp_cutoff(r)
    } else {
        let s = (-(j as f64)).exp2();
        (lp_cutoff(s * r) - lp_cutoff(2.0 * s * r)).max(0.0)
    };
    match family {
        WindowFamily::Partition => p,
        WindowFamily::Energy => p.sqrt(),
    }
}

/// Largest admissible `j_max` for an `n`-cell grid: `2^{j_max} = n/2`.
pub fn nyquist_level(n: usize) -> u32 {
    (n / 2).max(1).ilog2()
}

fn radial_frequency(grid: &GridSpec) -> impl Fn(usize) -> f64 {
    let n = grid.cells_per_axis();
    move |idx: usize| {
        let kx = signed_frequency(idx % n, n) as f64;
        let ky = signed_frequency(idx / n, n) as f64;
        (kx * kx + ky * ky).sqrt()
    }
}

fn check_levels(grid: &GridSpec, j_max: u32) -> Result<()> {
    let top = nyquist_level(grid.cells_per_axis());
    if j_max > top {
        return Err(invalid!("j_max = {j_max} exceeds the Nyquist level {top}"));
    }
    Ok(())
}

/// L² norms of `μ^j` (`μ̂^j = η_j μ̂`) for `j = 0..=j_max`, evaluated on the
/// frequency side by Parseval.
pub fn lp_projection_norms(density: &GriddedDensity, j_max: u32, family: WindowFamily) -> Result<Vec<(u32, f64)>> {
    check_levels(&density.grid, j_max)?;
    let spec = density.spectrum()?;
    let radius = radial_frequency(&density.grid);
    let scale = density.grid.cell_volume() / spec.len() as f64;
    let mut sums = vec![0.0; j_max as usize + 1];
    for (idx, c) in spec.iter().enumerate() {
        let r = radius(idx);
        let power = c.norm_sqr();
        // window j is nonzero only for 2^j < r < 2^{j+2}
        let hi = if r < 4.0 { 0 } else { (r.log2() - 2.0).floor().max(0.0) as u32 };
        for j in hi..=j_max.min(hi + 2) {
            let w = lp_window(j, r, family);
            sums[j as usize] += w * w * power;
        }
    }
    Ok(sums.into_iter().enumerate().map(|(j, s)| (j as u32, (s * scale).sqrt())).collect())
}

/// The piece `μ^j` itself, by inverse transform. Values may be signed.
pub fn lp_projection(density: &GriddedDensity, j: u32, family: WindowFamily) -> Result<Vec<f64>> {
    check_levels(&density.grid, j)?;
    let mut spec = density.spectrum()?;
    let radius = radial_frequency(&density.grid);
    for (idx, c) in spec.iter_mut().enumerate() {
        *c *= lp_window(j, radius(idx), family);
    }
    Fft2::new(density.grid.cells_per_axis()).inverse(&mut spec);
    Ok(spec.into_iter().map(|c| c.re).collect())
}

/// Curves whose δ-bands carry the incidence measure.
#[derive(Debug, Clone, PartialEq)]
pub enum IncidenceFamily {
    /// Level sets `{y : φ(x_i, y) = t_i}`, rasterized cell by cell.
    Phase(PhaseSpec),
    /// Circles of radius `t_i` about `x_i`.
    Circles,
    /// Boundaries of squares of half-side `t_i` about `x_i`.
    Squares,
}

/// Incidence measure `ν`: each center's weight spread uniformly over the
/// filled cells of its band. Centers with empty bands are dropped and
/// counted; the rest are renormalized to total mass 1.
pub fn incidence_density(
    family: &IncidenceFamily,
    centers: &PointSet,
    levels: &[f64],
    delta: f64,
    grid: &GridSpec,
) -> Result<GriddedDensity> {
    if grid.dim() != 2 || centers.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: centers.dim() });
    }
    if levels.len() != 1 && levels.len() != centers.len() {
        return Err(invalid!("{} levels for {} centers", levels.len(), centers.len()));
    }
    if delta < grid.min_cell_size() {
        return Err(Error::GridTooCoarse { delta, min: grid.min_cell_size() });
    }
    let n = grid.cells_per_axis();
    let mut values = vec![0.0; grid.cell_count()];
    let mut dropped = 0;
    let mut spans = Vec::new();
    for (i, (x, &w)) in centers.points().zip(centers.weights()).enumerate() {
        let t = if levels.len() == 1 { levels[0] } else { levels[i] };
        let shape = match family {
            IncidenceFamily::Phase(phase) => {
                let band = rasterize_band(BandSource::Level { phase, center: x, level: t }, delta, grid)?;
                if band.filled_count() == 0 {
                    dropped += 1;
                    continue;
                }
                let share = w / band.filled_count() as f64;
                for (v, c) in values.iter_mut().zip(band.to_cells()) {
                    if c == 1 {
                        *v += share;
                    }
                }
                continue;
            }
            IncidenceFamily::Circles => Shape::Circle { center: [x[0], x[1]], radius: t },
            IncidenceFamily::Squares => Shape::SquareBoundary { center: [x[0], x[1]], half_side: t },
        };
        let mut count = 0usize;
        for_each_shape_span(&shape, delta, grid, &mut spans, |_, a, b| count += b - a + 1);
        if count == 0 {
            dropped += 1;
            continue;
        }
        let share = w / count as f64;
        for_each_shape_span(&shape, delta, grid, &mut spans, |row, a, b| {
            for v in &mut values[row * n + a..=row * n + b] {
                *v += share;
            }
        });
    }
    let mass: f64 = values.iter().sum();
    if dropped == centers.len() || !(mass > 0.0) {
        return Err(Error::Empty("every incidence band missed the grid"));
    }
    let norm = 1.0 / (mass * grid.cell_volume());
    for v in &mut values {
        *v *= norm;
    }
    let mut out = GriddedDensity::new(grid.clone(), values)?;
    out.dropped = dropped;
    Ok(out)
}

/// Normalized radial bump `exp(-1/(1-|z/ε|²))` sampled at cell offsets, with
/// periodic wrap, as a discrete kernel of unit mass.
fn bump_kernel(grid: &GridSpec, eps: f64) -> Vec<f64> {
    let n = grid.cells_per_axis();
    let (hx, hy) = (grid.cell_size(0), grid.cell_size(1));
    let mut k = vec![0.0; n * n];
    let reach_x = (eps / hx).ceil() as i64;
    let reach_y = (eps / hy).ceil() as i64;
    let mut total = 0.0;
    for dy in -reach_y..=reach_y {
        for dx in -reach_x..=reach_x {
            let q = ((dx as f64 * hx).powi(2) + (dy as f64 * hy).powi(2)) / (eps * eps);
            if q < 1.0 {
                let v = (-1.0 / (1.0 - q)).exp();
                let i = dx.rem_euclid(n as i64) as usize;
                let j = dy.rem_euclid(n as i64) as usize;
                k[j * n + i] += v;
                total += v;
            }
        }
    }
    let norm = 1.0 / (total * grid.cell_volume());
    k.iter_mut().for_each(|v| *v *= norm);
    k
}

/// `λ_ε = ν ∗ ρ_ε` by FFT (periodic on the box).
pub fn mollify(nu: &GriddedDensity, eps: f64) -> Result<GriddedDensity> {
    let spec = nu.spectrum()?;
    let values = mollify_with(nu, &spec, eps)?;
    let mut out = GriddedDensity { grid: nu.grid.clone(), values, total_mass: 0.0, dropped: nu.dropped };
    out.total_mass = out.values.iter().sum::<f64>() * out.grid.cell_volume();
    Ok(out)
}

fn mollify_with(nu: &GriddedDensity, spec: &[Complex64], eps: f64) -> Result<Vec<f64>> {
    let min = 2.0 * nu.grid.min_cell_size();
    if !(eps >= min) {
        return Err(invalid!("mollifier radius {eps} is below two cells ({min})"));
    }
    let n = nu.grid.cells_per_axis();
    let fft = Fft2::new(n);
    let mut kernel: Vec<Complex64> = bump_kernel(&nu.grid, eps).into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    fft.forward(&mut kernel);
    let v = nu.grid.cell_volume();
    for (k, s) in kernel.iter_mut().zip(spec) {
        *k = *k * s * v;
    }
    fft.inverse(&mut kernel);
    Ok(kernel.into_iter().map(|c| c.re).collect())
}

/// `‖ν ∗ ρ_ε‖₂` for each ε.
pub fn mollified_l2(nu: &GriddedDensity, epsilons: &[f64]) -> Result<Vec<(f64, f64)>> {
    let spec = nu.spectrum()?;
    let v = nu.grid.cell_volume();
    epsilons
        .iter()
        .map(|&eps| {
            let vals = mollify_with(nu, &spec, eps)?;
            Ok((eps, (vals.iter().map(|x| x * x).sum::<f64>() * v).sqrt()))
        })
        .collect()
}

/// Least-squares slope of `log₂ norm` against an abscissa.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecayFit {
    pub abscissae: Vec<f64>,
    pub norms: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    /// RMS fit error in log₂ units.
    pub residual: f64,
}

impl DecayFit {
    pub fn fit(abscissae: Vec<f64>, norms: Vec<f64>) -> Result<Self> {
        if norms.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::DegenerateFit("norms must be positive to take logs".into()));
        }
        let logs: Vec<f64> = norms.iter().map(|v| v.log2()).collect();
        let line = least_squares(&abscissae, &logs)
            .ok_or_else(|| Error::DegenerateFit("need two distinct abscissae".into()))?;
        Ok(DecayFit { abscissae, norms, slope: line.slope, intercept: line.intercept, residual: line.residual })
    }

    /// Fitted norm `2^{intercept + slope·x}` at each abscissa.
    pub fn fitted(&self) -> Vec<f64> {
        self.abscissae.iter().map(|x| (self.intercept + self.slope * x).exp2()).collect()
    }
}

/// Fits `log₂ ‖μ^j‖₂` against `j` over `levels`.
pub fn fit_lp_slope(norms: &[(u32, f64)], levels: core::ops::RangeInclusive<u32>) -> Result<DecayFit> {
    let (xs, ys) = norms.iter().filter(|(j, _)| levels.contains(j)).map(|&(j, v)| (j as f64, v)).unzip();
    DecayFit::fit(xs, ys)
}

/// Curve whose arc-length measure is transformed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DecayMode {
    /// Unit-circle arc `(cos s, sin s)`, `|s| ≤ 1/2`.
    Circle2d,
    /// Moment curve `(s, s²/2, s³/6)`, `|s| ≤ 1`.
    Curve3d,
}

impl DecayMode {
    pub fn name(self) -> &'static str {
        match self {
            DecayMode::Circle2d => "circle-2d",
            DecayMode::Curve3d => "curve-3d",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            DecayMode::Circle2d => 2,
            DecayMode::Curve3d => 3,
        }
    }

    fn half_range(self) -> f64 {
        match self {
            DecayMode::Circle2d => 0.5,
            DecayMode::Curve3d => 1.0,
        }
    }

    fn point(self, s: f64) -> ([f64; 3], f64) {
        match self {
            DecayMode::Circle2d => ([s.cos(), s.sin(), 0.0], 1.0),
            DecayMode::Curve3d => {
                let speed = (1.0 + s * s + 0.25 * s.powi(4)).sqrt();
                ([s, 0.5 * s * s, s * s * s / 6.0], speed)
            }
        }
    }
}

impl core::str::FromStr for DecayMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circle-2d" => Ok(DecayMode::Circle2d),
            "curve-3d" => Ok(DecayMode::Curve3d),
            _ => Err(invalid!("unknown decay mode `{s}`")),
        }
    }
}

pub const QUADRATURE_NODES: usize = 4096;

struct Quadrature {
    nodes: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

fn quadrature(mode: DecayMode) -> Quadrature {
    let half = mode.half_range();
    let step = 2.0 * half / QUADRATURE_NODES as f64;
    let mut nodes = Vec::with_capacity(QUADRATURE_NODES);
    let mut weights = Vec::with_capacity(QUADRATURE_NODES);
    for m in 0..QUADRATURE_NODES {
        let s = -half + (m as f64 + 0.5) * step;
        let (p, speed) = mode.point(s);
        let u = s / half;
        let chi = if u.abs() < 1.0 { (-1.0 / (1.0 - u * u)).exp() } else { 0.0 };
        nodes.push(p);
        weights.push(chi * speed * step);
    }
    Quadrature { nodes, weights }
}

/// `|σ̂(ξ)|` for one frequency vector.
fn transform_magnitude(q: &Quadrature, xi: [f64; 3]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, w) in q.nodes.iter().zip(&q.weights) {
        let phase = -2.0 * PI * (xi[0] * p[0] + xi[1] * p[1] + xi[2] * p[2]);
        let (s, c) = phase.sin_cos();
        acc += Complex64::new(w * c, w * s);
    }
    acc.norm()
}

/// Total mass of the cut-off curve measure (the transform at zero).
pub fn surface_measure_mass(mode: DecayMode) -> f64 {
    quadrature(mode).weights.iter().sum()
}

fn random_directions(dim: usize, count: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v = [0.0; 3];
        for c in v.iter_mut().take(dim) {
            *c = rng.random_range(-1.0..1.0);
        }
        let r2: f64 = v.iter().map(|c| c * c).sum();
        if r2 > 1e-6 && r2 <= 1.0 {
            let r = r2.sqrt();
            out.push(v.map(|c| c / r));
        }
    }
    out
}

/// Max over seeded random directions of `|σ̂(|ξ|·θ)|` per frequency, and the
/// log-log slope over the positive frequencies.
pub fn surface_fourier_decay(mode: DecayMode, freqs: &[f64], directions: usize, seed: u64) -> Result<DecayFit> {
    if directions < 16 {
        return Err(invalid!("need at least 16 directions, got {directions}"));
    }
    let positive: Vec<f64> = freqs.iter().copied().filter(|f| *f > 0.0).collect();
    let lo = positive.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = positive.iter().copied().fold(0.0, f64::max);
    if positive.is_empty() || (hi / lo).log2() < 2.0 {
        return Err(Error::DegenerateFit("frequencies must span at least 2 octaves".into()));
    }
    let q = quadrature(mode);
    let dirs = random_directions(mode.dim(), directions, seed);
    let envelope = |f: f64| -> f64 {
        dirs.iter()
            .map(|d| transform_magnitude(&q, d.map(|c| c * f)))
            .fold(0.0, f64::max)
    };
    #[cfg(feature = "parallel")]
    let norms: Vec<f64> = {
        use rayon::prelude::*;
        positive.par_iter().map(|&f| envelope(f)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let norms: Vec<f64> = positive.iter().map(|&f| envelope(f)).collect();
    DecayFit::fit(positive.iter().map(|f| f.log2()).collect(), norms)
}
