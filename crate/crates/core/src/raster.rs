//! Occupancy bitmaps over axis-aligned grids.
//!
//! A cell is filled iff its center satisfies the band condition, either
//! `|φ(x, c) - t| ≤ δ` for a phase or `dist(c, shape) ≤ δ` for a planar shape.
//! Planar shapes are rasterized row by row from exact span formulas, so large
//! unions (thousands of circles on a 2048² grid) stay cheap. Measures are
//! `filled cells × cell volume`; three-dimensional measures at desk scale go
//! through [`monte_carlo_measure`] instead.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::invalid;
use crate::fractal::Aabb;
use crate::phase::PhaseSpec;
use crate::rng::substream;
use crate::{Error, Result};

/// Axis-aligned grid of `n` cells per axis over a box.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    bounds: Aabb,
    n: usize,
}

impl GridSpec {
    pub fn new(bounds: Aabb, n: usize) -> Result<Self> {
        let d = bounds.dim();
        let max_n = match d {
            2 => 8192,
            3 => 512,
            _ => return Err(invalid!("grids are 2-D or 3-D, got dimension {d}")),
        };
        if !(16..=max_n).contains(&n) {
            return Err(invalid!("{d}-D grids need 16 <= n <= {max_n}, got {n}"));
        }
        if bounds.lo.iter().zip(&bounds.hi).any(|(a, b)| !(b > a)) {
            return Err(invalid!("grid box must have hi > lo on every axis"));
        }
        Ok(GridSpec { bounds, n })
    }

    /// Square planar grid over `[lo, hi]²`.
    pub fn square(lo: f64, hi: f64, n: usize) -> Result<Self> {
        GridSpec::new(Aabb::cube(2, lo, hi), n)
    }

    pub fn bounds(&self) -> &Aabb {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn cells_per_axis(&self) -> usize {
        self.n
    }

    pub fn cell_size(&self, axis: usize) -> f64 {
        (self.bounds.hi[axis] - self.bounds.lo[axis]) / self.n as f64
    }

    pub fn min_cell_size(&self) -> f64 {
        (0..self.dim()).map(|a| self.cell_size(a)).fold(f64::INFINITY, f64::min)
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.cell_size(a)).product()
    }

    pub fn cell_count(&self) -> usize {
        self.n.pow(self.dim() as u32)
    }

    pub fn box_volume(&self) -> f64 {
        self.bounds.volume()
    }

    /// Center coordinate of index `i` along `axis`.
    pub fn center(&self, axis: usize, i: usize) -> f64 {
        self.bounds.lo[axis] + (i as f64 + 0.5) * self.cell_size(axis)
    }

    /// Index of the cell containing coordinate `v` along `axis`, if inside.
    pub fn index_of(&self, axis: usize, v: f64) -> Option<usize> {
        let f = (v - self.bounds.lo[axis]) / self.cell_size(axis);
        if f < 0.0 || v > self.bounds.hi[axis] {
            return None;
        }
        Some((f.floor() as usize).min(self.n - 1))
    }

    /// Inclusive range of cells whose centers lie in `[a, b]` along `axis`.
    fn centers_within(&self, axis: usize, a: f64, b: f64) -> Option<(usize, usize)> {
        let h = self.cell_size(axis);
        let lo = self.bounds.lo[axis];
        let first = ((a - lo) / h - 0.5).ceil();
        let last = ((b - lo) / h - 0.5).floor();
        let first = first.max(0.0);
        let last = last.min(self.n as f64 - 1.0);
        (first <= last).then_some((first as usize, last as usize))
    }

    /// Below half a cell the band is resolved only by luck; callers may warn.
    pub fn is_under_resolved(&self, delta: f64) -> bool {
        delta < 0.5 * self.min_cell_size()
    }

    fn check_band(&self, delta: f64) -> Result<()> {
        let min = 0.25 * self.min_cell_size();
        if !(delta > 0.0) || delta < min {
            return Err(Error::GridTooCoarse { delta, min });
        }
        Ok(())
    }

    /// Rows are the grid lines along axis 0: `n` for 2-D, `n²` for 3-D.
    fn row_count(&self) -> usize {
        self.n.pow(self.dim() as u32 - 1)
    }

    fn words_per_row(&self) -> usize {
        self.n.div_ceil(64)
    }
}

/// Occupancy bitmap over a [`GridSpec`]; rows run along axis 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRaster {
    grid: GridSpec,
    words: Vec<u64>,
    filled: usize,
}

impl Eq for GridSpec {}

impl GridRaster {
    pub fn empty(grid: &GridSpec) -> Self {
        let words = vec![0u64; grid.row_count() * grid.words_per_row()];
        GridRaster { grid: grid.clone(), words, filled: 0 }
    }

    pub fn full(grid: &GridSpec) -> Self {
        let mut r = GridRaster::empty(grid);
        for row in 0..grid.row_count() {
            r.fill_cells(row, 0, grid.n - 1);
        }
        r.recount();
        r
    }

    /// Raster filled where `pred(cell center)` holds.
    pub fn from_predicate<F>(grid: &GridSpec, pred: F) -> Self
    where
        F: Fn(&[f64]) -> bool + Sync,
    {
        let n = grid.n;
        let wpr = grid.words_per_row();
        let row_words = |row: usize, out: &mut [u64]| {
            let mut c = vec![0.0; grid.dim()];
            for (axis, idx) in row_coordinates(grid, row).into_iter().enumerate() {
                c[axis + 1] = grid.center(axis + 1, idx);
            }
            for i in 0..n {
                c[0] = grid.center(0, i);
                if pred(&c) {
                    out[i / 64] |= 1u64 << (i % 64);
                }
            }
        };
        let mut r = GridRaster::empty(grid);
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            r.words.par_chunks_mut(wpr).enumerate().for_each(|(row, out)| row_words(row, out));
        }
        #[cfg(not(feature = "parallel"))]
        for (row, out) in r.words.chunks_mut(wpr).enumerate() {
            row_words(row, out);
        }
        r.recount();
        r
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn filled_count(&self) -> usize {
        self.filled
    }

    /// Recomputes the population count and compares it with the cache.
    pub fn count_is_consistent(&self) -> bool {
        self.popcount() == self.filled
    }

    fn popcount(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn recount(&mut self) {
        self.filled = self.popcount();
    }

    pub fn area(&self) -> f64 {
        self.filled as f64 * self.grid.cell_volume()
    }

    fn row_index(&self, idx: &[usize]) -> usize {
        idx[1..].iter().rev().fold(0, |acc, &i| acc * self.grid.n + i)
    }

    pub fn get(&self, idx: &[usize]) -> bool {
        let row = self.row_index(idx);
        let i = idx[0];
        self.words[row * self.grid.words_per_row() + i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, idx: &[usize], value: bool) {
        let row = self.row_index(idx);
        let i = idx[0];
        let w = &mut self.words[row * self.grid.words_per_row() + i / 64];
        let bit = 1u64 << (i % 64);
        let was = *w & bit != 0;
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
        match (was, value) {
            (false, true) => self.filled += 1,
            (true, false) => self.filled -= 1,
            _ => {}
        }
    }

    /// Whether the cell containing point `p` is filled (false outside the box).
    pub fn contains_point(&self, p: &[f64]) -> bool {
        let idx: Option<Vec<usize>> = (0..self.grid.dim()).map(|a| self.grid.index_of(a, p[a])).collect();
        idx.is_some_and(|idx| self.get(&idx))
    }

    /// Sets cells `first..=last` of a row without updating the cached count.
    fn fill_cells(&mut self, row: usize, first: usize, last: usize) {
        let base = row * self.grid.words_per_row();
        fill_bits(&mut self.words[base..base + self.grid.words_per_row()], first, last);
    }

    pub fn union_with(&mut self, other: &GridRaster) -> Result<()> {
        self.same_grid(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.recount();
        Ok(())
    }

    pub fn intersection(&self, other: &GridRaster) -> Result<GridRaster> {
        self.same_grid(other)?;
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let mut r = GridRaster { grid: self.grid.clone(), words, filled: 0 };
        r.recount();
        Ok(r)
    }

    pub fn is_subset_of(&self, other: &GridRaster) -> Result<bool> {
        self.same_grid(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0))
    }

    fn same_grid(&self, other: &GridRaster) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Filled flags row-major with axis 0 fastest, as bytes 0/1.
    pub fn to_cells(&self) -> Vec<u8> {
        let n = self.grid.n;
        let wpr = self.grid.words_per_row();
        let mut out = Vec::with_capacity(self.grid.cell_count());
        for row in 0..self.grid.row_count() {
            for i in 0..n {
                out.push((self.words[row * wpr + i / 64] >> (i % 64) & 1) as u8);
            }
        }
        out
    }

    /// Iterates `(row, first, last)` spans of filled cells along axis 0.
    fn runs(&self, row: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.grid.n;
        let base = row * self.grid.words_per_row();
        let words = &self.words[base..base + self.grid.words_per_row()];
        let bit = move |i: usize| words[i / 64] >> (i % 64) & 1 == 1;
        let mut i = 0;
        core::iter::from_fn(move || {
            while i < n && !bit(i) {
                i = next_set_candidate(words, i);
            }
            if i >= n {
                return None;
            }
            let start = i;
            while i < n && bit(i) {
                i += 1;
            }
            Some((start, i - 1))
        })
    }
}

fn next_set_candidate(words: &[u64], i: usize) -> usize {
    let w = words[i / 64] >> (i % 64);
    if w == 0 {
        (i / 64 + 1) * 64
    } else {
        i + w.trailing_zeros() as usize
    }
}

fn fill_bits(words: &mut [u64], first: usize, last: usize) {
    let (fw, lw) = (first / 64, last / 64);
    let head = u64::MAX << (first % 64);
    let tail = u64::MAX >> (63 - last % 64);
    if fw == lw {
        words[fw] |= head & tail;
    } else {
        words[fw] |= head;
        for w in &mut words[fw + 1..lw] {
            *w = u64::MAX;
        }
        words[lw] |= tail;
    }
}

fn row_coordinates(grid: &GridSpec, row: usize) -> Vec<usize> {
    let mut rest = row;
    (1..grid.dim())
        .map(|_| {
            let i = rest % grid.n;
            rest /= grid.n;
            i
        })
        .collect()
}

/// Planar shapes with exact row-span formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Shape {
    /// Circle `|z - center| = radius`.
    Circle { center: [f64; 2], radius: f64 },
    /// Boundary of the square `center + [-half_side, half_side]²`.
    SquareBoundary { center: [f64; 2], half_side: f64 },
    /// Segment from `a` to `b`.
    Segment { a: [f64; 2], b: [f64; 2] },
    /// Filled triangle.
    Triangle { vertices: [[f64; 2]; 3] },
    /// Filled annulus `||z - center| - radius| ≤ half_width`.
    Annulus { center: [f64; 2], radius: f64, half_width: f64 },
    /// Union of circles of `radius` centered on the rectangle `x × y`.
    SweptCircle { x: [f64; 2], y: [f64; 2], radius: f64 },
    /// Union of square boundaries of `half_side` centered on the rectangle `x × y`.
    SweptSquare { x: [f64; 2], y: [f64; 2], half_side: f64 },
}

impl Shape {
    /// Vertical extent of the δ-neighbourhood.
    fn y_extent(&self, delta: f64) -> (f64, f64) {
        let (lo, hi) = match *self {
            Shape::Circle { center, radius } => (center[1] - radius, center[1] + radius),
            Shape::SquareBoundary { center, half_side } => (center[1] - half_side, center[1] + half_side),
            Shape::Segment { a, b } => (a[1].min(b[1]), a[1].max(b[1])),
            Shape::Triangle { vertices } => {
                let ys = vertices.map(|v| v[1]);
                (ys[0].min(ys[1]).min(ys[2]), ys[0].max(ys[1]).max(ys[2]))
            }
            Shape::Annulus { center, radius, half_width } => {
                (center[1] - radius - half_width, center[1] + radius + half_width)
            }
            Shape::SweptCircle { y, radius, .. } => (y[0] - radius, y[1] + radius),
            Shape::SweptSquare { y, half_side, .. } => (y[0] - half_side, y[1] + half_side),
        };
        (lo - delta, hi + delta)
    }

    /// Closed x-intervals of `{x : dist((x, y), shape) ≤ δ}`.
    pub fn row_spans(&self, y: f64, delta: f64, out: &mut Vec<(f64, f64)>) {
        out.clear();
        match *self {
            Shape::Circle { center, radius } => {
                swept_ring_spans([center[0]; 2], [center[1]; 2], radius, delta, y, out)
            }
            Shape::Annulus { center, radius, half_width } => {
                swept_ring_spans([center[0]; 2], [center[1]; 2], radius, half_width + delta, y, out)
            }
            Shape::SweptCircle { x, y: cy, radius } => swept_ring_spans(x, cy, radius, delta, y, out),
            Shape::SquareBoundary { center, half_side } => {
                swept_frame_spans([center[0]; 2], [center[1]; 2], half_side, delta, y, out)
            }
            Shape::SweptSquare { x, y: cy, half_side } => swept_frame_spans(x, cy, half_side, delta, y, out),
            Shape::Segment { a, b } => {
                if let Some(span) = offset_polygon_span(&[a, b], delta, y) {
                    out.push(span);
                }
            }
            Shape::Triangle { vertices } => {
                if let Some(span) = offset_polygon_span(&vertices, delta, y) {
                    out.push(span);
                }
            }
        }
    }
}

/// Range of `|v|` for `v` in `[lo, hi]`.
fn abs_range(lo: f64, hi: f64) -> (f64, f64) {
    let near = if lo <= 0.0 && hi >= 0.0 { 0.0 } else { lo.abs().min(hi.abs()) };
    (near, lo.abs().max(hi.abs()))
}

/// Vertical offsets from the centers in `cy` to the row, clipped to `reach`.
fn row_offsets(cy: [f64; 2], row: f64, reach: f64) -> Option<(f64, f64)> {
    let lo = (row - cy[1]).max(-reach);
    let hi = (row - cy[0]).min(reach);
    (lo <= hi).then(|| abs_range(lo, hi))
}

/// Rings `||z - c| - radius| ≤ delta` for `c` in `cx × cy`. For each vertical
/// offset the ring row is `[-o, -i] ∪ [i, o]`; over an interval of offsets the
/// pieces move continuously, so their union is `[-max o, -min i]` and mirror.
fn swept_ring_spans(cx: [f64; 2], cy: [f64; 2], radius: f64, delta: f64, row: f64, out: &mut Vec<(f64, f64)>) {
    let outer_r = radius + delta;
    let Some((near, far)) = row_offsets(cy, row, outer_r) else { return };
    let outer = (outer_r * outer_r - near * near).sqrt();
    let inner_r = radius - delta;
    let inner = if inner_r > far { (inner_r * inner_r - far * far).sqrt() } else { 0.0 };
    push_merged(out, (cx[0] - outer, cx[1] - inner), (cx[0] + inner, cx[1] + outer));
}

/// Square-boundary bands of half-side `s` for centers in `cx × cy`.
fn swept_frame_spans(cx: [f64; 2], cy: [f64; 2], s: f64, delta: f64, row: f64, out: &mut Vec<(f64, f64)>) {
    let Some((near, far)) = row_offsets(cy, row, s + delta) else { return };
    if far >= s - delta {
        // some center sees a horizontal edge: one full-width span
        let w = if near <= s { delta } else { (delta * delta - (near - s) * (near - s)).max(0.0).sqrt() };
        out.push((cx[0] - s - w, cx[1] + s + w));
    } else {
        push_merged(out, (cx[0] - s - delta, cx[1] - s + delta), (cx[0] + s - delta, cx[1] + s + delta));
    }
}

fn push_merged(out: &mut Vec<(f64, f64)>, left: (f64, f64), right: (f64, f64)) {
    if left.1 >= right.0 {
        out.push((left.0, right.1));
    } else {
        out.push(left);
        out.push(right);
    }
}

/// x-range of a convex polygon (given by vertices, 2 or 3 of them) offset by
/// `delta`, cut by the line at height `y`. The offset set is convex, so the
/// hull of the spans of its pieces (polygon, edge rectangles, vertex disks) is
/// exact.
fn offset_polygon_span(vertices: &[[f64; 2]], delta: f64, y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut take = |span: Option<(f64, f64)>| {
        if let Some((a, b)) = span {
            lo = lo.min(a);
            hi = hi.max(b);
        }
    };
    if vertices.len() >= 3 {
        take(convex_span(vertices, y));
    }
    let m = vertices.len();
    for k in 0..m {
        let p = vertices[k];
        let q = vertices[(k + 1) % m];
        if m == 2 && k == 1 {
            break;
        }
        if delta > 0.0 {
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            let len = (dx * dx + dy * dy).sqrt();
            if len > 0.0 {
                let nx = -dy / len * delta;
                let ny = dx / len * delta;
                let rect = [[p[0] + nx, p[1] + ny], [q[0] + nx, q[1] + ny], [q[0] - nx, q[1] - ny], [p[0] - nx, p[1] - ny]];
                take(convex_span(&rect, y));
            }
        } else {
            take(convex_span(&[p, q], y));
        }
    }
    for v in vertices {
        let dy = (y - v[1]).abs();
        if dy <= delta {
            let half = (delta * delta - dy * dy).sqrt();
            take(Some((v[0] - half, v[0] + half)));
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Intersection of a convex polygon (vertices in order) with a horizontal line.
fn convex_span(poly: &[[f64; 2]], y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let m = poly.len();
    for k in 0..m {
        let a = poly[k];
        let b = poly[(k + 1) % m];
        if a[1] == y {
            lo = lo.min(a[0]);
            hi = hi.max(a[0]);
        }
        if (a[1] - y) * (b[1] - y) < 0.0 {
            let x = a[0] + (y - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// What a band is drawn around.
#[derive(Debug, Clone, Copy)]
pub enum BandSource<'a> {
    /// `{y : |φ(center, y) - level| ≤ δ}`
    Level { phase: &'a PhaseSpec, center: &'a [f64], level: f64 },
    /// `{z : dist(z, shape) ≤ δ}`
    Shape(&'a Shape),
}

/// Rasterizes one δ-band. Errors when `delta` is below a quarter cell.
pub fn rasterize_band(source: BandSource<'_>, delta: f64, grid: &GridSpec) -> Result<GridRaster> {
    grid.check_band(delta)?;
    match source {
        BandSource::Level { phase, center, level } => {
            if phase.dim() != grid.dim() || center.len() != grid.dim() {
                return Err(Error::DimensionMismatch { expected: grid.dim(), got: phase.dim() });
            }
            Ok(GridRaster::from_predicate(grid, |c| (phase.eval_unchecked(center, c) - level).abs() <= delta))
        }
        BandSource::Shape(shape) => rasterize_shapes_band(core::slice::from_ref(shape), delta, grid),
    }
}

fn require_planar(grid: &GridSpec) -> Result<()> {
    if grid.dim() == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: 2, got: grid.dim() })
    }
}

/// Visits the filled cell spans `(row, first, last)` of one shape's band.
pub(crate) fn for_each_shape_span(
    shape: &Shape,
    delta: f64,
    grid: &GridSpec,
    spans: &mut Vec<(f64, f64)>,
    mut visit: impl FnMut(usize, usize, usize),
) {
    let (y0, y1) = shape.y_extent(delta);
    let Some((r0, r1)) = grid.centers_within(1, y0, y1) else { return };
    for row in r0..=r1 {
        shape.row_spans(grid.center(1, row), delta, spans);
        for &(a, b) in spans.iter() {
            if let Some((first, last)) = grid.centers_within(0, a, b) {
                visit(row, first, last);
            }
        }
    }
}

fn paint_shapes(raster: &mut GridRaster, shapes: &[Shape], delta: f64) {
    let grid = raster.grid.clone();
    let wpr = grid.words_per_row();
    let mut spans = Vec::new();
    for shape in shapes {
        for_each_shape_span(shape, delta, &grid, &mut spans, |row, first, last| {
            fill_bits(&mut raster.words[row * wpr..(row + 1) * wpr], first, last);
        });
    }
    raster.recount();
}

/// Union of the δ-bands of all `shapes`. With the `parallel` feature, chunks
/// of shapes are painted into separate bitmaps and OR-reduced, which gives
/// the same bits as [`rasterize_shapes_band_sequential`].
pub fn rasterize_shapes_band(shapes: &[Shape], delta: f64, grid: &GridSpec) -> Result<GridRaster> {
    require_planar(grid)?;
    grid.check_band(delta)?;
    Ok(paint_union(shapes, delta, grid))
}

/// Single-threaded [`rasterize_shapes_band`].
pub fn rasterize_shapes_band_sequential(shapes: &[Shape], delta: f64, grid: &GridSpec) -> Result<GridRaster> {
    require_planar(grid)?;
    grid.check_band(delta)?;
    let mut r = GridRaster::empty(grid);
    paint_shapes(&mut r, shapes, delta);
    Ok(r)
}

#[cfg(feature = "parallel")]
fn paint_union(shapes: &[Shape], delta: f64, grid: &GridSpec) -> GridRaster {
    use rayon::prelude::*;
    let chunk = shapes.len().div_ceil(rayon::current_num_threads().max(1)).max(1);
    shapes
        .par_chunks(chunk)
        .map(|part| {
            let mut r = GridRaster::empty(grid);
            paint_shapes(&mut r, part, delta);
            r
        })
        .reduce(
            || GridRaster::empty(grid),
            |mut a, b| {
                for (x, y) in a.words.iter_mut().zip(&b.words) {
                    *x |= y;
                }
                a.recount();
                a
            },
        )
}

#[cfg(not(feature = "parallel"))]
fn paint_union(shapes: &[Shape], delta: f64, grid: &GridSpec) -> GridRaster {
    let mut r = GridRaster::empty(grid);
    paint_shapes(&mut r, shapes, delta);
    r
}

/// Number of cells in one shape's band, without allocating a raster.
pub fn shape_band_cells(shape: &Shape, delta: f64, grid: &GridSpec) -> Result<usize> {
    require_planar(grid)?;
    let mut spans = Vec::new();
    let mut count = 0;
    for_each_shape_span(shape, delta, grid, &mut spans, |_, a, b| count += b - a + 1);
    Ok(count)
}

/// Cells whose centers lie in the closed shape itself (no band).
pub fn rasterize_shapes_fill(shapes: &[Shape], grid: &GridSpec) -> Result<GridRaster> {
    require_planar(grid)?;
    Ok(paint_union(shapes, 0.0, grid))
}

/// Cellwise OR of rasters on one grid.
pub fn union_raster(rasters: &[GridRaster]) -> Result<GridRaster> {
    let first = rasters.first().ok_or(Error::Empty("union of no rasters"))?;
    let mut out = first.clone();
    for r in &rasters[1..] {
        out.union_with(r)?;
    }
    Ok(out)
}

/// `|A ∩ B|` at cell resolution.
pub fn intersection_area(a: &GridRaster, b: &GridRaster) -> Result<f64> {
    a.same_grid(b)?;
    let count: usize = a.words.iter().zip(&b.words).map(|(x, y)| (x & y).count_ones() as usize).sum();
    Ok(count as f64 * a.grid.cell_volume())
}

/// Longest run of filled cells parallel to `axis` times the cell size.
pub fn max_inscribed_interval(raster: &GridRaster, axis: usize) -> Result<f64> {
    max_inscribed_interval_within(raster, axis, f64::NEG_INFINITY, f64::INFINITY)
}

/// As [`max_inscribed_interval`], restricted to grid lines whose cross
/// coordinate (cell center) lies in `[cross_lo, cross_hi]`.
pub fn max_inscribed_interval_within(raster: &GridRaster, axis: usize, cross_lo: f64, cross_hi: f64) -> Result<f64> {
    let grid = raster.grid();
    require_planar(grid)?;
    if axis > 1 {
        return Err(invalid!("axis must be 0 or 1, got {axis}"));
    }
    let n = grid.n;
    let cross = 1 - axis;
    let Some((l0, l1)) = grid.centers_within(cross, cross_lo, cross_hi) else { return Ok(0.0) };
    let mut best = 0usize;
    if axis == 0 {
        for row in l0..=l1 {
            for (a, b) in raster.runs(row) {
                best = best.max(b - a + 1);
            }
        }
    } else {
        for col in l0..=l1 {
            let mut run = 0usize;
            for row in 0..n {
                if raster.get(&[col, row]) {
                    run += 1;
                    best = best.max(run);
                } else {
                    run = 0;
                }
            }
        }
    }
    Ok(best as f64 * grid.cell_size(axis))
}

/// A level band used by the Monte Carlo estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelBand {
    pub phase: PhaseSpec,
    pub center: Vec<f64>,
    pub level: f64,
}

impl LevelBand {
    pub fn new(phase: PhaseSpec, center: Vec<f64>, level: f64) -> Result<Self> {
        if center.len() != phase.dim() {
            return Err(Error::DimensionMismatch { expected: phase.dim(), got: center.len() });
        }
        Ok(LevelBand { phase, center, level })
    }

    pub fn contains(&self, y: &[f64], delta: f64) -> bool {
        (self.phase.eval_unchecked(&self.center, y) - self.level).abs() <= delta
    }
}

/// Fewer samples than this flag the estimate as low confidence.
pub const MIN_CONFIDENT_SAMPLES: usize = 100_000;
/// Fewer hits than this flag the estimate as low confidence.
pub const MIN_CONFIDENT_HITS: usize = 10;
const MC_CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McEstimate {
    pub estimate: f64,
    /// Binomial standard error `V·sqrt(p(1-p)/N)`.
    pub std_error: f64,
    pub hits: usize,
    pub samples: usize,
    pub low_confidence: bool,
}

impl McEstimate {
    pub fn relative_error(&self) -> f64 {
        if self.estimate > 0.0 {
            self.std_error / self.estimate
        } else {
            f64::INFINITY
        }
    }
}

/// Measure of the points of `bounds` lying in every band, by uniform
/// sampling. Samples are drawn in fixed chunks with per-chunk streams, so the
/// result depends only on `(seed, samples)`.
pub fn monte_carlo_measure(bands: &[LevelBand], delta: f64, bounds: &Aabb, samples: usize, seed: u64) -> Result<McEstimate> {
    if bands.is_empty() {
        return Err(Error::Empty("monte_carlo_measure needs at least one band"));
    }
    let d = bounds.dim();
    if bands.iter().any(|b| b.phase.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: bands[0].phase.dim() });
    }
    if !(delta > 0.0) {
        return Err(invalid!("delta must be positive"));
    }
    let chunks = samples.div_ceil(MC_CHUNK);
    let count_chunk = |k: usize| -> usize {
        let mut rng = substream(seed, k as u64);
        let take = MC_CHUNK.min(samples - k * MC_CHUNK);
        let mut y = vec![0.0; d];
        let mut hits = 0;
        for _ in 0..take {
            for (a, c) in y.iter_mut().enumerate() {
                *c = rng.random_range(bounds.lo[a]..bounds.hi[a]);
            }
            if bands.iter().all(|b| b.contains(&y, delta)) {
                hits += 1;
            }
        }
        hits
    };
    #[cfg(feature = "parallel")]
    let hits: usize = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(count_chunk).sum()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: usize = (0..chunks).map(count_chunk).sum();

    let volume = bounds.volume();
    if samples == 0 || hits == 0 {
        return Ok(McEstimate { estimate: 0.0, std_error: 0.0, hits: 0, samples, low_confidence: true });
    }
    let p = hits as f64 / samples as f64;
    Ok(McEstimate {
        estimate: volume * p,
        std_error: volume * (p * (1.0 - p) / samples as f64).sqrt(),
        hits,
        samples,
        low_confidence: samples < MIN_CONFIDENT_SAMPLES || hits < MIN_CONFIDENT_HITS,
    })
}

/// `|Σ_a^δ ∩ Σ_b^δ|` inside `bounds`.
pub fn monte_carlo_intersection(a: &LevelBand, b: &LevelBand, delta: f64, bounds: &Aabb, samples: usize, seed: u64) -> Result<McEstimate> {
    monte_carlo_measure(&[a.clone(), b.clone()], delta, bounds, samples, seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RefinementStep {
    pub cells_per_axis: usize,
    pub area: f64,
    /// Change from the previous (coarser) grid; zero for the first.
    pub change: f64,
}

/// Rebuilds a raster on successively finer grids and records the areas.
pub fn refinement_series<F>(grids: &[GridSpec], mut build: F) -> Result<Vec<RefinementStep>>
where
    F: FnMut(&GridSpec) -> Result<GridRaster>,
{
    if grids.windows(2).any(|w| w[1].n <= w[0].n) {
        return Err(invalid!("refinement grids must strictly increase in n"));
    }
    let mut out: Vec<RefinementStep> = Vec::with_capacity(grids.len());
    for g in grids {
        let area = build(g)?.area();
        let change = out.last().map_or(0.0, |p| area - p.area);
        out.push(RefinementStep { cells_per_axis: g.n, area, change });
    }
    Ok(out)
}
