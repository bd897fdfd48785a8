//! Parameter sets: Cantor-type interval sets, weighted point clouds standing
//! in for fractal measures, separated lattices and Perron trees, with
//! Frostman-ratio and box-counting diagnostics.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::invalid;
use crate::linalg::least_squares;
use crate::rng::seeded;
use crate::{Error, Result};

pub const MAX_CANTOR_DEPTH: u32 = 20;

/// Sorted, pairwise-disjoint closed intervals in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
    depth: u32,
}

impl IntervalSet {
    /// Validates ordering and disjointness. Degenerate intervals `[p, p]` are
    /// allowed so a single point can act as one factor of a product set.
    pub fn new(intervals: Vec<(f64, f64)>, depth: u32) -> Result<Self> {
        for (i, &(a, b)) in intervals.iter().enumerate() {
            if !(a <= b) || a < 0.0 || b > 1.0 {
                return Err(invalid!("interval [{a}, {b}] is not inside [0, 1]"));
            }
            if i > 0 && intervals[i - 1].1 >= a {
                return Err(invalid!("intervals overlap or are unsorted at index {i}"));
            }
        }
        Ok(IntervalSet { intervals, depth })
    }

    pub fn singleton(p: f64) -> Result<Self> {
        IntervalSet::new(vec![(p, p)], 0)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn max_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).fold(0.0, f64::max)
    }

    pub fn contains(&self, x: f64) -> bool {
        let idx = self.intervals.partition_point(|&(_, b)| b < x);
        self.intervals.get(idx).is_some_and(|&(a, b)| a <= x && x <= b)
    }

    /// Common length when every interval has the same length.
    fn uniform_length(&self) -> Option<f64> {
        let first = self.intervals.first()?;
        let len = first.1 - first.0;
        self.intervals
            .iter()
            .all(|(a, b)| ((b - a) - len).abs() <= 1e-12 * len.max(1e-300))
            .then_some(len)
    }
}

fn check_depth(depth: u32) -> Result<()> {
    if depth > MAX_CANTOR_DEPTH {
        Err(invalid!("depth {depth} exceeds {MAX_CANTOR_DEPTH}"))
    } else {
        Ok(())
    }
}

/// Stage `depth` of the middle-thirds Cantor set: `2^depth` intervals of
/// length `3^-depth`.
pub fn cantor_middle_thirds(depth: u32) -> Result<IntervalSet> {
    check_depth(depth)?;
    let mut lefts: Vec<u64> = vec![0];
    for _ in 0..depth {
        lefts = lefts.iter().flat_map(|&l| [3 * l, 3 * l + 2]).collect();
    }
    let scale = 3f64.powi(depth as i32);
    let intervals = lefts.iter().map(|&l| (l as f64 / scale, (l + 1) as f64 / scale)).collect();
    Ok(IntervalSet { intervals, depth })
}

/// Smith–Volterra–Cantor set: stage `n` removes an open middle interval of
/// length `4^-n` from each of the `2^(n-1)` pieces. Total length after
/// `depth` stages is `1 - (1 - 2^-depth)/2`.
pub fn fat_cantor(depth: u32) -> Result<IntervalSet> {
    check_depth(depth)?;
    let mut pieces = vec![(0.0f64, 1.0f64)];
    for n in 1..=depth {
        let gap = 0.25f64.powi(n as i32);
        pieces = pieces
            .iter()
            .flat_map(|&(a, b)| {
                let mid = 0.5 * (a + b);
                [(a, mid - 0.5 * gap), (mid + 0.5 * gap, b)]
            })
            .collect();
    }
    Ok(IntervalSet { intervals: pieces, depth })
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Aabb {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Aabb {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(invalid!("box corners must have equal nonzero length"));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a <= b)) {
            return Err(invalid!("box has lo > hi"));
        }
        Ok(Aabb { lo, hi })
    }

    pub fn cube(dim: usize, lo: f64, hi: f64) -> Self {
        Aabb { lo: vec![lo; dim], hi: vec![hi; dim] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.dim() && p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (a, b))| *a <= *v && *v <= *b)
    }

    pub fn intersect(&self, other: &Aabb) -> Option<Aabb> {
        let lo: Vec<f64> = self.lo.iter().zip(&other.lo).map(|(a, b)| a.max(*b)).collect();
        let hi: Vec<f64> = self.hi.iter().zip(&other.hi).map(|(a, b)| a.min(*b)).collect();
        lo.iter().zip(&hi).all(|(a, b)| a < b).then_some(Aabb { lo, hi })
    }
}

/// Weighted finite point cloud standing in for a measure `μ` on a set `E`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
    bounds: Aabb,
    claimed_exponent: Option<f64>,
    min_separation: Option<f64>,
}

impl PointSet {
    /// Builds a point set from `points` with uniform weights.
    pub fn uniform(dim: usize, points: &[Vec<f64>], bounds: Aabb) -> Result<Self> {
        let n = points.len();
        let w = if n == 0 { 0.0 } else { 1.0 / n as f64 };
        PointSet::weighted(dim, points, vec![w; n], bounds)
    }

    /// Weights must be nonnegative and sum to one within `1e-12`.
    pub fn weighted(dim: usize, points: &[Vec<f64>], weights: Vec<f64>, bounds: Aabb) -> Result<Self> {
        if bounds.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: bounds.dim() });
        }
        if weights.len() != points.len() {
            return Err(invalid!("{} weights for {} points", weights.len(), points.len()));
        }
        let mut coords = Vec::with_capacity(dim * points.len());
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            if !bounds.contains(p) {
                return Err(Error::OutsideBox { index: i });
            }
            coords.extend_from_slice(p);
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(invalid!("weights must be nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if !points.is_empty() && (total - 1.0).abs() > 1e-12 {
            return Err(invalid!("weights sum to {total}, not 1"));
        }
        Ok(PointSet { dim, coords, weights, bounds, claimed_exponent: None, min_separation: None })
    }

    pub fn empty(bounds: Aabb) -> Self {
        PointSet {
            dim: bounds.dim(),
            coords: Vec::new(),
            weights: Vec::new(),
            bounds,
            claimed_exponent: None,
            min_separation: None,
        }
    }

    pub fn with_claimed_exponent(mut self, a: Option<f64>) -> Self {
        self.claimed_exponent = a;
        self
    }

    /// Records a separation bound after checking every pair satisfies it.
    pub fn with_min_separation(mut self, sep: f64) -> Result<Self> {
        let found = self.min_pairwise_distance();
        if found < sep {
            return Err(invalid!("points are {found} apart, below the claimed {sep}"));
        }
        self.min_separation = Some(sep);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bounds(&self) -> &Aabb {
        &self.bounds
    }

    pub fn claimed_exponent(&self) -> Option<f64> {
        self.claimed_exponent
    }

    pub fn min_separation(&self) -> Option<f64> {
        self.min_separation
    }

    /// Brute-force minimum distance over all pairs (`∞` below two points).
    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                best = best.min(crate::phase::distance(self.point(i), self.point(j)));
            }
        }
        best
    }

    /// Same points, coordinates multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> PointSet {
        let scale_box = |v: &[f64]| v.iter().map(|c| c * factor).collect::<Vec<_>>();
        let (lo, hi) = (scale_box(&self.bounds.lo), scale_box(&self.bounds.hi));
        let (lo, hi): (Vec<f64>, Vec<f64>) =
            lo.iter().zip(&hi).map(|(a, b)| (a.min(*b), a.max(*b))).unzip();
        PointSet {
            dim: self.dim,
            coords: self.coords.iter().map(|c| c * factor).collect(),
            weights: self.weights.clone(),
            bounds: Aabb { lo, hi },
            claimed_exponent: self.claimed_exponent,
            min_separation: self.min_separation.map(|s| s * factor.abs()),
        }
    }
}

/// Seeded uniform samples inside every cell of `horizontal × vertical`
/// (first factor is the x-coordinate).
pub fn product_point_cloud(
    horizontal: &IntervalSet,
    vertical: &IntervalSet,
    samples_per_cell: usize,
    seed: u64,
) -> Result<PointSet> {
    if samples_per_cell == 0 {
        return Err(invalid!("samples_per_cell must be at least 1"));
    }
    let mut rng = seeded(seed);
    let mut pts = Vec::with_capacity(horizontal.len() * vertical.len() * samples_per_cell);
    for &(ya, yb) in vertical.intervals() {
        for &(xa, xb) in horizontal.intervals() {
            for _ in 0..samples_per_cell {
                let u: f64 = rng.random();
                let v: f64 = rng.random();
                pts.push(vec![xa + u * (xb - xa), ya + v * (yb - ya)]);
            }
        }
    }
    let hull = |s: &IntervalSet| {
        let ivs = s.intervals();
        (ivs.first().map_or(0.0, |i| i.0), ivs.last().map_or(0.0, |i| i.1))
    };
    let (x0, x1) = hull(horizontal);
    let (y0, y1) = hull(vertical);
    let bounds = Aabb::new(vec![x0, y0], vec![x1, y1])?;
    let cells = (horizontal.len() * vertical.len()) as f64;
    let exponent = match (horizontal.uniform_length(), vertical.uniform_length()) {
        (Some(a), Some(b)) => {
            let side = if a > 0.0 && b > 0.0 && (a - b).abs() > 1e-12 * a.max(b) {
                None
            } else {
                Some(a.max(b))
            };
            side.filter(|s| *s > 0.0 && *s < 1.0).map(|s| cells.ln() / (1.0 / s).ln())
        }
        _ => None,
    };
    Ok(PointSet::uniform(2, &pts, bounds)?.with_claimed_exponent(exponent))
}

/// One point per unit square of `[0, q]²`, offset uniformly in
/// `[0.25, 0.75]²`, so distinct points are at least `1/2` apart.
pub fn separated_lattice(q: usize, seed: u64) -> Result<PointSet> {
    if q < 2 {
        return Err(invalid!("separated_lattice needs q >= 2, got {q}"));
    }
    let mut rng = seeded(seed);
    let mut pts = Vec::with_capacity(q * q);
    for j in 0..q {
        for i in 0..q {
            let u = rng.random_range(0.25..=0.75);
            let v = rng.random_range(0.25..=0.75);
            pts.push(vec![i as f64 + u, j as f64 + v]);
        }
    }
    let set = PointSet::uniform(2, &pts, Aabb::cube(2, 0.0, q as f64))?;
    Ok(PointSet { min_separation: Some(0.5), ..set })
}

/// Thickening radius `q^(-2/s)` that makes the rescaled lattice uniformly
/// `s`-Frostman.
pub fn lattice_thickening_radius(q: usize, s: f64) -> f64 {
    (q as f64).powf(-2.0 / s)
}

/// Empirical Frostman constant `max μ(B(p, r)) / r^a` over data points `p`
/// and the given radii, by exact counting in closed balls.
pub fn frostman_ratio(points: &PointSet, a: f64, radii: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Empty("frostman_ratio needs at least one point"));
    }
    if !(a > 0.0) || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(invalid!("exponent and radii must be positive"));
    }
    let n = points.len();
    let mut best = 0.0f64;
    let mut dist_w: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut prefix: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        dist_w.clear();
        let c = points.point(i);
        for j in 0..n {
            dist_w.push((crate::phase::distance(c, points.point(j)), points.weights()[j]));
        }
        dist_w.sort_by(|p, q| p.0.total_cmp(&q.0));
        prefix.clear();
        let mut acc = 0.0;
        for (_, w) in &dist_w {
            acc += w;
            prefix.push(acc);
        }
        for &r in radii {
            let k = dist_w.partition_point(|(d, _)| *d <= r);
            let mass = if k == 0 { 0.0 } else { prefix[k - 1] };
            best = best.max(mass / r.powf(a));
        }
    }
    Ok(best)
}

/// Per-radius maxima of `μ(B(p, r)) / r^a`, useful to inspect growth across scales.
pub fn frostman_profile(points: &PointSet, a: f64, radii: &[f64]) -> Result<Vec<(f64, f64)>> {
    radii.iter().map(|&r| Ok((r, frostman_ratio(points, a, &[r])?))).collect()
}

/// Least-squares slope of `log N(s)` against `log(1/s)` where `N(s)` counts
/// occupied boxes of side `s` anchored at the origin.
pub fn box_dimension(points: &PointSet, scales: &[f64]) -> Result<f64> {
    if scales.len() < 3 {
        return Err(invalid!("box_dimension needs at least 3 scales"));
    }
    if scales.iter().any(|s| !(*s > 0.0)) {
        return Err(invalid!("scales must be positive"));
    }
    let lo = scales.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scales.iter().copied().fold(0.0, f64::max);
    if hi / lo < 4.0 {
        return Err(invalid!("scales must span at least two dyadic octaves"));
    }
    if points.is_empty() {
        return Err(Error::Empty("box_dimension needs at least one point"));
    }
    let mut xs = Vec::with_capacity(scales.len());
    let mut ys = Vec::with_capacity(scales.len());
    let mut keys: Vec<Vec<i64>> = Vec::with_capacity(points.len());
    for &s in scales {
        keys.clear();
        keys.extend(points.points().map(|p| p.iter().map(|c| (c / s).floor() as i64).collect()));
        keys.sort_unstable();
        keys.dedup();
        xs.push((1.0 / s).ln());
        ys.push((keys.len() as f64).ln());
    }
    if ys.iter().all(|y| *y == ys[0]) {
        return Err(Error::DegenerateFit("box counts do not change across scales".into()));
    }
    least_squares(&xs, &ys)
        .map(|fit| fit.slope)
        .ok_or_else(|| Error::DegenerateFit("scales coincide".into()))
}

/// A planar triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Triangle {
    pub vertices: [[f64; 2]; 3],
}

impl Triangle {
    pub fn area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs()
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let [a, b, c] = self.vertices;
        let cross = |o: [f64; 2], u: [f64; 2], v: [f64; 2]| {
            (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0])
        };
        let scale = 1e-12 * (1.0 + self.area());
        let d1 = cross(a, b, p);
        let d2 = cross(b, c, p);
        let d3 = cross(c, a, p);
        let neg = d1 < -scale || d2 < -scale || d3 < -scale;
        let pos = d1 > scale || d2 > scale || d3 > scale;
        !(neg && pos)
    }

    pub fn translated(&self, dx: f64) -> Triangle {
        let mut t = *self;
        for v in &mut t.vertices {
            v[0] += dx;
        }
        t
    }
}

/// Similarity ratio of each pairwise merge; sliding a sibling by half a base
/// width leaves a main triangle scaled by `3/4`.
pub const PERRON_MERGE_RATIO: f64 = 0.75;

/// Thin triangles of a Perron tree. Triangle `i` keeps its original direction:
/// the segment from its (translated) apex to the midpoint of its base.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TriangleSet {
    pub triangles: Vec<Triangle>,
    pub stage: u32,
    pub direction_count: usize,
    pub height: f64,
}

impl TriangleSet {
    pub fn base_area(&self) -> f64 {
        0.5 * self.height
    }

    /// Full-height segment `(base midpoint, apex)` inside triangle `i`.
    pub fn direction_segment(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        let [a, b, apex] = self.triangles[i].vertices;
        ([0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])], apex)
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.triangles.iter().any(|t| t.contains(p))
    }

    pub fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for t in &self.triangles {
            for v in t.vertices {
                for k in 0..2 {
                    lo[k] = lo[k].min(v[k]);
                    hi[k] = hi[k].max(v[k]);
                }
            }
        }
        (lo, hi)
    }
}

/// Perron tree over the triangle with base `[0, 1] × {0}` and apex
/// `(1/2, height)`.
///
/// The base is split into `2^stage` thin triangles. At level `ℓ` the blocks of
/// `2^(ℓ-1)` siblings are paired; the right block slides left by half the base
/// of its block's main triangle, and every merged pair then shifts so the new
/// main triangles tile a copy of the original scaled by [`PERRON_MERGE_RATIO`].
/// Stage 0 returns the base triangle itself.
pub fn perron_tree(stage: u32, height: f64) -> Result<TriangleSet> {
    if stage > 8 {
        return Err(invalid!("perron_tree stage must be in 0..=8, got {stage}"));
    }
    if !(height > 0.0) {
        return Err(invalid!("triangle height must be positive"));
    }
    let count = 1usize << stage;
    let base = 1.0 / count as f64;
    let alpha = PERRON_MERGE_RATIO;
    let mut shifts = vec![0.0f64; count];
    for level in 1..=stage {
        let block = 1usize << (level - 1);
        let main_base = block as f64 * base * alpha.powi(level as i32 - 1);
        let slide = 2.0 * (1.0 - alpha) * main_base;
        for (i, s) in shifts.iter_mut().enumerate() {
            let j = i / block;
            *s -= j.div_ceil(2) as f64 * slide;
        }
    }
    let apex = [0.5, height];
    let triangles = shifts
        .iter()
        .enumerate()
        .map(|(i, &dx)| {
            Triangle { vertices: [[i as f64 * base, 0.0], [(i + 1) as f64 * base, 0.0], apex] }.translated(dx)
        })
        .collect();
    Ok(TriangleSet { triangles, stage, direction_count: count, height })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_examples() {
        let c0 = cantor_middle_thirds(0).unwrap();
        assert_eq!(c0.intervals(), &[(0.0, 1.0)]);
        let c2 = cantor_middle_thirds(2).unwrap();
        let expect = [(0.0, 1.0 / 9.0), (2.0 / 9.0, 1.0 / 3.0), (2.0 / 3.0, 7.0 / 9.0), (8.0 / 9.0, 1.0)];
        for (a, b) in c2.intervals().iter().zip(expect) {
            assert!((a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15);
        }
        let c7 = cantor_middle_thirds(7).unwrap();
        assert_eq!(c7.len(), 128);
        assert!((c7.total_length() - 0.058_527_663_465_935_07).abs() < 1e-12);
        assert!(cantor_middle_thirds(21).is_err());
    }

    #[test]
    fn fat_cantor_examples() {
        assert!((fat_cantor(1).unwrap().total_length() - 0.75).abs() < 1e-15);
        assert!((fat_cantor(4).unwrap().total_length() - 0.53125).abs() < 1e-15);
        assert!((fat_cantor(20).unwrap().total_length() - 0.5).abs() < 1e-6);
        let f2 = fat_cantor(2).unwrap();
        assert_eq!(f2.len(), 4);
        assert!((f2.max_length() - 0.15625).abs() < 1e-15);
        assert!(fat_cantor(21).is_err());
    }

    #[test]
    fn interval_set_rejects_overlap() {
        assert!(IntervalSet::new(vec![(0.0, 0.5), (0.4, 0.6)], 0).is_err());
        assert!(IntervalSet::new(vec![(0.2, 0.1)], 0).is_err());
        assert!(IntervalSet::singleton(0.0).is_ok());
        let c = cantor_middle_thirds(3).unwrap();
        assert!(c.contains(0.0) && c.contains(1.0) && !c.contains(0.5));
    }

    #[test]
    fn product_cloud_examples() {
        let c0 = cantor_middle_thirds(0).unwrap();
        let single = product_point_cloud(&c0, &c0, 1, 3).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.weights(), &[1.0]);
        assert!(single.bounds().contains(single.point(0)));

        let c6 = cantor_middle_thirds(6).unwrap();
        let cc = product_point_cloud(&c6, &c6, 1, 3).unwrap();
        assert_eq!(cc.len(), 4096);
        let a = cc.claimed_exponent().unwrap();
        assert!((a - 2.0 * 2f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert!((a - 1.26186).abs() < 1e-5);
        let total: f64 = cc.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);

        let line = product_point_cloud(&c6, &IntervalSet::singleton(0.0).unwrap(), 1, 3).unwrap();
        assert!((line.claimed_exponent().unwrap() - 0.63093).abs() < 1e-5);
        assert!(line.points().all(|p| p[1] == 0.0));
        assert!(product_point_cloud(&c6, &c6, 0, 3).is_err());
    }

    #[test]
    fn product_cloud_is_reproducible() {
        let c4 = cantor_middle_thirds(4).unwrap();
        let a = product_point_cloud(&c4, &c4, 2, 17).unwrap();
        let b = product_point_cloud(&c4, &c4, 2, 17).unwrap();
        assert_eq!(a, b);
        let c = product_point_cloud(&c4, &c4, 2, 18).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn lattice_examples() {
        let p2 = separated_lattice(2, 0).unwrap();
        assert_eq!(p2.len(), 4);
        assert!(p2.min_pairwise_distance() >= 0.5);
        let p16 = separated_lattice(16, 0).unwrap();
        assert_eq!(p16.len(), 256);
        let unit = p16.scaled(1.0 / 16.0);
        assert!(unit.points().all(|p| p.iter().all(|c| (0.0..=1.0).contains(c))));
        assert!((lattice_thickening_radius(16, 1.5) - 0.024803141).abs() < 1e-8);
        assert!(separated_lattice(1, 0).is_err());
    }

    #[test]
    fn frostman_examples() {
        let one = PointSet::uniform(2, &[vec![0.5, 0.5]], Aabb::cube(2, 0.0, 1.0)).unwrap();
        assert_eq!(frostman_ratio(&one, 1.0, &[1.0]).unwrap(), 1.0);
        let empty = PointSet::empty(Aabb::cube(2, 0.0, 1.0));
        assert_eq!(frostman_ratio(&empty, 1.0, &[1.0]), Err(Error::Empty("frostman_ratio needs at least one point")));

        // 64 x 64 grid cloud, a = 2
        let pts: Vec<Vec<f64>> = (0..64 * 64)
            .map(|k| vec![((k % 64) as f64 + 0.5) / 64.0, ((k / 64) as f64 + 0.5) / 64.0])
            .collect();
        let grid = PointSet::uniform(2, &pts, Aabb::cube(2, 0.0, 1.0)).unwrap();
        let radii: Vec<f64> = (0..=6).map(|k| 2f64.powi(-k)).collect();
        let c = frostman_ratio(&grid, 2.0, &radii).unwrap();
        assert!(c <= 16.0, "grid Frostman constant {c}");
    }

    #[test]
    fn box_dimension_errors() {
        let one = PointSet::uniform(2, &[vec![0.5, 0.5]], Aabb::cube(2, 0.0, 1.0)).unwrap();
        assert!(box_dimension(&one, &[0.5, 0.25]).is_err());
        assert!(box_dimension(&one, &[0.5, 0.4, 0.3]).is_err());
        assert!(matches!(box_dimension(&one, &[0.5, 0.25, 0.125]), Err(Error::DegenerateFit(_))));
    }

    #[test]
    fn perron_stage_one_overlaps() {
        let t = perron_tree(1, 1.0).unwrap();
        assert_eq!(t.triangles.len(), 2);
        assert_eq!(t.direction_count, 2);
        // slide by half a base: overlap triangle has area 1/16
        let sum: f64 = t.triangles.iter().map(|t| t.area()).sum();
        assert!((sum - 0.5).abs() < 1e-15);
        assert!(perron_tree(9, 1.0).is_err());
        assert_eq!(perron_tree(0, 1.0).unwrap().triangles.len(), 1);
    }

    #[test]
    fn perron_segments_stay_inside_and_directions_are_distinct() {
        for stage in 0..=6 {
            let t = perron_tree(stage, 1.0).unwrap();
            let mut slopes = Vec::new();
            for i in 0..t.triangles.len() {
                let (p, q) = t.direction_segment(i);
                assert!((q[1] - p[1] - 1.0).abs() < 1e-15);
                for k in 0..100 {
                    let s = (k as f64 + 0.5) / 100.0;
                    let pt = [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])];
                    assert!(t.contains(pt));
                }
                slopes.push((q[0] - p[0]) / (q[1] - p[1]));
            }
            slopes.sort_by(f64::total_cmp);
            slopes.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            assert_eq!(slopes.len(), 1 << stage);
        }
    }
}
