//! Phase functions `φ(x, y)` whose level sets `{y : φ(x, y) = t}` are the
//! hypersurfaces being unioned, together with their first and mixed second
//! derivatives and the bordered rotational-curvature determinant
//!
//! ```text
//!        | 0          ∇_x φ     |
//!  det   |                      |
//!        | -(∇_y φ)ᵀ  ∂²_{xy} φ |
//! ```
//!
//! Every smooth family has closed-form derivatives. The central-difference
//! path ([`numeric_gradients`], [`numeric_rotational_curvature`]) only calls
//! [`PhaseSpec::eval`] and serves as the independent check.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::invalid;
use crate::linalg::determinant;
use crate::rng::seeded;
use crate::{Error, Result};

/// Central-difference step used by the numeric derivative path.
pub const FD_STEP: f64 = 1e-5;
/// Step for the four-point mixed stencil, whose roundoff grows like `ε|φ|/h²`.
pub const MIXED_FD_STEP: f64 = 1e-4;

/// Default nonlinearity of the diffeomorphism in `diffeo-distance`.
pub const DEFAULT_KAPPA: f64 = 0.3;

/// Default half-width of the configured box `[-w, w]^d`.
pub const DEFAULT_BOX_HALF_WIDTH: f64 = 2.0;

/// Residual accepted for sampled level-set points.
pub const LEVEL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PhaseKind {
    /// `|x - y|`
    UnitDistance,
    /// `x · y`
    DotProduct,
    /// `y_d - x_d - |y' - x'|²`
    TranslatedParaboloid,
    /// `|Φ(y) - x|` with `Φ(y) = y + κ (sin y₂, …, sin y_d, sin y₁)`
    DiffeoDistance,
    /// `max_i |y_i - x_i|`; not differentiable.
    MaxNorm,
    /// `x · y + t y₁ y₂ + ½ t² y₁²` in the plane, `t` frozen.
    BourgainCurve,
}

impl PhaseKind {
    pub const ALL: [PhaseKind; 6] = [
        PhaseKind::UnitDistance,
        PhaseKind::DotProduct,
        PhaseKind::TranslatedParaboloid,
        PhaseKind::DiffeoDistance,
        PhaseKind::MaxNorm,
        PhaseKind::BourgainCurve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PhaseKind::UnitDistance => "unit-distance",
            PhaseKind::DotProduct => "dot-product",
            PhaseKind::TranslatedParaboloid => "translated-paraboloid",
            PhaseKind::DiffeoDistance => "diffeo-distance",
            PhaseKind::MaxNorm => "max-norm",
            PhaseKind::BourgainCurve => "bourgain-curve",
        }
    }

    pub fn is_smooth(self) -> bool {
        !matches!(self, PhaseKind::MaxNorm)
    }
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PhaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PhaseKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid!("unknown phase kind `{s}`"))
    }
}

/// A member of the phase catalog with its dimension and parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhaseSpec {
    kind: PhaseKind,
    dim: usize,
    kappa: f64,
    time: f64,
    half_width: f64,
}

impl PhaseSpec {
    pub fn new(kind: PhaseKind, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(invalid!("phase dimension must be at least 2, got {dim}"));
        }
        if kind == PhaseKind::BourgainCurve && dim != 2 {
            return Err(invalid!("bourgain-curve is a planar phase (dim 2), got {dim}"));
        }
        Ok(PhaseSpec { kind, dim, kappa: DEFAULT_KAPPA, time: 0.0, half_width: DEFAULT_BOX_HALF_WIDTH })
    }

    /// Builds a spec from the textual config form: kind name, dimension and
    /// `(name, value)` parameters. Recognised names are `kappa`
    /// (diffeo-distance), `t` (bourgain-curve) and `box` (box half-width).
    pub fn from_parts(kind: &str, dim: usize, params: &[(&str, f64)]) -> Result<Self> {
        let mut spec = PhaseSpec::new(kind.parse()?, dim)?;
        for &(name, value) in params {
            spec = match name {
                "kappa" if spec.kind == PhaseKind::DiffeoDistance => spec.with_kappa(value)?,
                "t" if spec.kind == PhaseKind::BourgainCurve => spec.with_time(value),
                "box" => spec.with_box_half_width(value)?,
                _ => return Err(invalid!("parameter `{name}` does not apply to {}", spec.kind)),
            };
        }
        Ok(spec)
    }

    pub fn with_kappa(mut self, kappa: f64) -> Result<Self> {
        if !(kappa.abs() < 1.0) {
            return Err(invalid!("|kappa| must be < 1 for Φ to stay a diffeomorphism, got {kappa}"));
        }
        self.kappa = kappa;
        Ok(self)
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.time = t;
        self
    }

    pub fn with_box_half_width(mut self, w: f64) -> Result<Self> {
        if !(w > 0.0) {
            return Err(invalid!("box half-width must be positive, got {w}"));
        }
        self.half_width = w;
        Ok(self)
    }

    pub fn kind(&self) -> PhaseKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// The configured box is `[-w, w]^dim`.
    pub fn box_half_width(&self) -> f64 {
        self.half_width
    }

    fn check_dims(&self, x: &[f64], y: &[f64]) -> Result<()> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_dims(x, y)?;
        Ok(self.eval_unchecked(x, y))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        let d = self.dim;
        match self.kind {
            PhaseKind::UnitDistance => distance(x, y),
            PhaseKind::DotProduct => dot(x, y),
            PhaseKind::TranslatedParaboloid => {
                let spread: f64 = (0..d - 1).map(|i| (y[i] - x[i]) * (y[i] - x[i])).sum();
                y[d - 1] - x[d - 1] - spread
            }
            PhaseKind::DiffeoDistance => {
                let mut s = 0.0;
                for i in 0..d {
                    let v = self.diffeo_component(y, i) - x[i];
                    s += v * v;
                }
                s.sqrt()
            }
            PhaseKind::MaxNorm => x.iter().zip(y).map(|(a, b)| (b - a).abs()).fold(0.0, f64::max),
            PhaseKind::BourgainCurve => {
                let t = self.time;
                dot(x, y) + t * y[0] * y[1] + 0.5 * t * t * y[0] * y[0]
            }
        }
    }

    fn diffeo_component(&self, y: &[f64], i: usize) -> f64 {
        y[i] + self.kappa * y[(i + 1) % self.dim].sin()
    }

    /// `Φ(y)` for the diffeo-distance family (identity shift for other kinds).
    pub fn diffeo(&self, y: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| self.diffeo_component(y, i)).collect()
    }

    /// Row-major Jacobian `DΦ(y)`.
    pub fn diffeo_jacobian(&self, y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut jac = vec![0.0; d * d];
        for k in 0..d {
            jac[k * d + k] = 1.0;
            let j = (k + 1) % d;
            jac[k * d + j] += self.kappa * y[j].cos();
        }
        jac
    }

    /// Solves `Φ(y) = target` by fixed-point iteration (a contraction for |κ| < 1).
    pub fn diffeo_inverse(&self, target: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut y = target.to_vec();
        for _ in 0..200 {
            let next: Vec<f64> =
                (0..d).map(|i| target[i] - self.kappa * y[(i + 1) % d].sin()).collect();
            let change = next.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            y = next;
            if change < 1e-15 {
                break;
            }
        }
        y
    }

    /// Smallest `|det DΦ|` over `samples` seeded points of the configured box.
    pub fn min_diffeo_jacobian(&self, samples: usize, seed: u64) -> f64 {
        let mut rng = seeded(seed);
        let w = self.half_width;
        (0..samples)
            .map(|_| {
                let y: Vec<f64> = (0..self.dim).map(|_| rng.random_range(-w..=w)).collect();
                determinant(&self.diffeo_jacobian(&y), self.dim).abs()
            })
            .fold(f64::INFINITY, f64::min)
    }

    fn require_smooth(&self, op: &'static str) -> Result<()> {
        if self.kind.is_smooth() {
            Ok(())
        } else {
            Err(Error::Unsupported { op, kind: self.kind.name() })
        }
    }

    /// Closed-form `∇_x φ`, `∇_y φ` and `∂²φ/∂x_i∂y_j`.
    pub fn gradients(&self, x: &[f64], y: &[f64]) -> Result<Gradients> {
        self.check_dims(x, y)?;
        self.require_smooth("gradients")?;
        let d = self.dim;
        let mut g = Gradients::zeros(d);
        match self.kind {
            PhaseKind::UnitDistance => {
                let r = distance(x, y);
                if r == 0.0 {
                    return Err(Error::Singular(self.kind.name()));
                }
                let u: Vec<f64> = (0..d).map(|i| (y[i] - x[i]) / r).collect();
                for i in 0..d {
                    g.grad_x[i] = -u[i];
                    g.grad_y[i] = u[i];
                    for j in 0..d {
                        let kron = if i == j { 1.0 } else { 0.0 };
                        g.mixed[i * d + j] = (u[i] * u[j] - kron) / r;
                    }
                }
            }
            PhaseKind::DotProduct | PhaseKind::BourgainCurve => {
                g.grad_x.copy_from_slice(y);
                g.grad_y.copy_from_slice(x);
                if self.kind == PhaseKind::BourgainCurve {
                    let t = self.time;
                    g.grad_y[0] += t * y[1] + t * t * y[0];
                    g.grad_y[1] += t * y[0];
                }
                for i in 0..d {
                    g.mixed[i * d + i] = 1.0;
                }
            }
            PhaseKind::TranslatedParaboloid => {
                for i in 0..d - 1 {
                    let a = y[i] - x[i];
                    g.grad_x[i] = 2.0 * a;
                    g.grad_y[i] = -2.0 * a;
                    g.mixed[i * d + i] = 2.0;
                }
                g.grad_x[d - 1] = -1.0;
                g.grad_y[d - 1] = 1.0;
            }
            PhaseKind::DiffeoDistance => {
                let v: Vec<f64> = (0..d).map(|i| self.diffeo_component(y, i) - x[i]).collect();
                let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if r == 0.0 {
                    return Err(Error::Singular(self.kind.name()));
                }
                let u: Vec<f64> = v.iter().map(|c| c / r).collect();
                let jac = self.diffeo_jacobian(y);
                // uᵀ DΦ
                let ut_jac: Vec<f64> =
                    (0..d).map(|j| (0..d).map(|k| u[k] * jac[k * d + j]).sum()).collect();
                for i in 0..d {
                    g.grad_x[i] = -u[i];
                    g.grad_y[i] = ut_jac[i];
                    for j in 0..d {
                        g.mixed[i * d + j] = (u[i] * ut_jac[j] - jac[i * d + j]) / r;
                    }
                }
            }
            PhaseKind::MaxNorm => unreachable!("rejected by require_smooth"),
        }
        Ok(g)
    }

    /// Bordered determinant from the closed-form derivatives.
    pub fn rotational_curvature(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(self.gradients(x, y)?.bordered_determinant())
    }

    pub fn curvature_sample(&self, x: &[f64], y: &[f64]) -> Result<CurvatureSample> {
        let g = self.gradients(x, y)?;
        Ok(CurvatureSample {
            x: x.to_vec(),
            y: y.to_vec(),
            det_value: g.bordered_determinant(),
            grad_norms: (norm(&g.grad_x), norm(&g.grad_y)),
        })
    }

    /// Points `y` with `|φ(x, y) - t| ≤ 1e-10`, one per ray. Distance and
    /// paraboloid kinds use closed forms; the rest bisect along rays from an
    /// anchor where `φ` vanishes. Rays that leave the configured box without
    /// crossing the level are skipped.
    pub fn level_points(&self, x: &[f64], t: f64, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if count == 0 {
            return Err(invalid!("level_points needs count >= 1"));
        }
        let d = self.dim;
        let w = self.half_width;
        let mut rng = seeded(seed);
        let dirs = directions(d, count, &mut rng);
        let mut out = Vec::with_capacity(count);
        for dir in &dirs {
            let candidate = match self.kind {
                PhaseKind::UnitDistance if t >= 0.0 => {
                    Some((0..d).map(|i| x[i] + t * dir[i]).collect::<Vec<_>>())
                }
                PhaseKind::MaxNorm if t >= 0.0 => {
                    let sup = dir.iter().map(|c| c.abs()).fold(0.0, f64::max);
                    Some((0..d).map(|i| x[i] + t * dir[i] / sup).collect())
                }
                PhaseKind::DotProduct => {
                    let xx = dot(x, x);
                    if xx == 0.0 {
                        None
                    } else {
                        // component of dir orthogonal to x, scaled by a seeded offset
                        let along = dot(dir, x) / xx;
                        let perp: Vec<f64> = (0..d).map(|i| dir[i] - along * x[i]).collect();
                        let pn = norm(&perp);
                        let s = rng.random_range(-w..=w);
                        Some(
                            (0..d)
                                .map(|i| {
                                    let p = if pn > 0.0 { perp[i] / pn } else { 0.0 };
                                    t * x[i] / xx + s * p
                                })
                                .collect(),
                        )
                    }
                }
                PhaseKind::TranslatedParaboloid => {
                    let rho = rng.random_range(0.0..=1.0);
                    let lateral: Vec<f64> = if d == 2 {
                        vec![if dir[0] >= 0.0 { 1.0 } else { -1.0 }]
                    } else {
                        let head = &dir[..d - 1];
                        let n = norm(head);
                        head.iter().map(|c| c / n).collect()
                    };
                    let mut y: Vec<f64> = (0..d - 1).map(|i| x[i] + rho * lateral[i]).collect();
                    y.push(x[d - 1] + t + rho * rho);
                    Some(y)
                }
                _ => {
                    let anchor = match self.kind {
                        PhaseKind::DiffeoDistance => self.diffeo_inverse(x),
                        PhaseKind::BourgainCurve => vec![0.0; d],
                        _ => x.to_vec(),
                    };
                    self.bisect_ray(x, t, &anchor, dir)
                }
            };
            if let Some(y) = candidate {
                let inside = y.iter().all(|c| c.abs() <= w);
                if inside && (self.eval_unchecked(x, &y) - t).abs() <= LEVEL_TOLERANCE {
                    out.push(y);
                }
            }
        }
        if out.is_empty() {
            Err(Error::EmptyLevel)
        } else {
            Ok(out)
        }
    }

    fn bisect_ray(&self, x: &[f64], t: f64, anchor: &[f64], dir: &[f64]) -> Option<Vec<f64>> {
        let w = self.half_width;
        // exit distance of the ray from the box
        let mut s_max = f64::INFINITY;
        for (a, v) in anchor.iter().zip(dir) {
            if *v > 0.0 {
                s_max = s_max.min((w - a) / v);
            } else if *v < 0.0 {
                s_max = s_max.min((-w - a) / v);
            }
        }
        if !(s_max > 0.0) || !s_max.is_finite() {
            return None;
        }
        let point = |s: f64| -> Vec<f64> { anchor.iter().zip(dir).map(|(a, v)| a + s * v).collect() };
        let g = |s: f64| self.eval_unchecked(x, &point(s)) - t;
        const STEPS: usize = 512;
        let mut lo = 0.0;
        let mut g_lo = g(lo);
        if g_lo == 0.0 {
            return Some(point(0.0));
        }
        for k in 1..=STEPS {
            let hi = s_max * k as f64 / STEPS as f64;
            let g_hi = g(hi);
            if g_hi == 0.0 {
                return Some(point(hi));
            }
            if (g_lo < 0.0) != (g_hi < 0.0) {
                let (mut a, mut b) = (lo, hi);
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if m <= a || m >= b {
                        break;
                    }
                    let gm = g(m);
                    if gm == 0.0 {
                        return Some(point(m));
                    }
                    if (gm < 0.0) == (g_lo < 0.0) {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                let (ga, gb) = (g(a).abs(), g(b).abs());
                return Some(point(if ga <= gb { a } else { b }));
            }
            lo = hi;
            g_lo = g_hi;
        }
        None
    }
}

/// First and mixed second derivatives of a phase at one point pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub grad_x: Vec<f64>,
    pub grad_y: Vec<f64>,
    /// Row-major `d × d`, entry `(i, j)` is `∂²φ/∂x_i∂y_j`.
    pub mixed: Vec<f64>,
}

impl Gradients {
    fn zeros(d: usize) -> Self {
        Gradients { grad_x: vec![0.0; d], grad_y: vec![0.0; d], mixed: vec![0.0; d * d] }
    }

    pub fn dim(&self) -> usize {
        self.grad_x.len()
    }

    pub fn mixed(&self, i: usize, j: usize) -> f64 {
        self.mixed[i * self.dim() + j]
    }

    /// `(d+1) × (d+1)` row-major bordered matrix.
    pub fn bordered_matrix(&self) -> Vec<f64> {
        let d = self.dim();
        let m = d + 1;
        let mut out = vec![0.0; m * m];
        out[1..m].copy_from_slice(&self.grad_x);
        for i in 0..d {
            out[(i + 1) * m] = -self.grad_y[i];
            out[(i + 1) * m + 1..(i + 2) * m].copy_from_slice(&self.mixed[i * d..(i + 1) * d]);
        }
        out
    }

    pub fn bordered_determinant(&self) -> f64 {
        determinant(&self.bordered_matrix(), self.dim() + 1)
    }
}

/// One evaluation of the curvature determinant with gradient magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub det_value: f64,
    /// `(|∇_x φ|, |∇_y φ|)`
    pub grad_norms: (f64, f64),
}

/// Central-difference derivatives of `spec` using only [`PhaseSpec::eval`].
pub fn numeric_gradients(spec: &PhaseSpec, x: &[f64], y: &[f64], h: f64) -> Result<Gradients> {
    numeric_gradients_with(spec, x, y, h, MIXED_FD_STEP)
}

/// Central differences with step `h` for gradients and `h_mixed` for the mixed block.
pub fn numeric_gradients_with(spec: &PhaseSpec, x: &[f64], y: &[f64], h: f64, h_mixed: f64) -> Result<Gradients> {
    spec.check_dims(x, y)?;
    spec.require_smooth("numeric_gradients")?;
    let d = spec.dim();
    let f = |a: &[f64], b: &[f64]| spec.eval_unchecked(a, b);
    let mut g = Gradients::zeros(d);
    let mut xp = x.to_vec();
    let mut yp = y.to_vec();
    for i in 0..d {
        xp[i] = x[i] + h;
        let plus = f(&xp, y);
        xp[i] = x[i] - h;
        let minus = f(&xp, y);
        xp[i] = x[i];
        g.grad_x[i] = (plus - minus) / (2.0 * h);

        yp[i] = y[i] + h;
        let plus = f(x, &yp);
        yp[i] = y[i] - h;
        let minus = f(x, &yp);
        yp[i] = y[i];
        g.grad_y[i] = (plus - minus) / (2.0 * h);
    }
    for i in 0..d {
        for j in 0..d {
            let mut corner = |sx: f64, sy: f64| {
                xp[i] = x[i] + sx * h_mixed;
                yp[j] = y[j] + sy * h_mixed;
                let v = f(&xp, &yp);
                xp[i] = x[i];
                yp[j] = y[j];
                v
            };
            let v = corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0) + corner(-1.0, -1.0);
            g.mixed[i * d + j] = v / (4.0 * h_mixed * h_mixed);
        }
    }
    Ok(g)
}

pub fn numeric_rotational_curvature(spec: &PhaseSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    Ok(numeric_gradients(spec, x, y, FD_STEP)?.bordered_determinant())
}

/// Point `(X, Y, Z) = (-t y₂ - t² y₁, -y₂ - t y₁, t)` on the frozen-parameter
/// characteristic curve (`w₁ = 0`, `w₂ = -y₂`) of the Bourgain phase.
pub fn bourgain_curve_point(y1: f64, y2: f64, t: f64) -> [f64; 3] {
    [-t * y2 - t * t * y1, -y2 - t * y1, t]
}

/// `count` equally spaced points of the curve for `t ∈ [-1, 1]`.
pub fn bourgain_curve(y1: f64, y2: f64, count: usize) -> Vec<[f64; 3]> {
    match count {
        0 => Vec::new(),
        1 => vec![bourgain_curve_point(y1, y2, 0.0)],
        _ => (0..count)
            .map(|k| bourgain_curve_point(y1, y2, -1.0 + 2.0 * k as f64 / (count - 1) as f64))
            .collect(),
    }
}

fn directions(d: usize, count: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    if d == 2 {
        let step = 2.0 * core::f64::consts::PI / count as f64;
        let offset = rng.random_range(0.0..step);
        (0..count)
            .map(|k| {
                let a = offset + step * k as f64;
                vec![a.cos(), a.sin()]
            })
            .collect()
    } else {
        (0..count)
            .map(|_| loop {
                let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect();
                let n = norm(&v);
                if n > 1e-3 && n <= 1.0 {
                    break v.iter().map(|c| c / n).collect();
                }
            })
            .collect()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

impl fmt::Display for PhaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(d={}", self.kind, self.dim)?;
        match self.kind {
            PhaseKind::DiffeoDistance => write!(f, ", kappa={}", self.kappa)?,
            PhaseKind::BourgainCurve => write!(f, ", t={}", self.time)?,
            _ => {}
        }
        f.write_str(")")
    }
}

impl PhaseSpec {
    /// Short label used in reports.
    pub fn label(&self) -> alloc::string::String {
        self.to_string()
    }
}
