//! Desk-scale laboratory for unions of level-set hypersurfaces.
//!
//! The crate is `no_std` (it needs `alloc`) and holds every numerical kernel:
//!
//! * [`phase`]: phase functions `φ(x, y)`, their derivatives and the bordered
//!   rotational-curvature determinant.
//! * [`fractal`]: Cantor-type interval sets, weighted point clouds, Perron trees,
//!   Frostman and box-counting diagnostics.
//! * [`raster`]: occupancy bitmaps for δ-bands of level sets and planar shapes,
//!   plus Monte Carlo measure estimates.
//! * [`spectral`]: Littlewood–Paley norms, incidence densities, mollification and
//!   oscillatory decay of curve measures.
//! * [`scenarios`]: named experiments that combine the above into verdicts.
//!
//! File formats, the command-line runner and wall-clock timing live in the
//! companion `gmt-lab` crate.
//!
//! Enable the `parallel` feature to fan rasterization out over rayon; results are
//! bit-identical to the sequential path.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(feature = "parallel")]
extern crate std;

mod error;
pub mod fft;
pub mod fractal;
pub mod linalg;
pub mod phase;
pub mod raster;
mod rng;
pub mod scenarios;
pub mod spectral;

pub use error::{Error, Result};
