//! Iterative radix-2 FFT for power-of-two lengths, plus a row/column 2-D driver.
//!
//! Forward transforms use the `e^{-2πi k n / N}` convention and are unscaled;
//! inverse transforms divide by `N` (or `N²` in 2-D).

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Precomputed twiddles and bit-reversal table for one transform length.
#[derive(Debug, Clone)]
pub struct Radix2 {
    len: usize,
    twiddles: Vec<Complex64>,
    reversed: Vec<u32>,
}

impl Radix2 {
    /// Panics unless `len` is a nonzero power of two.
    pub fn new(len: usize) -> Self {
        assert!(len.is_power_of_two(), "FFT length {len} is not a power of two");
        let bits = len.trailing_zeros();
        let twiddles = (0..len / 2)
            .map(|k| {
                let angle = -2.0 * PI * k as f64 / len as f64;
                Complex64::new(angle.cos(), angle.sin())
            })
            .collect();
        let reversed = (0..len as u32)
            .map(|i| if bits == 0 { 0 } else { i.reverse_bits() >> (32 - bits) })
            .collect();
        Radix2 { len, twiddles, reversed }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, true);
        let scale = 1.0 / self.len as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    fn transform(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.len;
        assert_eq!(data.len(), n);
        for i in 0..n {
            let j = self.reversed[i] as usize;
            if i < j {
                data.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for start in (0..n).step_by(2 * half) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let a = data[start + k];
                    let b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
            half *= 2;
        }
    }
}

/// Square 2-D transform on an `n × n` row-major buffer.
#[derive(Debug, Clone)]
pub struct Fft2 {
    plan: Radix2,
}

impl Fft2 {
    pub fn new(n: usize) -> Self {
        Fft2 { plan: Radix2::new(n) }
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.apply(data, false);
    }

    pub fn inverse(&self, data: &mut [Complex64]) {
        self.apply(data, true);
    }

    fn apply(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.plan.len();
        assert_eq!(data.len(), n * n);
        let one = |row: &mut [Complex64]| {
            if inverse {
                self.plan.inverse(row);
            } else {
                self.plan.forward(row);
            }
        };
        let run = |rows: &mut [Complex64]| {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                rows.par_chunks_exact_mut(n).for_each(one);
            }
            #[cfg(not(feature = "parallel"))]
            rows.chunks_exact_mut(n).for_each(one);
        };
        run(data);
        transpose(data, n);
        run(data);
        transpose(data, n);
    }
}

fn transpose(data: &mut [Complex64], n: usize) {
    const BLOCK: usize = 32;
    for bi in (0..n).step_by(BLOCK) {
        for bj in (bi..n).step_by(BLOCK) {
            for i in bi..(bi + BLOCK).min(n) {
                let start = if bi == bj { i + 1 } else { bj };
                for j in start..(bj + BLOCK).min(n) {
                    data.swap(i * n + j, j * n + i);
                }
            }
        }
    }
}

/// Signed frequency index for DFT bin `k` of an `n`-point transform.
pub fn signed_frequency(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}
