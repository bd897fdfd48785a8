//! Small dense linear algebra and least-squares helpers.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Determinant of a square row-major matrix by LU with partial pivoting.
pub fn determinant(matrix: &[f64], n: usize) -> f64 {
    assert_eq!(matrix.len(), n * n, "matrix is not {n}x{n}");
    let mut a: Vec<f64> = matrix.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap_or(col);
        if a[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for row in col + 1..n {
            let factor = a[row * n + col] / p;
            if factor != 0.0 {
                for k in col..n {
                    a[row * n + k] -= factor * a[col * n + k];
                }
            }
        }
    }
    det
}

/// Ordinary least-squares line `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// RMS of the residuals.
    pub residual: f64,
}

/// Fits a line through `(x, y)` pairs. Returns `None` for fewer than two
/// points or when all abscissae coincide.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sq: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    Some(LineFit { slope, intercept, residual: (sq / nf).sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_known_matrices() {
        assert_eq!(determinant(&[2.0], 1), 2.0);
        assert!((determinant(&[1.0, 2.0, 3.0, 4.0], 2) + 2.0).abs() < 1e-14);
        // permutation needs a pivot swap
        let m = [0.0, -1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, -1.0];
        assert!((determinant(&m, 3) - 1.0).abs() < 1e-14);
        assert_eq!(determinant(&[1.0, 2.0, 2.0, 4.0], 2), 0.0);
    }

    #[test]
    fn least_squares_recovers_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        let fit = least_squares(&xs, &ys).unwrap();
        assert!((fit.slope - 2.5).abs() < 1e-12);
        assert!((fit.intercept + 1.0).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
        assert!(least_squares(&[1.0, 1.0], &[0.0, 2.0]).is_none());
    }
}
