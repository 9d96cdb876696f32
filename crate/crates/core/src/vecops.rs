//! Dense vector kernels on `f64` slices.

use alloc::vec::Vec;

use crate::num::sqrt;

#[inline]
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Euclidean norm, scaled to avoid overflow for large entries.
pub fn norm2(x: &[f64]) -> f64 {
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let ssq: f64 = x.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * sqrt(ssq)
}

/// `y += a·x`
#[inline]
pub fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

#[inline]
pub fn scale(a: f64, x: &mut [f64]) {
    for v in x {
        *v *= a;
    }
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// `a·x + b·y`
pub fn lincomb(a: f64, x: &[f64], b: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + b * yi).collect()
}

/// Normalizes `x` in place and returns its original norm.
pub fn normalize(x: &mut [f64]) -> f64 {
    let nrm = norm2(x);
    if nrm > 0.0 {
        scale(1.0 / nrm, x);
    }
    nrm
}

/// `sin∠(x, y)` between two nonzero vectors.
pub fn sin_angle(x: &[f64], y: &[f64]) -> f64 {
    let nx = norm2(x);
    let ny = norm2(y);
    if nx == 0.0 || ny == 0.0 {
        return 1.0;
    }
    let c = (dot(x, y) / (nx * ny)).abs().min(1.0);
    // 1 - c² cancels badly for nearly parallel vectors, use the residual instead
    let proj = dot(x, y) / dot(y, y);
    let resid: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - proj * b).collect();
    let s = norm2(&resid) / nx;
    if s.is_finite() {
        s.min(1.0)
    } else {
        sqrt(1.0 - c * c)
    }
}
