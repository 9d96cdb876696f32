// f64 intrinsics missing from `core`.

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

/// Distances to a target closer than this fraction of the target count as
/// ties. Quantizing keeps the ordering a total order.
pub(crate) const TIE_TOL: f64 = 1e-12;

/// Sort key for `|value − target|`: the distance on a grid of spacing
/// `TIE_TOL·target`, `+∞` for an infinite value.
pub(crate) fn distance_key(value: f64, target: f64) -> f64 {
    if value.is_infinite() {
        f64::INFINITY
    } else {
        round((value - target).abs() / (TIE_TOL * target))
    }
}
