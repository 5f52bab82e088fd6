//! Nearest-rank quantiles, the one quantile definition used everywhere.

/// 1-based nearest rank `ceil(alpha * len)`, clamped to `[1, len]`.
///
/// Products that land within `1e-9` of an integer are snapped first so that
/// levels like `0.15` (not exactly representable) still pick rank 15 of 100.
pub fn nearest_rank(alpha: f64, len: usize) -> usize {
    assert!(len > 0, "quantile of an empty sample");
    let r = alpha * len as f64;
    let rank = if (r - r.round()).abs() < 1e-9 { r.round() } else { r.ceil() };
    (rank as usize).clamp(1, len)
}

/// Nearest-rank quantile of an ascending-sorted slice.
pub fn quantile_sorted(sorted: &[f64], alpha: f64) -> f64 {
    sorted[nearest_rank(alpha, sorted.len()) - 1]
}
