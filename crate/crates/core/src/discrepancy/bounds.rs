//! Known bounds relating the discrepancies of lifted nets.

/// Lower bound `(⌊log₂ N⌋ + 3)/(2⁸ N)` on the star discrepancy of any `N`-point set.
pub fn roth_lower_bound(n: u64) -> f64 {
    assert!(n >= 1);
    let log2 = 63 - n.leading_zeros();
    f64::from(log2 + 3) / (256.0 * n as f64)
}

/// Upper bound on the extreme spherical-rectangle discrepancy of a lifted
/// (0,m,2)-net in base `b`.
pub fn net_extreme_upper_bound(b: u64, m: u32) -> f64 {
    let b = b as f64;
    let bm = b.powi(m as i32);
    b * b / (b + 1.0) * f64::from(m) / bm
        + (9.0 + 1.0 / b) / bm
        + (2.0 * b - 1.0 - (4.0 * b + 3.0) / ((b + 1.0) * (b + 1.0))) / (bm * bm)
}

/// Upper bound on the star spherical-rectangle discrepancy of a lifted
/// (0,m,2)-net in base `b`.
pub fn net_star_upper_bound(b: u64, m: u32) -> f64 {
    let b = b as f64;
    let bm = b.powi(m as i32);
    b * b / (b + 1.0) * f64::from(m) / (4.0 * bm)
        + (9.0 / 4.0 + 1.0 / b) / bm
        + (b / 2.0 - 0.25 - (4.0 * b + 3.0) / (4.0 * (b + 1.0) * (b + 1.0))) / (bm * bm)
}

/// Constant `24/√3 + 2√2` bounding the squared worst-case error by the planar
/// star discrepancy of the pre-images.
pub fn wce_star_constant() -> f64 {
    24.0 / 3f64.sqrt() + 2.0 * 2f64.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roth_values() {
        assert_eq!(roth_lower_bound(1), 3.0 / 256.0);
        assert_eq!(roth_lower_bound(2), 4.0 / 512.0);
        assert_eq!(roth_lower_bound(3), 4.0 / 768.0);
        assert_eq!(roth_lower_bound(1024), 13.0 / (256.0 * 1024.0));
    }

    #[test]
    fn upper_bound_values() {
        // b = 2, m = 1: 4/3 * 1/2 + 9.5/2 + (3 - 11/9)/4
        let expected = 2.0 / 3.0 + 4.75 + (3.0 - 11.0 / 9.0) / 4.0;
        assert!((net_extreme_upper_bound(2, 1) - expected).abs() < 1e-15);
        let star = 2.0 / 3.0 / 4.0 + 2.75 / 2.0 + (1.0 - 0.25 - 11.0 / 36.0) / 4.0;
        assert!((net_star_upper_bound(2, 1) - star).abs() < 1e-15);
        assert!((wce_star_constant() - 16.684_834).abs() < 1e-6);
    }
}
