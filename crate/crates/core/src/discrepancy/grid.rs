//! Exact box discrepancies of planar point sets by critical-grid enumeration.
//!
//! For axis-parallel boxes the supremum of `|count/N − area|` is approached
//! either by closed boxes whose edges pass through point coordinates (too many
//! points) or by open boxes bounded by point coordinates and the sides of the
//! square (too few points). Only those limits are enumerated.
//!
//! Points with a coordinate at or above 1 lie outside `[0,1)²` and are never
//! counted, though they still contribute to `N`.

use rayon::prelude::*;

fn inside(&(x, y): &(f64, f64)) -> bool {
    (0.0..1.0).contains(&x) && (0.0..1.0).contains(&y)
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Star discrepancy over anchored boxes `[0,a)×[0,c)`, `O(N²)`.
pub fn star(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mut valid: Vec<(f64, f64)> = points.iter().copied().filter(inside).collect();
    let mut ys = sorted_unique(valid.iter().map(|p| p.1).collect());
    ys.push(1.0);
    valid.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ranks: Vec<usize> = valid
        .iter()
        .map(|p| ys.binary_search_by(|y| y.total_cmp(&p.1)).unwrap())
        .collect();

    let mut hist = vec![0u32; ys.len()];
    let mut best = 0.0f64;
    let scan = |a: f64, hist: &[u32], closed: bool, best: &mut f64| {
        let mut count = 0u32;
        for (j, &c) in ys.iter().enumerate() {
            if closed {
                count += hist[j];
                *best = best.max(f64::from(count) / n - a * c);
            } else {
                *best = best.max(a * c - f64::from(count) / n);
                count += hist[j];
            }
        }
    };

    let mut k = 0;
    while k < valid.len() {
        let a = valid[k].0;
        // open counts: x < a
        scan(a, &hist, false, &mut best);
        while k < valid.len() && valid[k].0 == a {
            hist[ranks[k]] += 1;
            k += 1;
        }
        // closed counts: x <= a
        scan(a, &hist, true, &mut best);
    }
    scan(1.0, &hist, false, &mut best);
    scan(1.0, &hist, true, &mut best);
    best
}

/// Extreme discrepancy over all boxes `[a₁,a₂)×[c₁,c₂)`, `O(N³)`.
pub fn extreme(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mut by_y: Vec<(f64, f64)> = points.iter().copied().filter(inside).collect();
    by_y.sort_by(|a, b| a.1.total_cmp(&b.1));
    let xs = sorted_unique(by_y.iter().map(|p| p.0).collect());

    // closed strips [xs[i], xs[j]] and closed y-ranges through strip points
    let too_many = (0..xs.len())
        .into_par_iter()
        .map(|i| {
            let mut best = 0.0f64;
            for j in i..xs.len() {
                let (lo, hi) = (xs[i], xs[j]);
                let w = hi - lo;
                let mut q = 0usize;
                let mut prefix = f64::NEG_INFINITY;
                for &(x, y) in &by_y {
                    if x < lo || x > hi {
                        continue;
                    }
                    prefix = prefix.max(w * y - q as f64 / n);
                    best = best.max((q + 1) as f64 / n - w * y + prefix);
                    q += 1;
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max);

    // open strips (l, r) with l in {0} ∪ xs and r in xs ∪ {1}; the y-range is
    // open between consecutive strip points, 0 or 1
    let lowers: Vec<f64> = std::iter::once(0.0).chain(xs.iter().copied()).collect();
    let uppers: Vec<f64> = xs.iter().copied().chain(std::iter::once(1.0)).collect();
    let too_few = lowers
        .par_iter()
        .map(|&l| {
            let mut best = 0.0f64;
            for &r in uppers.iter().filter(|&&r| r > l) {
                let w = r - l;
                // position 0 is the virtual bound c = 0
                let mut prefix = 0.0f64;
                let mut q = 0usize;
                for &(x, y) in &by_y {
                    if x <= l || x >= r {
                        continue;
                    }
                    q += 1;
                    best = best.max(w * y - q as f64 / n + prefix + 1.0 / n);
                    prefix = prefix.max(q as f64 / n - w * y);
                }
                let q = q + 1;
                best = best.max(w - q as f64 / n + prefix + 1.0 / n);
            }
            best
        })
        .reduce(|| 0.0, f64::max);

    too_many.max(too_few)
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const M1: [(f64, f64); 2] = [(0.0, 0.0), (0.5, 0.5)];
    const M2: [(f64, f64); 4] = [(0.0, 0.0), (0.5, 0.5), (0.25, 0.75), (0.75, 0.25)];
    const M2_IDENTITY: [(f64, f64); 4] = [(0.0, 0.0), (0.5, 0.5), (0.25, 0.25), (0.75, 0.75)];

    // Frozen from an exact rational brute force over the critical grid.
    #[test]
    fn star_frozen_values() {
        assert_eq!(star(&[(0.5, 0.5)]), 0.75);
        assert_eq!(star(&[(0.0, 0.0)]), 1.0);
        assert_eq!(star(&M1), 0.75);
        assert_eq!(star(&M2), 7.0 / 16.0);
        assert_eq!(star(&M2_IDENTITY), 0.5);
    }

    #[test]
    fn extreme_frozen_values() {
        assert_eq!(extreme(&[(0.5, 0.5)]), 1.0);
        assert_eq!(extreme(&[(0.0, 0.0)]), 1.0);
        assert_eq!(extreme(&M1), 0.75);
        assert_eq!(extreme(&M2), 0.5);
        assert_eq!(extreme(&M2_IDENTITY), 0.5);
    }

    #[test]
    fn points_outside_square_are_never_counted() {
        // a point at y = 1 (the south pole after lifting) sits in no box
        let d = star(&[(0.0, 1.0)]);
        assert_eq!(d, 1.0);
        assert_eq!(extreme(&[(0.3, 1.0)]), 1.0);
        assert!(
            (star(&[(0.5, 0.5), (0.2, 1.0)]) - oracle::star(&[(0.5, 0.5), (0.2, 1.0)])).abs()
                < 1e-8
        );
    }

    fn dyadic_points(max_len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0u32..8, 0u32..8), 1..=max_len).prop_map(|v| {
            v.into_iter()
                .map(|(a, b)| (f64::from(a) / 8.0, f64::from(b) / 8.0))
                .collect()
        })
    }

    fn generic_points(max_len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..=max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn star_matches_oracle_with_ties(pts in dyadic_points(7)) {
            prop_assert!((star(&pts) - oracle::star(&pts)).abs() < 1e-8);
        }

        #[test]
        fn extreme_matches_oracle_with_ties(pts in dyadic_points(6)) {
            prop_assert!((extreme(&pts) - oracle::extreme(&pts)).abs() < 1e-8);
        }

        #[test]
        fn extreme_matches_oracle_generic(pts in generic_points(6)) {
            prop_assert!((extreme(&pts) - oracle::extreme(&pts)).abs() < 1e-8);
            prop_assert!((star(&pts) - oracle::star(&pts)).abs() < 1e-8);
        }

        #[test]
        fn sandwich(pts in generic_points(40)) {
            let s = star(&pts);
            let e = extreme(&pts);
            prop_assert!(s <= e + 1e-15);
            prop_assert!(e <= 4.0 * s + 1e-15);
            prop_assert!(e <= 1.0);
        }
    }
}
