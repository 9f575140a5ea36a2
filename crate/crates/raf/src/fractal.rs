//! Value sets of sign/quaternary power series at a fixed point, their
//! box-counting dimension, and closed-form special-case checks.
//!
//! For a fixed `z` the depth-`n` value set collects all partial sums
//! `Σ_{k≤n} x_k z^k` over coefficient words `x` from the alphabet; it
//! satisfies the recurrence `S_n = ⋃_{a ∈ A} {a + z·w : w ∈ S_{n-1}}`
//! with `S_0 = A`, and for `|z| < 1` approximates the limit set to
//! within the geometric tail `max|A| · Σ_{k>n} |z|^k`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::raster::Rect;

#[derive(Debug, Error)]
pub enum FractalError {
    #[error("value set would hold {required} points, over the budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("degenerate box-count fit (r² = {r_squared:.4}, estimate {estimate:.4})")]
    DegenerateFit { estimate: f64, r_squared: f64 },
    #[error("need at least 3 scales, got {0}")]
    TooFewScales(usize),
}

pub const DEFAULT_POINT_BUDGET: u128 = 10_000_000;

/// Depth-`n` value set at `z` with its tail bound.
#[derive(Debug, Clone)]
pub struct ValueSet {
    pub z: Complex64,
    pub alphabet: Alphabet,
    pub depth: usize,
    /// `|A|^{depth+1}` points in coefficient-word order (little-endian
    /// digits of the word index select the coefficients).
    pub points: Vec<Complex64>,
    /// `max|A| · Σ_{k>depth} |z|^k`; every limit-set point lies within
    /// this distance of some stored point (and vice versa).
    pub tail_radius: f64,
}

/// All values `Σ_{k≤depth} x_k z^k` over coefficient words.
pub fn iterate_value_set(
    z: Complex64,
    alphabet: Alphabet,
    depth: usize,
) -> Result<ValueSet, FractalError> {
    iterate_value_set_with_budget(z, alphabet, depth, DEFAULT_POINT_BUDGET)
}

pub fn iterate_value_set_with_budget(
    z: Complex64,
    alphabet: Alphabet,
    depth: usize,
    budget: u128,
) -> Result<ValueSet, FractalError> {
    let size = alphabet.size() as u128;
    let required = size.pow(depth as u32 + 1);
    if required > budget {
        return Err(FractalError::BudgetExceeded { required, budget });
    }
    let atoms = alphabet.atoms();
    let base = alphabet.size() as u64;
    let count = required as u64;
    let points: Vec<Complex64> = (0..count)
        .into_par_iter()
        .map(|word| {
            // Horner from the top coefficient down to x_0.
            let mut acc = Complex64::new(0.0, 0.0);
            for k in (0..=depth).rev() {
                let digit = ((word / base.pow(k as u32)) % base) as usize;
                acc = acc * z + atoms[digit];
            }
            acc
        })
        .collect();
    Ok(ValueSet {
        z,
        alphabet,
        depth,
        points,
        tail_radius: tail_radius(z, alphabet, depth),
    })
}

/// `max|A| · Σ_{k>depth} |z|^k` (+∞ outside the contractive regime).
pub fn tail_radius(z: Complex64, alphabet: Alphabet, depth: usize) -> f64 {
    let r = z.norm();
    if r >= 1.0 {
        return f64::INFINITY;
    }
    if r == 0.0 {
        return 0.0;
    }
    alphabet.max_modulus() * r.powi(depth as i32 + 1) / (1.0 - r)
}

/// Box-count fit: slope of `log N(δ)` against `log(1/δ)` plus fit r².
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxDimension {
    pub estimate: f64,
    pub r_squared: f64,
    pub scales: Vec<f64>,
    pub counts: Vec<usize>,
}

/// Occupied half-open boxes of side `delta`, anchored at the origin.
pub fn box_count(points: &[Complex64], delta: f64) -> usize {
    let mut boxes: HashSet<(i64, i64)> = HashSet::with_capacity(points.len() / 2);
    for &p in points {
        boxes.insert(((p.re / delta).floor() as i64, (p.im / delta).floor() as i64));
    }
    boxes.len()
}

/// Least-squares box-dimension estimate over `num_scales` geometric
/// scales between `delta_min` and `delta_max`.
///
/// Fails with [`FractalError::DegenerateFit`] (estimate still carried)
/// when r² < 0.9; fewer than 3 scales is rejected outright.
pub fn box_dimension(
    points: &[Complex64],
    scale_range: (f64, f64),
    num_scales: usize,
) -> Result<BoxDimension, FractalError> {
    let (delta_min, delta_max) = scale_range;
    if num_scales < 3 {
        return Err(FractalError::TooFewScales(num_scales));
    }
    assert!(delta_min > 0.0 && delta_max > delta_min, "bad scale range");
    let ratio = (delta_max / delta_min).powf(1.0 / (num_scales - 1) as f64);
    let scales: Vec<f64> = (0..num_scales)
        .map(|j| delta_max / ratio.powi(j as i32))
        .collect();
    let counts: Vec<usize> = scales
        .par_iter()
        .map(|&delta| box_count(points, delta))
        .collect();
    let xs: Vec<f64> = scales.iter().map(|&d| (1.0 / d).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&n| (n as f64).ln()).collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let syy: f64 = ys.iter().map(|y| (y - ybar) * (y - ybar)).sum();
    let estimate = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    let fit = BoxDimension {
        estimate,
        r_squared,
        scales,
        counts,
    };
    if r_squared < 0.9 {
        return Err(FractalError::DegenerateFit {
            estimate,
            r_squared,
        });
    }
    Ok(fit)
}

/// Default scale range for a value set: from `4 · tail_radius` (below
/// which the finite set's discreteness corrupts counts) up the set
/// diameter / 16, geometric with ratio 2.
///
/// Coarser top scales put only a handful of origin-anchored boxes across
/// the set, and the ±1-box edge effects visibly tilt the fitted slope.
pub fn default_scale_range(set: &ValueSet) -> (f64, f64, usize) {
    let diam = set.points.iter().map(|p| p.norm()).fold(0.0f64, f64::max) * 2.0;
    let delta_max = diam / 16.0;
    let delta_min = (4.0 * set.tail_radius)
        .min(delta_max / 8.0)
        .max(delta_max * 2e-9);
    let num = ((delta_max / delta_min).log2().floor() as usize + 1).max(3);
    (delta_min, delta_max, num)
}

/// Proven upper bound `log|A| / log(1/|z|)`, capped at the ambient
/// dimension 2.
pub fn dimension_bound(z: Complex64, alphabet: Alphabet) -> f64 {
    let r = z.norm();
    if r >= 1.0 {
        return 2.0;
    }
    let raw = (alphabet.size() as f64).ln() / (1.0 / r).ln();
    raw.min(2.0)
}

/// The conjectured exact dimension (reported alongside estimates, never
/// asserted): `min{2, log|A|/log(1/|z|)}` off the real axis and
/// `min{1, ...}` on it for the ±1 alphabet.
pub fn conjectured_dimension(z: Complex64, alphabet: Alphabet) -> f64 {
    let r = z.norm();
    if r >= 1.0 {
        return 2.0;
    }
    let raw = (alphabet.size() as f64).ln() / (1.0 / r).ln();
    let cap = if alphabet == Alphabet::PlusMinusOne && z.im == 0.0 {
        1.0
    } else {
        2.0
    };
    raw.min(cap)
}

/// Whether `estimate` respects the proven bound with finite-depth slack.
pub fn bound_check(z: Complex64, alphabet: Alphabet, estimate: f64) -> bool {
    estimate <= dimension_bound(z, alphabet) + 0.1
}

/// Symmetric Hausdorff distance between a point cloud and an
/// axis-aligned rectangle, approximated on a grid of pitch `grid_step`
/// over the rectangle.
pub fn hausdorff_distance_to_rect(points: &[Complex64], rect: Rect, grid_step: f64) -> f64 {
    assert!(!points.is_empty(), "empty point cloud");
    assert!(grid_step > 0.0);
    // Spatial hash for nearest-point queries from grid nodes.
    let cell = grid_step * 8.0;
    let key = |x: f64, y: f64| ((x / cell).floor() as i64, (y / cell).floor() as i64);
    let mut grid: std::collections::HashMap<(i64, i64), Vec<Complex64>> =
        std::collections::HashMap::new();
    for &p in points {
        grid.entry(key(p.re, p.im)).or_default().push(p);
    }
    let nearest = |q: Complex64| -> f64 {
        let (kx, ky) = key(q.re, q.im);
        let mut best = f64::INFINITY;
        let mut ring = 0i64;
        loop {
            let mut any = false;
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    if dx.abs() != ring && dy.abs() != ring {
                        continue;
                    }
                    if let Some(bucket) = grid.get(&(kx + dx, ky + dy)) {
                        any = true;
                        for &p in bucket {
                            best = best.min((p - q).norm());
                        }
                    }
                }
            }
            // A hit at Chebyshev ring k rules out improvements once
            // best < (ring)·cell for the next ring.
            if best.is_finite() && best <= (ring as f64) * cell {
                return best;
            }
            if ring > 2 && !any && best.is_finite() {
                return best;
            }
            ring += 1;
            if ring > 1_000_000 {
                return best;
            }
        }
    };
    let nx = (rect.width() / grid_step).ceil() as usize;
    let ny = (rect.height() / grid_step).ceil() as usize;
    let rect_to_points = (0..=ny)
        .into_par_iter()
        .map(|j| {
            let y = rect.y_min + rect.height() * j as f64 / ny as f64;
            let mut worst = 0.0f64;
            for i in 0..=nx {
                let x = rect.x_min + rect.width() * i as f64 / nx as f64;
                worst = worst.max(nearest(Complex64::new(x, y)));
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    let points_to_rect = points
        .par_iter()
        .map(|&p| rect.distance(p))
        .reduce(|| 0.0, f64::max);
    rect_to_points.max(points_to_rect)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut pts: Vec<Complex64>) -> Vec<Complex64> {
        pts.sort_by(|a, b| a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im)));
        pts
    }

    #[test]
    fn depth_zero_is_the_alphabet() {
        let set = iterate_value_set(c(0.77, -0.3), Alphabet::PlusMinusOne, 0).unwrap();
        assert_eq!(sorted(set.points), vec![c(-1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn depth_one_at_one_third() {
        let set = iterate_value_set(c(1.0 / 3.0, 0.0), Alphabet::PlusMinusOne, 1).unwrap();
        let want = [
            c(-4.0 / 3.0, 0.0),
            c(-2.0 / 3.0, 0.0),
            c(2.0 / 3.0, 0.0),
            c(4.0 / 3.0, 0.0),
        ];
        for (got, want) in sorted(set.points).iter().zip(want) {
            assert!((got - want).norm() < 1e-14);
        }
    }

    #[test]
    fn cantor_iterates_stay_in_interval() {
        for depth in [5, 10, 20] {
            let set = iterate_value_set(c(1.0 / 3.0, 0.0), Alphabet::PlusMinusOne, depth).unwrap();
            assert_eq!(set.points.len(), 1 << (depth + 1));
            for p in &set.points {
                assert_eq!(p.im, 0.0, "real z with ±1 alphabet gives real points");
                assert!(p.re.abs() <= 1.5 + 1e-12);
            }
        }
    }

    #[test]
    fn cardinality_and_refinement() {
        let z = c(0.4, 0.2);
        let a = iterate_value_set(z, Alphabet::Quaternary, 5).unwrap();
        let b = iterate_value_set(z, Alphabet::Quaternary, 6).unwrap();
        assert_eq!(a.points.len(), 4usize.pow(6));
        assert_eq!(b.points.len(), 4usize.pow(7));
        let step = Alphabet::Quaternary.max_modulus() * z.norm().powi(6) / (1.0 - z.norm());
        for &p in a.points.iter().step_by(97) {
            let nearest = b
                .points
                .iter()
                .map(|q| (q - p).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= step + 1e-12);
        }
        for &q in b.points.iter().step_by(389) {
            let nearest = a
                .points
                .iter()
                .map(|p| (q - p).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= step + 1e-12);
        }
    }

    #[test]
    fn conjugation_symmetry_exact() {
        let z = c(0.31, 0.44);
        let a = iterate_value_set(z, Alphabet::Quaternary, 4).unwrap();
        let b = iterate_value_set(z.conj(), Alphabet::Quaternary, 4).unwrap();
        let conj_a: Vec<Complex64> = a.points.iter().map(|p| p.conj()).collect();
        assert_eq!(sorted(b.points), sorted(conj_a));
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(
            iterate_value_set(c(0.5, 0.0), Alphabet::Quaternary, 12),
            Err(FractalError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn box_dimension_of_a_segment() {
        let points: Vec<Complex64> = (0..10_000).map(|i| c(i as f64 / 9_999.0, 0.0)).collect();
        let fit = box_dimension(&points, (1e-3, 0.25), 9).unwrap();
        assert!(
            (fit.estimate - 1.0).abs() < 0.05,
            "estimate {}",
            fit.estimate
        );
        assert!(fit.r_squared > 0.99);
    }

    #[test]
    fn box_dimension_needs_three_scales() {
        let points = vec![c(0.0, 0.0); 10];
        assert!(matches!(
            box_dimension(&points, (0.1, 0.4), 2),
            Err(FractalError::TooFewScales(2))
        ));
    }

    #[test]
    fn cantor_dimension_estimate() {
        let set = iterate_value_set(c(1.0 / 3.0, 0.0), Alphabet::PlusMinusOne, 16).unwrap();
        let (dmin, dmax, num) = default_scale_range(&set);
        let fit = box_dimension(&set.points, (dmin, dmax), num).unwrap();
        let target = 2.0f64.ln() / 3.0f64.ln();
        assert!(
            fit.estimate > 0.58 && fit.estimate < 0.68,
            "estimate {} target {target}",
            fit.estimate
        );
        assert!(bound_check(
            c(1.0 / 3.0, 0.0),
            Alphabet::PlusMinusOne,
            fit.estimate
        ));
    }

    #[test]
    fn quaternary_half_fills_the_square() {
        let set = iterate_value_set(c(0.5, 0.0), Alphabet::Quaternary, 8).unwrap();
        let (dmin, dmax, num) = default_scale_range(&set);
        let fit = box_dimension(&set.points, (dmin, dmax), num).unwrap();
        assert!(
            fit.estimate > 1.9 && fit.estimate <= 2.0,
            "estimate {}",
            fit.estimate
        );
    }

    #[test]
    fn bound_examples() {
        let b = dimension_bound(c(1.0 / 3.0, 0.0), Alphabet::PlusMinusOne);
        assert!((b - 2.0f64.ln() / 3.0f64.ln()).abs() < 1e-12);
        assert_eq!(dimension_bound(c(0.5, 0.0), Alphabet::Quaternary), 2.0);
        let z = c(0.0, std::f64::consts::FRAC_1_SQRT_2);
        assert_eq!(dimension_bound(z, Alphabet::PlusMinusOne), 2.0);
    }

    #[test]
    fn dimension_respects_bound_on_sweep() {
        for &r in &[0.3, 0.45, 0.6, std::f64::consts::FRAC_1_SQRT_2] {
            for (alphabet, depth) in [(Alphabet::PlusMinusOne, 14), (Alphabet::Quaternary, 8)] {
                let z = c(r * 0.6, r * 0.8);
                let set = iterate_value_set(z, alphabet, depth).unwrap();
                let (dmin, dmax, num) = default_scale_range(&set);
                let fit = match box_dimension(&set.points, (dmin, dmax), num) {
                    Ok(fit) => fit,
                    Err(FractalError::DegenerateFit {
                        estimate,
                        r_squared,
                    }) => BoxDimension {
                        estimate,
                        r_squared,
                        scales: vec![],
                        counts: vec![],
                    },
                    Err(e) => panic!("{e}"),
                };
                assert!(
                    bound_check(z, alphabet, fit.estimate),
                    "r={r} alphabet={alphabet:?} estimate={} bound={}",
                    fit.estimate,
                    dimension_bound(z, alphabet)
                );
            }
        }
    }

    #[test]
    fn hausdorff_corner_example() {
        let rect = Rect::new(0.0, 1.0, 0.0, 1.0);
        let corners = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)];
        let d = hausdorff_distance_to_rect(&corners, rect, 0.005);
        assert!((d - std::f64::consts::SQRT_2 / 2.0).abs() < 0.01, "d = {d}");
    }

    #[test]
    fn quaternary_half_matches_rectangle() {
        // B(1/2) = [-2,2]²; the depth-8 iterate is within √2·2⁻⁸ of it.
        let set = iterate_value_set(c(0.5, 0.0), Alphabet::Quaternary, 8).unwrap();
        let bound = std::f64::consts::SQRT_2 * 2.0f64.powi(-8) * 1.05;
        let d = hausdorff_distance_to_rect(
            &set.points,
            Rect::new(-2.0, 2.0, -2.0, 2.0),
            set.tail_radius / 4.0,
        );
        assert!(d <= bound, "distance {d} vs bound {bound}");
    }

    #[test]
    fn pm1_at_i_over_sqrt2_matches_rectangle() {
        // C(i/√2) is the rectangle [-2,2] × [-√2,√2].
        let z = c(0.0, std::f64::consts::FRAC_1_SQRT_2);
        let set = iterate_value_set(z, Alphabet::PlusMinusOne, 12).unwrap();
        let tail = 2.0f64.powf(-6.0) * (1.0 / (1.0 - std::f64::consts::FRAC_1_SQRT_2));
        let bound = tail * 1.05;
        let rect = Rect::new(
            -2.0,
            2.0,
            -std::f64::consts::SQRT_2,
            std::f64::consts::SQRT_2,
        );
        let d = hausdorff_distance_to_rect(&set.points, rect, set.tail_radius / 4.0);
        assert!(d <= bound, "distance {d} vs bound {bound}");
    }
}
