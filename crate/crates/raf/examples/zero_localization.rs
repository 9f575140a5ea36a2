//! Winding counts, subdivision localization and the Aberth–Ehrlich
//! finder agreeing on the same zeros.
//!
//! ```bash
//! cargo run --release --example zero_localization
//! ```

use num_complex::Complex64;
use raf::kernel::Curvature;
use raf::sampler::{truncation_degree, Ensemble, TruncatedSeries};
use raf::zerofinder::{aberth_roots, localize_zeros, winding_count, CoeffPoly, Disk};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    // Argument-principle counts for a hand-built cubic.
    let f = |z: Complex64| (z - c(0.3, 0.0)) * (z + c(0.0, 0.4)) * (z - c(0.9, 0.9));
    println!("Winding counts of (z-0.3)(z+0.4i)(z-0.9-0.9i):");
    for radius in [0.2, 0.5, 2.0] {
        let n = winding_count(f, c(0.0, 0.0), radius, 64).unwrap();
        println!("  |z| < {radius}: {n} zeros");
    }

    // All roots of an explicit polynomial.
    let poly = CoeffPoly::new(vec![c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0), c(1.0, 0.0)]);
    let roots = aberth_roots(&poly).unwrap();
    println!("\nAberth roots of z³ - 6z² + 11z - 6:");
    for (z, m) in &roots.zeros {
        println!(
            "  {z}  (multiplicity {m}, residual {:.2e})",
            poly.eval(*z).norm()
        );
    }

    // A double zero is certified with its multiplicity.
    let double = CoeffPoly::new(vec![c(0.0625, 0.0), c(-0.5, 0.0), c(1.0, 0.0)]);
    let zs = localize_zeros(&double, Disk::new(c(0.0, 0.0), 0.8), 1e-9).unwrap();
    println!("\nSubdivision on (z - 0.25)²:");
    for (z, m) in &zs.zeros {
        println!(
            "  zero {z} with multiplicity {m}; boundary count {}",
            zs.certify_count
        );
    }

    // The pipeline case: zeros of a sampled truncated series, certified
    // so multiplicities match the boundary winding exactly.
    let kappa = Curvature::hyperbolic();
    let n_trunc = truncation_degree(kappa, 0.65, 1e-6).unwrap();
    let ens = Ensemble::complex_gaussian();
    println!("\nZeros of sampled κ=-1 series (degree {n_trunc}) in |z| ≤ 0.5:");
    for seed in 1..=4 {
        let series = TruncatedSeries::sample(&ens, kappa, n_trunc, 0.65, seed).unwrap();
        let zs = localize_zeros(&series.to_poly(), Disk::new(c(0.0, 0.0), 0.5), 1e-9).unwrap();
        let locations: Vec<String> = zs.zeros.iter().map(|(z, _)| format!("{z:.4}")).collect();
        println!(
            "  seed {seed}: boundary count {} -> [{}]",
            zs.certify_count,
            locations.join(", ")
        );
    }

    // Oracle agreement: the winding count is an independent integer
    // check on the root finder.
    let pm1 = CoeffPoly::new(
        [
            1.0, -1.0, -1.0, 1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, 1.0,
        ]
        .iter()
        .map(|&x| c(x, 0.0))
        .collect(),
    );
    let all = aberth_roots(&pm1).unwrap();
    let inside = all.count_in_disk(&Disk::new(c(0.0, 0.0), 1.1));
    let wind = winding_count(|z| pm1.eval(z), c(0.0, 0.0), 1.1, 64).unwrap();
    println!("\nDegree-13 ±1 polynomial: winding over |z|<1.1 = {wind}, Aberth in-disk = {inside}");
}
