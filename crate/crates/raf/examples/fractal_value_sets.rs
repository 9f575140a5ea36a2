//! Value-set fractals: the Cantor set at z = 1/3, filled rectangles at
//! special points, and box-counting dimension against the proven bound.
//!
//! ```bash
//! cargo run --release --example fractal_value_sets
//! ```

use num_complex::Complex64;
use raf::fractal::{
    bound_check, box_dimension, conjectured_dimension, default_scale_range, dimension_bound,
    hausdorff_distance_to_rect, iterate_value_set,
};
use raf::{Alphabet, Rect};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    // C(1/3) is the middle-thirds Cantor set (scaled): dim log2/log3.
    let cantor = iterate_value_set(c(1.0 / 3.0, 0.0), Alphabet::PlusMinusOne, 16).unwrap();
    let (dmin, dmax, num) = default_scale_range(&cantor);
    let fit = box_dimension(&cantor.points, (dmin, dmax), num).unwrap();
    println!(
        "C_16(1/3): {} points, tail radius {:.2e}",
        cantor.points.len(),
        cantor.tail_radius
    );
    println!(
        "  box dimension {:.4} (r² = {:.4}) vs log2/log3 = {:.4}",
        fit.estimate,
        fit.r_squared,
        2.0f64.ln() / 3.0f64.ln()
    );

    // B(1/2) fills the square [-2,2]².
    let square = iterate_value_set(c(0.5, 0.0), Alphabet::Quaternary, 8).unwrap();
    let d = hausdorff_distance_to_rect(
        &square.points,
        Rect::new(-2.0, 2.0, -2.0, 2.0),
        square.tail_radius / 4.0,
    );
    println!("\nB_8(1/2): {} points", square.points.len());
    println!(
        "  Hausdorff distance to [-2,2]² = {d:.5} (tail bound {:.5})",
        square.tail_radius
    );

    // C(i/√2) fills the rectangle [-2,2] × [-√2,√2].
    let rect_set = iterate_value_set(
        c(0.0, std::f64::consts::FRAC_1_SQRT_2),
        Alphabet::PlusMinusOne,
        12,
    )
    .unwrap();
    let rect = Rect::new(
        -2.0,
        2.0,
        -std::f64::consts::SQRT_2,
        std::f64::consts::SQRT_2,
    );
    let d = hausdorff_distance_to_rect(&rect_set.points, rect, rect_set.tail_radius / 4.0);
    println!("\nC_12(i/√2): {} points", rect_set.points.len());
    println!("  Hausdorff distance to [-2,2]×[-√2,√2] = {d:.5}");

    // Dimension sweep against the proven bound log|A|/log(1/|z|).
    println!("\nDimension sweep (estimate ≤ bound; conjectured value reported, never asserted):");
    println!("  alphabet    z                 estimate   bound   conjectured");
    for &r in &[0.3, 0.45, 0.6] {
        for (alphabet, depth) in [(Alphabet::PlusMinusOne, 14), (Alphabet::Quaternary, 8)] {
            let z = c(r * 0.6, r * 0.8);
            let set = iterate_value_set(z, alphabet, depth).unwrap();
            let (dmin, dmax, num) = default_scale_range(&set);
            let fit = box_dimension(&set.points, (dmin, dmax), num).unwrap();
            println!(
                "  {:<10} {:>7.3}+{:.3}i     {:.4}    {:.4}   {:.4}   (within bound: {})",
                alphabet.label(),
                z.re,
                z.im,
                fit.estimate,
                dimension_bound(z, alphabet),
                conjectured_dimension(z, alphabet),
                bound_check(z, alphabet, fit.estimate)
            );
        }
    }

    // Dump one point cloud for plotting.
    let set = iterate_value_set(c(0.5, 0.5), Alphabet::PlusMinusOne, 16).unwrap();
    let out = std::path::Path::new("target/example-out");
    std::fs::create_dir_all(out).unwrap();
    let path = out.join("valueset_half_half.bin");
    raf::io::write_complex_binary(&path, &set.points).unwrap();
    println!(
        "\nWrote {} ({} little-endian f64 pairs)",
        path.display(),
        set.points.len()
    );
}
