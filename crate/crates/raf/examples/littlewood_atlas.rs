//! Exhaustive root sets of ±1 and quaternary polynomial families:
//! cardinalities, symmetry closures, hole radii at the unit circle, and
//! a PGM raster.
//!
//! ```bash
//! cargo run --release --example littlewood_atlas
//! ```

use num_complex::Complex64;
use raf::littlewood::{enumerate_roots, raster_accumulate};
use raf::{Alphabet, Rect};

fn main() {
    println!("Hole radius at +1 (punctured gap, exclusion 1e-6) closes up with degree");
    println!("(the trend is asymptotic, not monotone step by step):");
    println!("  n    |Z_n|      hole(+1)");
    let mut atlas9 = None;
    for n in [3, 5, 7, 9, 11] {
        let atlas = enumerate_roots(n, Alphabet::PlusMinusOne).unwrap();
        let hole = atlas.hole_radius(Complex64::new(1.0, 0.0), 1e-6);
        println!("  {n:>2}   {:>8}   {hole:.5}", atlas.roots.len());
        if n == 9 {
            atlas9 = Some(atlas);
        }
    }
    let atlas9 = atlas9.unwrap();

    println!("\nSymmetry closures of Z_9 (multiset matching at 1e-9):");
    println!("  conjugation: {}", atlas9.verify_conjugation_closure(1e-9));
    println!("  negation:    {}", atlas9.verify_negation_closure(1e-9));
    println!("  inversion:   {}", atlas9.verify_inversion_closure(1e-9));

    let w5 = enumerate_roots(5, Alphabet::Quaternary).unwrap();
    println!("\nQuaternary family W_5: {} roots", w5.roots.len());
    println!(
        "  i-rotation closure: {:?}",
        w5.verify_rotation_closure(1e-9)
    );
    println!(
        "  hole(+1) = {:.5}, hole(i) = {:.5}  (equal by i-rotation)",
        w5.hole_radius(Complex64::new(1.0, 0.0), 1e-6),
        w5.hole_radius(Complex64::new(0.0, 1.0), 1e-6)
    );

    // Raster image of Z_9 (log-scaled 16-bit PGM).
    let grid = raster_accumulate(&atlas9.roots, Rect::square(2.5), 1024);
    let out = std::path::Path::new("target/example-out");
    std::fs::create_dir_all(out).unwrap();
    let path = out.join("littlewood_z9.pgm");
    std::fs::write(&path, grid.to_pgm16(true)).unwrap();
    println!(
        "\nWrote {} ({}x{}, {} hits inside the window)",
        path.display(),
        grid.width,
        grid.height,
        grid.total()
    );
    println!("For full-scale pictures run the CLI:");
    println!("  cargo run --release --bin raf -- littlewood --n 13 --alphabet pm1 --raster 2048 --out out/z13");
    println!("  cargo run --release --bin raf -- littlewood --n 8 --alphabet quaternary --raster 2048 --out out/w8");
}
