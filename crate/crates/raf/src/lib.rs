//! Random analytic functions on constant-curvature disks.
//!
//! The model family is the power series `f(z) = Σ a_n X_n z^n` where the
//! `X_n` are i.i.d. mean-zero unit-variance coefficients and the
//! deterministic weights `a_n` are chosen, per curvature parameter
//! `κ ≤ 0`, so that the covariance kernel transforms covariantly under
//! the Möbius isometries of the domain disk. The crate provides:
//!
//! - [`kernel`]: the deterministic κ-geometry: coefficients, covariance
//!   kernel, Möbius frames, covariance factor, and the identities that
//!   tie them together;
//! - [`sampler`]: seeded coefficient ensembles (Gaussian and discrete),
//!   truncation-degree selection with explicit tail bounds, and
//!   evaluation of truncated series;
//! - [`zerofinder`]: argument-principle winding counts, subdivision
//!   zero localization with Newton polishing, and an Aberth–Ehrlich
//!   simultaneous root finder for explicit polynomials;
//! - [`pointprocess`]: linear statistics of zero sets in Möbius frames,
//!   Monte Carlo experiment orchestration, and two-sample
//!   Kolmogorov–Smirnov comparison;
//! - [`littlewood`]: exhaustive root sets of ±1 and quaternary
//!   polynomials, raster images, and hole-radius metrics;
//! - [`fractal`]: value-set recurrences, box-counting dimension
//!   estimation, and distance-to-rectangle checks;
//! - [`cli`]: the run-config front end used by the `raf` binary.
//!
//! Every randomized operation is driven by explicit 64-bit seeds through
//! a counter-based derivation scheme, so results are reproducible
//! bit-for-bit regardless of worker count.
//!
//! The `examples/` directory has one runnable program per capability;
//! start with `cargo run --release --example kernel_identities`.

pub mod alphabet;
pub mod cli;
pub mod fractal;
pub mod io;
pub mod kernel;
pub mod littlewood;
pub mod pointprocess;
pub mod raster;
pub mod sampler;
pub mod zerofinder;

pub use alphabet::Alphabet;
pub use kernel::{Curvature, DiskPoint, KernelFrame};
pub use raster::{RasterGrid, Rect};
pub use sampler::{Ensemble, EnsembleKind, TruncatedSeries};
pub use zerofinder::{CoeffPoly, Disk, ZeroSet};
