//! Command-line front end: run-config parsing, subcommand dispatch,
//! seed management and artifact writing.
//!
//! Every run validates its parameters fully before computing, then
//! writes a `manifest.json` echoing the resolved configuration; running
//! any subcommand again from its manifest reproduces the outputs byte
//! for byte. Exit codes: 0 success, 1 validation error, 2 numerical
//! failure.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::alphabet::Alphabet;
use crate::fractal;
use crate::io::{
    atomic_write, write_complex_binary, write_json, write_sample_csv, HoleMetric,
    PointCloudSidecar, RootListSidecar, SymmetryReport,
};
use crate::kernel::{covariance_identity_sweep, variance_identity_sweep, Curvature, DiskPoint};
use crate::littlewood::{enumerate_roots_with, raster_accumulate, EnumerationOptions};
use crate::pointprocess::{
    intensity_raster, ks_between, run_experiment, ExperimentConfig, TestFunction,
};
use crate::raster::{RasterSidecar, Rect};
use crate::sampler::{derive_sample_seed, Ensemble};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(format!("i/o: {e}"))
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

fn numerical<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numerical(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "raf",
    version,
    about = "Random analytic functions: kernel identities, zero statistics, Littlewood atlases and value-set fractals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (0 = all cores). Env fallback: RAF_WORKERS.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify the covariance and variance identities numerically.
    KernelCheck(KernelCheckArgs),
    /// Sample truncated series and dump mapped zero sets + intensity raster.
    SampleZeros(SampleZerosArgs),
    /// KS distance of non-Gaussian zero statistics to the Gaussian baseline over |u|.
    ConvergeTest(ConvergeTestArgs),
    /// Exhaustive root atlas of a sign/quaternary polynomial family.
    Littlewood(LittlewoodArgs),
    /// Iterate a value set; optionally estimate its box dimension.
    Fractal(FractalArgs),
    /// Box-counting dimension report for a value set.
    Boxdim(BoxdimArgs),
}

/// Entry point used by the `raf` binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let workers = cli
        .workers
        .or_else(|| {
            std::env::var("RAF_WORKERS")
                .ok()
                .and_then(|w| w.parse().ok())
        })
        .unwrap_or(0);
    let result = if workers > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(CliError::Validation(format!("worker pool: {e}"))),
        }
    } else {
        dispatch(&cli.command)
    };
    match result {
        Ok(()) => 0,
        Err(e @ CliError::Validation(_)) => {
            eprintln!("{e}");
            1
        }
        Err(e @ CliError::Numerical(_)) => {
            eprintln!("{e}");
            2
        }
    }
}

fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::KernelCheck(args) => kernel_check(args),
        Command::SampleZeros(args) => sample_zeros(args),
        Command::ConvergeTest(args) => converge_test(args),
        Command::Littlewood(args) => littlewood(args),
        Command::Fractal(args) => fractal_cmd(args),
        Command::Boxdim(args) => boxdim(args),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct Manifest<P> {
    version: String,
    subcommand: String,
    params: P,
}

/// Loads `--config` JSON: either bare params or a manifest whose
/// `subcommand` matches.
fn load_config<P: DeserializeOwned + Default>(
    path: &Option<PathBuf>,
    subcommand: &str,
) -> Result<P, CliError> {
    let Some(path) = path else {
        return Ok(P::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(validation)?;
    let params = if let Some(inner) = value.get("params") {
        let named = value.get("subcommand").and_then(|s| s.as_str());
        if named != Some(subcommand) {
            return Err(CliError::Validation(format!(
                "manifest is for subcommand {named:?}, not {subcommand}"
            )));
        }
        inner.clone()
    } else {
        value
    };
    serde_json::from_value(params).map_err(validation)
}

fn write_manifest<P: Serialize>(out: &Path, subcommand: &str, params: &P) -> Result<(), CliError> {
    write_json(
        &out.join("manifest.json"),
        &Manifest {
            version: VERSION.to_string(),
            subcommand: subcommand.to_string(),
            params,
        },
    )?;
    Ok(())
}

fn pick<T: Clone>(cli: Option<T>, file: Option<T>, default: T) -> T {
    cli.or(file).unwrap_or(default)
}

fn parse_kappa(kappa: f64) -> Result<Curvature, CliError> {
    Curvature::new(kappa).map_err(validation)
}

fn parse_ensemble(name: &str) -> Result<Ensemble, CliError> {
    let ensemble = match name {
        "gaussian" | "complex-gaussian" => Ensemble::complex_gaussian(),
        "real-gaussian" => Ensemble::real_gaussian(),
        "rademacher" => Ensemble::rademacher(),
        "quaternary" => Ensemble::quaternary(true),
        "quaternary-raw" => Ensemble::quaternary(false),
        other => {
            return Err(CliError::Validation(format!(
                "unknown ensemble {other:?} (expected gaussian, real-gaussian, rademacher, quaternary, quaternary-raw)"
            )))
        }
    };
    Ok(ensemble)
}

fn parse_alphabet(name: &str) -> Result<Alphabet, CliError> {
    match name {
        "pm1" => Ok(Alphabet::PlusMinusOne),
        "quaternary" => Ok(Alphabet::Quaternary),
        other => Err(CliError::Validation(format!(
            "unknown alphabet {other:?} (expected pm1 or quaternary)"
        ))),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| CliError::Validation(format!("bad number {t:?}: {e}")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(CliError::Validation(format!(
            "expected RE or RE,IM, got {s:?}"
        ))),
    }
}

fn frame_point(kappa: Curvature, abs_u: f64) -> Result<DiskPoint, CliError> {
    // Frame centers sit on the positive real axis by convention.
    DiskPoint::new(Complex64::new(abs_u, 0.0), kappa).map_err(validation)
}

/// Test-function support must be a compact subset of the domain disk.
fn parse_support_radius(r_phi: f64, kappa: Curvature) -> Result<f64, CliError> {
    if r_phi.is_nan() || r_phi <= 0.0 || r_phi >= kappa.radius() {
        return Err(CliError::Validation(format!(
            "test-function radius {r_phi} must satisfy 0 < r < {}",
            kappa.radius()
        )));
    }
    Ok(r_phi)
}

fn parse_resolution(resolution: usize) -> Result<usize, CliError> {
    if resolution == 0 || resolution > 1 << 14 {
        return Err(CliError::Validation(format!(
            "raster resolution {resolution} must be in 1..=16384"
        )));
    }
    Ok(resolution)
}

fn parse_window(half_side: f64) -> Result<f64, CliError> {
    if half_side.is_nan() || half_side <= 0.0 {
        return Err(CliError::Validation(format!(
            "window half-side {half_side} must be positive"
        )));
    }
    Ok(half_side)
}

fn csv_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Validation(format!("bad list entry {t:?}: {e}")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// kernel-check
// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
struct KernelCheckArgs {
    /// Comma-separated curvature list, e.g. "0,-0.25,-1".
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Random (z, w, u) triples per curvature for the covariance identity.
    #[arg(long)]
    triples: Option<usize>,
    /// Random (λ, z) configurations for the variance identity.
    #[arg(long)]
    configs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default)]
struct KernelCheckParams {
    kappa: Option<Vec<f64>>,
    triples: Option<usize>,
    configs: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct KernelCheckReport {
    kappa: Vec<f64>,
    triples: usize,
    max_covariance_residual: f64,
    covariance_tolerance: f64,
    variance_configs: usize,
    max_variance_gap_ratio: f64,
    max_frame_spread_ratio: f64,
    pass: bool,
}

fn kernel_check(args: &KernelCheckArgs) -> Result<(), CliError> {
    let file: KernelCheckParams = load_config(&args.config, "kernel-check")?;
    let kappa_list = match (&args.kappa, file.kappa) {
        (Some(s), _) => csv_list(s)?,
        (None, Some(v)) => v,
        (None, None) => vec![0.0, -0.25, -1.0],
    };
    let triples = pick(args.triples, file.triples, 10_000);
    let configs = pick(args.configs, file.configs, 100);
    let seed = pick(args.seed, file.seed, 1);
    let out = pick(args.out.clone(), file.out, PathBuf::from("out"));
    for &k in &kappa_list {
        parse_kappa(k)?;
    }
    std::fs::create_dir_all(&out)?;
    let params = KernelCheckParams {
        kappa: Some(kappa_list.clone()),
        triples: Some(triples),
        configs: Some(configs),
        seed: Some(seed),
        out: Some(out.clone()),
    };
    write_manifest(&out, "kernel-check", &params)?;

    let kappas: Vec<Curvature> = kappa_list
        .iter()
        .map(|&k| parse_kappa(k))
        .collect::<Result<_, _>>()?;
    let max_residual = covariance_identity_sweep(&kappas, triples, seed);
    let (max_gap_ratio, max_spread_ratio) =
        variance_identity_sweep(configs, seed ^ 0x5eed_cafe).map_err(numerical)?;

    let report = KernelCheckReport {
        kappa: kappa_list,
        triples,
        max_covariance_residual: max_residual,
        covariance_tolerance: 1e-10,
        variance_configs: configs,
        max_variance_gap_ratio: max_gap_ratio,
        max_frame_spread_ratio: max_spread_ratio,
        pass: max_residual < 1e-10 && max_gap_ratio <= 1.0 && max_spread_ratio <= 1.0,
    };
    write_json(&out.join("report_kernel.json"), &report)?;
    if !report.pass {
        return Err(CliError::Numerical(format!(
            "kernel identities failed: residual {max_residual:.3e}, gap ratio {max_gap_ratio:.3}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// sample-zeros
// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
struct SampleZerosArgs {
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    #[arg(long)]
    ensemble: Option<String>,
    /// Frame center modulus (the center sits on the positive real axis).
    #[arg(long)]
    abs_u: Option<f64>,
    /// Support radius of the bump test function.
    #[arg(long)]
    r_phi: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Intensity raster resolution (pixels per side).
    #[arg(long)]
    raster: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default)]
struct SampleZerosParams {
    kappa: Option<f64>,
    ensemble: Option<String>,
    abs_u: Option<f64>,
    r_phi: Option<f64>,
    samples: Option<usize>,
    seed: Option<u64>,
    raster: Option<usize>,
    out: Option<PathBuf>,
}

fn sample_zeros(args: &SampleZerosArgs) -> Result<(), CliError> {
    let file: SampleZerosParams = load_config(&args.config, "sample-zeros")?;
    let params = SampleZerosParams {
        kappa: Some(pick(args.kappa, file.kappa, -1.0)),
        ensemble: Some(pick(
            args.ensemble.clone(),
            file.ensemble,
            "gaussian".into(),
        )),
        abs_u: Some(pick(args.abs_u, file.abs_u, 0.0)),
        r_phi: Some(pick(args.r_phi, file.r_phi, 0.5)),
        samples: Some(pick(args.samples, file.samples, 100)),
        seed: Some(pick(args.seed, file.seed, 1)),
        raster: Some(pick(args.raster, file.raster, 512)),
        out: Some(pick(args.out.clone(), file.out, PathBuf::from("out"))),
    };
    let kappa = parse_kappa(params.kappa.unwrap())?;
    let ensemble = parse_ensemble(params.ensemble.as_ref().unwrap())?;
    let u = frame_point(kappa, params.abs_u.unwrap())?;
    let r_phi = parse_support_radius(params.r_phi.unwrap(), kappa)?;
    let resolution = parse_resolution(params.raster.unwrap())?;
    let out = params.out.clone().unwrap();
    std::fs::create_dir_all(&out)?;
    write_manifest(&out, "sample-zeros", &params)?;

    let cfg = ExperimentConfig::new(
        ensemble,
        u,
        TestFunction::bump(r_phi),
        params.samples.unwrap(),
        params.seed.unwrap(),
    );
    let output = run_experiment(&cfg).map_err(numerical)?;

    let mut zeros_csv = String::from("# columns: sample_index,re,im (mapped coordinates)\n");
    for (i, zeros) in output.mapped_zeros.iter().enumerate() {
        for z in zeros {
            zeros_csv.push_str(&format!("{i},{},{}\n", z.re, z.im));
        }
    }
    atomic_write(&out.join("zeros.csv"), zeros_csv.as_bytes())?;
    write_sample_csv(&out.join("samples_statistic.csv"), &output.sample)?;
    write_json(&out.join("samples_statistic.json"), &output.sample)?;

    let window = Rect::square(r_phi * 1.05);
    let grid = intensity_raster(&output, window, resolution);
    atomic_write(&out.join("raster_intensity.pgm"), &grid.to_pgm16(false))?;
    write_json(
        &out.join("raster_intensity.json"),
        &RasterSidecar::for_grid(&grid, false, "mean zero count per cell per sample"),
    )?;
    Ok(())
}

// ---------------------------------------------------------------------------
// converge-test
// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
struct ConvergeTestArgs {
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    /// Non-Gaussian ensemble under test.
    #[arg(long)]
    ensemble: Option<String>,
    /// Comma-separated |u| values, e.g. "0.3,0.7,0.95".
    #[arg(long)]
    abs_u: Option<String>,
    #[arg(long)]
    r_phi: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default)]
struct ConvergeTestParams {
    kappa: Option<f64>,
    ensemble: Option<String>,
    abs_u: Option<Vec<f64>>,
    r_phi: Option<f64>,
    samples: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

fn converge_test(args: &ConvergeTestArgs) -> Result<(), CliError> {
    let file: ConvergeTestParams = load_config(&args.config, "converge-test")?;
    let abs_u = match (&args.abs_u, file.abs_u) {
        (Some(s), _) => csv_list(s)?,
        (None, Some(v)) => v,
        (None, None) => vec![0.3, 0.7, 0.95],
    };
    let params = ConvergeTestParams {
        kappa: Some(pick(args.kappa, file.kappa, -1.0)),
        ensemble: Some(pick(
            args.ensemble.clone(),
            file.ensemble,
            "quaternary".into(),
        )),
        abs_u: Some(abs_u.clone()),
        r_phi: Some(pick(args.r_phi, file.r_phi, 0.5)),
        samples: Some(pick(args.samples, file.samples, 2000)),
        seed: Some(pick(args.seed, file.seed, 42)),
        out: Some(pick(args.out.clone(), file.out, PathBuf::from("out"))),
    };
    let kappa = parse_kappa(params.kappa.unwrap())?;
    let ensemble = parse_ensemble(params.ensemble.as_ref().unwrap())?;
    let out = params.out.clone().unwrap();
    std::fs::create_dir_all(&out)?;
    write_manifest(&out, "converge-test", &params)?;

    let phi = TestFunction::bump(parse_support_radius(params.r_phi.unwrap(), kappa)?);
    let n_samples = params.samples.unwrap();
    let seed = params.seed.unwrap();

    // Baseline: the Gaussian law at u = 0. Real ensembles converge to
    // the real-Gaussian zero law, so they get the matching baseline.
    let baseline_ensemble = if ensemble.is_real() {
        Ensemble::real_gaussian()
    } else {
        Ensemble::complex_gaussian()
    };
    let baseline_seed = derive_sample_seed(seed, 0xBA5E, 0);
    let baseline = run_experiment(&ExperimentConfig::new(
        baseline_ensemble,
        frame_point(kappa, 0.0)?,
        phi,
        n_samples,
        baseline_seed,
    ))
    .map_err(numerical)?;
    write_sample_csv(&out.join("samples_base.csv"), &baseline.sample)?;
    write_json(&out.join("samples_base.json"), &baseline.sample)?;

    let mut ks_csv = String::from("abs_u,ks\n");
    let mut ks_values = Vec::new();
    for (i, &au) in abs_u.iter().enumerate() {
        let run_seed = derive_sample_seed(seed, i as u64 + 1, 0);
        let result = run_experiment(&ExperimentConfig::new(
            ensemble.clone(),
            frame_point(kappa, au)?,
            phi,
            n_samples,
            run_seed,
        ))
        .map_err(numerical)?;
        let label = format!("{au:.3}").replace('.', "p");
        write_sample_csv(&out.join(format!("samples_u{label}.csv")), &result.sample)?;
        write_json(&out.join(format!("samples_u{label}.json")), &result.sample)?;
        let d = ks_between(&result.sample, &baseline.sample).map_err(numerical)?;
        ks_csv.push_str(&format!("{au},{d}\n"));
        ks_values.push((au, d));
    }
    atomic_write(&out.join("report_ks.csv"), ks_csv.as_bytes())?;
    Ok(())
}

// ---------------------------------------------------------------------------
// littlewood
// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
struct LittlewoodArgs {
    /// Polynomial degree.
    #[arg(long)]
    n: Option<usize>,
    /// Coefficient alphabet: pm1 or quaternary.
    #[arg(long)]
    alphabet: Option<String>,
    /// Raster resolution (pixels per side).
    #[arg(long)]
    raster: Option<usize>,
    /// Half-side of the square raster window.
    #[arg(long)]
    window: Option<f64>,
    /// Enumerate one representative per symmetry orbit.
    #[arg(long)]
    quotient: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default)]
struct LittlewoodParams {
    n: Option<usize>,
    alphabet: Option<String>,
    raster: Option<usize>,
    window: Option<f64>,
    quotient: Option<bool>,
    out: Option<PathBuf>,
}

fn littlewood(args: &LittlewoodArgs) -> Result<(), CliError> {
    let file: LittlewoodParams = load_config(&args.config, "littlewood")?;
    let params = LittlewoodParams {
        n: Some(pick(args.n, file.n, 13)),
        alphabet: Some(pick(args.alphabet.clone(), file.alphabet, "pm1".into())),
        raster: Some(pick(args.raster, file.raster, 2048)),
        window: Some(pick(args.window, file.window, 2.5)),
        quotient: Some(args.quotient || file.quotient.unwrap_or(false)),
        out: Some(pick(args.out.clone(), file.out, PathBuf::from("out"))),
    };
    let alphabet = parse_alphabet(params.alphabet.as_ref().unwrap())?;
    let n = params.n.unwrap();
    let resolution = parse_resolution(params.raster.unwrap())?;
    let half = parse_window(params.window.unwrap())?;
    let out = params.out.clone().unwrap();
    std::fs::create_dir_all(&out)?;
    write_manifest(&out, "littlewood", &params)?;

    let mut atlas = enumerate_roots_with(
        n,
        alphabet,
        EnumerationOptions {
            quotient: params.quotient.unwrap(),
            ..Default::default()
        },
    )
    .map_err(numerical)?;
    write_complex_binary(&out.join("roots.bin"), &atlas.roots)?;

    let tol = 1e-9;
    let symmetries = SymmetryReport {
        conjugation: atlas.verify_conjugation_closure(tol),
        negation: atlas.verify_negation_closure(tol),
        inversion: atlas.verify_inversion_closure(tol),
        rotation_by_i: atlas.verify_rotation_closure(tol),
        tolerance: tol,
    };
    let hole_centers: &[Complex64] = match alphabet {
        Alphabet::PlusMinusOne => &[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        Alphabet::Quaternary => &[
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
        ],
    };
    let holes: Vec<HoleMetric> = hole_centers
        .iter()
        .map(|&c| HoleMetric {
            center: [c.re, c.im],
            exclusion_tol: 1e-6,
            radius: atlas.hole_radius(c, 1e-6),
        })
        .collect();
    write_json(
        &out.join("roots.json"),
        &RootListSidecar {
            n,
            alphabet: alphabet.label().to_string(),
            count: atlas.roots.len(),
            symmetries_verified: symmetries.clone(),
            holes,
        },
    )?;
    if !(symmetries.conjugation && symmetries.negation && symmetries.inversion) {
        return Err(CliError::Numerical(
            "root atlas failed a symmetry-closure check".into(),
        ));
    }

    atlas.raster = Some(raster_accumulate(
        &atlas.roots,
        Rect::square(half),
        resolution,
    ));
    let grid = atlas.raster.as_ref().unwrap();
    atomic_write(&out.join("raster.pgm"), &grid.to_pgm16(true))?;
    write_json(
        &out.join("raster.json"),
        &RasterSidecar::for_grid(grid, true, "log-scaled hit counts"),
    )?;
    Ok(())
}

// ---------------------------------------------------------------------------
// fractal / boxdim
// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
struct FractalArgs {
    /// Evaluation point, "RE" or "RE,IM".
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    alphabet: Option<String>,
    /// Iteration depth n (|A|^{n+1} points).
    #[arg(long)]
    depth: Option<usize>,
    /// Also estimate the box dimension.
    #[arg(long)]
    boxdim: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default)]
struct FractalParams {
    z: Option<String>,
    alphabet: Option<String>,
    depth: Option<usize>,
    boxdim: Option<bool>,
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct DimensionReport {
    z: [f64; 2],
    alphabet: String,
    depth: usize,
    count: usize,
    tail_radius: f64,
    scales: Vec<f64>,
    counts: Vec<usize>,
    estimate: f64,
    r_squared: f64,
    degenerate_fit: bool,
    bound: f64,
    bound_satisfied: bool,
    conjectured_dimension: f64,
}

fn value_set_report(set: &fractal::ValueSet) -> Result<DimensionReport, CliError> {
    let (dmin, dmax, num) = fractal::default_scale_range(set);
    let (fit, degenerate) = match fractal::box_dimension(&set.points, (dmin, dmax), num) {
        Ok(fit) => (fit, false),
        Err(fractal::FractalError::DegenerateFit {
            estimate,
            r_squared,
        }) => (
            fractal::BoxDimension {
                estimate,
                r_squared,
                scales: vec![],
                counts: vec![],
            },
            true,
        ),
        Err(e) => return Err(numerical(e)),
    };
    let bound = fractal::dimension_bound(set.z, set.alphabet);
    Ok(DimensionReport {
        z: [set.z.re, set.z.im],
        alphabet: set.alphabet.label().to_string(),
        depth: set.depth,
        count: set.points.len(),
        tail_radius: set.tail_radius,
        estimate: fit.estimate,
        r_squared: fit.r_squared,
        degenerate_fit: degenerate,
        bound,
        bound_satisfied: fractal::bound_check(set.z, set.alphabet, fit.estimate),
        conjectured_dimension: fractal::conjectured_dimension(set.z, set.alphabet),
        scales: fit.scales,
        counts: fit.counts,
    })
}

fn fractal_cmd(args: &FractalArgs) -> Result<(), CliError> {
    let file: FractalParams = load_config(&args.config, "fractal")?;
    let params = FractalParams {
        z: Some(pick(args.z.clone(), file.z, "0.333333".into())),
        alphabet: Some(pick(args.alphabet.clone(), file.alphabet, "pm1".into())),
        depth: Some(pick(args.depth, file.depth, 16)),
        boxdim: Some(args.boxdim || file.boxdim.unwrap_or(false)),
        out: Some(pick(args.out.clone(), file.out, PathBuf::from("out"))),
    };
    let z = parse_complex(params.z.as_ref().unwrap())?;
    let alphabet = parse_alphabet(params.alphabet.as_ref().unwrap())?;
    let depth = params.depth.unwrap();
    let out = params.out.clone().unwrap();
    std::fs::create_dir_all(&out)?;
    write_manifest(&out, "fractal", &params)?;

    let set = fractal::iterate_value_set(z, alphabet, depth).map_err(numerical)?;
    write_complex_binary(&out.join("points.bin"), &set.points)?;
    write_json(
        &out.join("points.json"),
        &PointCloudSidecar {
            z: [z.re, z.im],
            alphabet: alphabet.label().to_string(),
            depth,
            count: set.points.len(),
            tail_radius: set.tail_radius,
        },
    )?;
    if params.boxdim.unwrap() {
        let report = value_set_report(&set)?;
        write_json(&out.join("report_fractal.json"), &report)?;
        if !report.bound_satisfied {
            return Err(CliError::Numerical(format!(
                "dimension estimate {} exceeds the bound {} + 0.1",
                report.estimate, report.bound
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Args)]
struct BoxdimArgs {
    /// Evaluation point, "RE" or "RE,IM".
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default)]
struct BoxdimParams {
    z: Option<String>,
    alphabet: Option<String>,
    depth: Option<usize>,
    out: Option<PathBuf>,
}

fn boxdim(args: &BoxdimArgs) -> Result<(), CliError> {
    let file: BoxdimParams = load_config(&args.config, "boxdim")?;
    let params = BoxdimParams {
        z: Some(pick(args.z.clone(), file.z, "0.333333".into())),
        alphabet: Some(pick(args.alphabet.clone(), file.alphabet, "pm1".into())),
        depth: Some(pick(args.depth, file.depth, 16)),
        out: Some(pick(args.out.clone(), file.out, PathBuf::from("out"))),
    };
    let z = parse_complex(params.z.as_ref().unwrap())?;
    let alphabet = parse_alphabet(params.alphabet.as_ref().unwrap())?;
    let out = params.out.clone().unwrap();
    std::fs::create_dir_all(&out)?;
    write_manifest(&out, "boxdim", &params)?;
    let set = fractal::iterate_value_set(z, alphabet, params.depth.unwrap()).map_err(numerical)?;
    let report = value_set_report(&set)?;
    write_json(&out.join("report_boxdim.json"), &report)?;
    if !report.bound_satisfied {
        return Err(CliError::Numerical(format!(
            "dimension estimate {} exceeds the bound {} + 0.1",
            report.estimate, report.bound
        )));
    }
    Ok(())
}
