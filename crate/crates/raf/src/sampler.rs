//! Seeded coefficient ensembles, truncation-degree selection and
//! evaluation of truncated random analytic functions.
//!
//! Sampling is driven by a counter-based scheme: every task derives its
//! own generator from `(master_seed, index, attempt)`, so parallel and
//! serial runs produce bit-identical results.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{CoefficientTable, Curvature};
use crate::zerofinder::CoeffPoly;

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
    #[error("evaluation radius {r_max} must satisfy 0 < r_max < {radius}")]
    RadiusOutOfRange { r_max: f64, radius: f64 },
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("truncation degree exceeds cap {cap} for r_max={r_max}, eps={eps}")]
    TruncationTooDeep { cap: usize, r_max: f64, eps: f64 },
}

/// A point mass of a discrete coefficient distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub value: Complex64,
    pub probability: f64,
}

/// Coefficient distribution family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EnsembleKind {
    /// Complex Gaussian with independent N(0, 1/2) real and imaginary
    /// parts, so E|X|² = 1.
    ComplexGaussian,
    /// Real standard normal.
    RealGaussian,
    /// Uniform on {+1, -1}.
    RademacherReal,
    /// Uniform on {1+i, 1-i, -1+i, -1-i}; E|X|² = 2 before normalization.
    QuaternaryComplex,
    /// Arbitrary finite-support distribution.
    CustomDiscrete { atoms: Vec<Atom> },
}

/// An ensemble plus its normalization policy.
///
/// The draw scale is derived at construction; after deserializing a
/// hand-built config call [`Ensemble::rehydrate`] to recompute it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    kind: EnsembleKind,
    normalize_to_unit_variance: bool,
    scale: f64,
}

impl Ensemble {
    /// Builds an ensemble, validating mean-zero and the isotropy
    /// conditions for custom atoms when normalization is requested.
    pub fn new(kind: EnsembleKind, normalize_to_unit_variance: bool) -> Result<Self, SamplerError> {
        let scale = match &kind {
            EnsembleKind::ComplexGaussian
            | EnsembleKind::RealGaussian
            | EnsembleKind::RademacherReal => 1.0,
            EnsembleKind::QuaternaryComplex => {
                if normalize_to_unit_variance {
                    std::f64::consts::FRAC_1_SQRT_2
                } else {
                    1.0
                }
            }
            EnsembleKind::CustomDiscrete { atoms } => {
                let second = validate_atoms(atoms, normalize_to_unit_variance)?;
                if normalize_to_unit_variance {
                    1.0 / second.sqrt()
                } else {
                    1.0
                }
            }
        };
        Ok(Self {
            kind,
            normalize_to_unit_variance,
            scale,
        })
    }

    pub fn complex_gaussian() -> Self {
        Self::new(EnsembleKind::ComplexGaussian, true).unwrap()
    }

    pub fn real_gaussian() -> Self {
        Self::new(EnsembleKind::RealGaussian, true).unwrap()
    }

    pub fn rademacher() -> Self {
        Self::new(EnsembleKind::RademacherReal, true).unwrap()
    }

    pub fn quaternary(normalize: bool) -> Self {
        Self::new(EnsembleKind::QuaternaryComplex, normalize).unwrap()
    }

    pub fn kind(&self) -> &EnsembleKind {
        &self.kind
    }

    pub fn normalized(&self) -> bool {
        self.normalize_to_unit_variance
    }

    /// Whether every draw is real (the real-coefficient regime,
    /// compared against the real Gaussian baseline).
    pub fn is_real(&self) -> bool {
        match &self.kind {
            EnsembleKind::RealGaussian | EnsembleKind::RademacherReal => true,
            EnsembleKind::CustomDiscrete { atoms } => atoms.iter().all(|a| a.value.im == 0.0),
            _ => false,
        }
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        let raw = match &self.kind {
            EnsembleKind::ComplexGaussian => {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
            }
            EnsembleKind::RealGaussian => {
                let re: f64 = rng.sample(StandardNormal);
                Complex64::new(re, 0.0)
            }
            EnsembleKind::RademacherReal => {
                if rng.random::<bool>() {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                }
            }
            EnsembleKind::QuaternaryComplex => {
                let idx = rng.random_range(0..4u8);
                let re = if idx & 1 == 0 { 1.0 } else { -1.0 };
                let im = if idx & 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(re, im)
            }
            EnsembleKind::CustomDiscrete { atoms } => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut chosen = atoms[atoms.len() - 1].value;
                for atom in atoms {
                    acc += atom.probability;
                    if u < acc {
                        chosen = atom.value;
                        break;
                    }
                }
                chosen
            }
        };
        raw * self.scale
    }

    /// Restores the derived scale factor after deserialization.
    pub fn rehydrate(&mut self) -> Result<(), SamplerError> {
        *self = Self::new(self.kind.clone(), self.normalize_to_unit_variance)?;
        Ok(())
    }

    /// Short identifier used in metadata and file names.
    pub fn label(&self) -> String {
        match &self.kind {
            EnsembleKind::ComplexGaussian => "gaussian".into(),
            EnsembleKind::RealGaussian => "real-gaussian".into(),
            EnsembleKind::RademacherReal => "rademacher".into(),
            EnsembleKind::QuaternaryComplex => "quaternary".into(),
            EnsembleKind::CustomDiscrete { atoms } => format!("custom-{}", atoms.len()),
        }
    }
}

fn validate_atoms(atoms: &[Atom], normalize: bool) -> Result<f64, SamplerError> {
    if atoms.is_empty() {
        return Err(SamplerError::InvalidEnsemble("no atoms".into()));
    }
    let mut total_p = 0.0;
    let mut mean = Complex64::new(0.0, 0.0);
    let mut re2 = 0.0;
    let mut im2 = 0.0;
    let mut cross = 0.0;
    let mut scale = 0.0f64;
    for atom in atoms {
        if atom.probability.is_nan()
            || atom.probability < 0.0
            || !atom.value.re.is_finite()
            || !atom.value.im.is_finite()
        {
            return Err(SamplerError::InvalidEnsemble(
                "atoms must be finite with non-negative probabilities".into(),
            ));
        }
        total_p += atom.probability;
        mean += atom.probability * atom.value;
        re2 += atom.probability * atom.value.re * atom.value.re;
        im2 += atom.probability * atom.value.im * atom.value.im;
        cross += atom.probability * atom.value.re * atom.value.im;
        scale = scale.max(atom.value.norm());
    }
    if (total_p - 1.0).abs() > 1e-9 {
        return Err(SamplerError::InvalidEnsemble(format!(
            "probabilities sum to {total_p}, expected 1"
        )));
    }
    let second = re2 + im2;
    if normalize {
        let tol = 1e-9 * (1.0 + scale);
        if mean.norm() > tol {
            return Err(SamplerError::InvalidEnsemble(format!(
                "atoms are not mean-zero (mean = {mean})"
            )));
        }
        if (re2 - im2).abs() > tol * (1.0 + scale) || cross.abs() > tol * (1.0 + scale) {
            return Err(SamplerError::InvalidEnsemble(
                "atoms violate the isotropy conditions E[(Re X)²]=E[(Im X)²], E[Re X·Im X]=0"
                    .into(),
            ));
        }
        if second <= 0.0 {
            return Err(SamplerError::InvalidEnsemble("zero variance".into()));
        }
    }
    Ok(second)
}

/// Stateless mix of `(master_seed, index, attempt)` into a task seed.
///
/// SplitMix64 finalizer chain; used for per-sample generators so that
/// parallel schedules cannot change the stream any task sees.
pub fn derive_sample_seed(master: u64, index: u64, attempt: u32) -> u64 {
    fn mix(mut x: u64) -> u64 {
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
        x ^ (x >> 31)
    }
    let a = mix(master ^ index.wrapping_add(1).wrapping_mul(0x9e3779b97f4a7c15));
    mix(a ^ u64::from(attempt).wrapping_mul(0xd1b54a32d192ed03))
}

/// Deterministic generator for a 64-bit seed (fixed domain tag in the
/// remaining key bytes).
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(b"raf-coef");
    ChaCha8Rng::from_seed(key)
}

/// I.i.d. draws from `ensemble`; deterministic in `(ensemble, count, seed)`.
pub fn sample_coefficients(ensemble: &Ensemble, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| ensemble.draw(&mut rng)).collect()
}

const TRUNCATION_CAP: usize = 2_000_000;

/// Accurate tail `Σ_{m>n} a_{m,κ}² r^{2m}` with a safe geometric majorant
/// for the unsummed remainder.
fn tail_sum(kappa: Curvature, n: usize, r: f64) -> f64 {
    let c = -kappa.kappa();
    let r2 = r * r;
    let mut term = term_at(kappa, n, r);
    let mut sum = 0.0f64;
    let mut m = n;
    loop {
        let ratio = r2 * (1.0 + m as f64 * c) / (m as f64 + 1.0);
        term *= ratio;
        m += 1;
        // term is now a_m² r^{2m}
        let q = majorant_ratio(kappa, m, r2);
        if q < 1.0 {
            let remainder = term * q / (1.0 - q);
            if remainder <= 1e-6 * (sum + term) || remainder < 1e-300 {
                return sum + term + remainder;
            }
        }
        sum += term;
        if m > n + TRUNCATION_CAP {
            return f64::INFINITY;
        }
    }
}

/// Upper bound for the term ratio `a_{m+1}² r² / a_m²` valid for all
/// indices ≥ m.
fn majorant_ratio(kappa: Curvature, m: usize, r2: f64) -> f64 {
    let c = -kappa.kappa();
    let local = r2 * (1.0 + m as f64 * c) / (m as f64 + 1.0);
    local.max(r2 * c)
}

fn term_at(kappa: Curvature, n: usize, r: f64) -> f64 {
    let table = CoefficientTable::new(kappa, n);
    (2.0 * table.log_a(n) + 2.0 * n as f64 * r.ln()).exp()
}

fn check_radius(kappa: Curvature, r_max: f64) -> Result<(), SamplerError> {
    if r_max.is_nan() || r_max <= 0.0 || r_max >= kappa.radius() {
        return Err(SamplerError::RadiusOutOfRange {
            r_max,
            radius: kappa.radius(),
        });
    }
    Ok(())
}

/// Smallest `N` with `Σ_{n>N} a_{n,κ}² r_max^{2n} < eps²`.
pub fn truncation_degree(kappa: Curvature, r_max: f64, eps: f64) -> Result<usize, SamplerError> {
    check_radius(kappa, r_max)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(SamplerError::NonPositiveTolerance(eps));
    }
    let c = -kappa.kappa();
    let r2 = r_max * r_max;
    let target = eps * eps;

    // Walk terms forward until the geometric majorant of everything
    // beyond is negligible against the target, then scan suffix sums
    // backward for the smallest admissible degree.
    let mut terms = vec![1.0f64]; // a_0² r^0
    let mut m = 0usize;
    loop {
        let q = majorant_ratio(kappa, m, r2);
        let term = terms[m];
        if q < 1.0 {
            let remainder = term * q / (1.0 - q);
            if remainder < target * 1e-4 || remainder < 1e-300 {
                break;
            }
        }
        let ratio = r2 * (1.0 + m as f64 * c) / (m as f64 + 1.0);
        terms.push(term * ratio);
        m += 1;
        if m > TRUNCATION_CAP {
            return Err(SamplerError::TruncationTooDeep {
                cap: TRUNCATION_CAP,
                r_max,
                eps,
            });
        }
    }
    let remainder = {
        let q = majorant_ratio(kappa, m, r2);
        terms[m] * q / (1.0 - q)
    };
    // suffix[n] = Σ_{i>n} terms[i] + remainder
    let mut suffix = remainder;
    let mut best = m;
    for n in (0..m).rev() {
        suffix += terms[n + 1];
        if suffix < target {
            best = n;
        } else {
            break;
        }
    }
    if best == m && suffix >= target && terms.len() > 1 {
        // Even the deepest scanned degree fails (cannot happen when the
        // loop above terminated by the remainder test).
        return Err(SamplerError::TruncationTooDeep {
            cap: TRUNCATION_CAP,
            r_max,
            eps,
        });
    }
    Ok(best)
}

/// Standard-deviation bound `(Σ_{n>N} a_{n,κ}² r_max^{2n})^{1/2}` of the
/// discarded tail on the disk of radius `r_max`.
pub fn tail_l2_bound(kappa: Curvature, n_trunc: usize, r_max: f64) -> Result<f64, SamplerError> {
    check_radius(kappa, r_max)?;
    Ok(tail_sum(kappa, n_trunc, r_max).sqrt())
}

/// Samples one truncated random analytic function; alias for
/// [`TruncatedSeries::sample`].
pub fn sample_raf(
    ensemble: &Ensemble,
    kappa: Curvature,
    n_trunc: usize,
    r_max: f64,
    seed: u64,
) -> Result<TruncatedSeries, SamplerError> {
    TruncatedSeries::sample(ensemble, kappa, n_trunc, r_max, seed)
}

/// A sampled series `Σ_{n≤N} a_{n,κ} X_n zⁿ` with its provenance.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    kappa: Curvature,
    coeffs: Vec<Complex64>,
    r_max: f64,
    tail_bound: f64,
    seed: u64,
    ensemble: Ensemble,
}

impl TruncatedSeries {
    /// Samples coefficients `a_{n,κ} X_n` for `n = 0..=n_trunc`.
    pub fn sample(
        ensemble: &Ensemble,
        kappa: Curvature,
        n_trunc: usize,
        r_max: f64,
        seed: u64,
    ) -> Result<Self, SamplerError> {
        check_radius(kappa, r_max)?;
        let table = CoefficientTable::new(kappa, n_trunc);
        let xs = sample_coefficients(ensemble, n_trunc + 1, seed);
        let coeffs = xs
            .into_iter()
            .enumerate()
            .map(|(n, x)| x * table.a(n))
            .collect();
        Ok(Self {
            kappa,
            coeffs,
            r_max,
            tail_bound: tail_l2_bound(kappa, n_trunc, r_max)?,
            seed,
            ensemble: ensemble.clone(),
        })
    }

    pub fn from_coefficients(kappa: Curvature, coeffs: Vec<Complex64>, r_max: f64) -> Self {
        let tail_bound =
            tail_l2_bound(kappa, coeffs.len().saturating_sub(1), r_max).unwrap_or(f64::INFINITY);
        Self {
            kappa,
            coeffs,
            r_max,
            tail_bound,
            seed: 0,
            ensemble: Ensemble::complex_gaussian(),
        }
    }

    pub fn kappa(&self) -> Curvature {
        self.kappa
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Std-dev bound of the discarded tail on `{|z| ≤ r_max}`.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ensemble(&self) -> &Ensemble {
        &self.ensemble
    }

    /// Whether the declared tail bound applies at `z`.
    pub fn covers(&self, z: Complex64) -> bool {
        z.norm() <= self.r_max
    }

    /// Horner evaluation of the truncated series.
    ///
    /// Outside the declared disk the value is still returned but the
    /// recorded tail bound is void; check [`Self::covers`].
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// The truncated series as an explicit polynomial.
    pub fn to_poly(&self) -> CoeffPoly {
        CoeffPoly::new(self.coeffs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::covariance;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rademacher_support() {
        let ens = Ensemble::rademacher();
        for x in sample_coefficients(&ens, 1000, 99) {
            assert!(x == c(1.0, 0.0) || x == c(-1.0, 0.0));
        }
    }

    #[test]
    fn quaternary_moments() {
        let ens = Ensemble::quaternary(true);
        let draws = sample_coefficients(&ens, 100_000, 1234);
        let n = draws.len() as f64;
        let mean = draws.iter().sum::<Complex64>() / n;
        let second = draws.iter().map(|x| x.norm_sqr()).sum::<f64>() / n;
        let re2 = draws.iter().map(|x| x.re * x.re).sum::<f64>() / n;
        let im2 = draws.iter().map(|x| x.im * x.im).sum::<f64>() / n;
        let cross = draws.iter().map(|x| x.re * x.im).sum::<f64>() / n;
        assert!(mean.norm() < 0.02);
        assert!((second - 1.0).abs() < 0.02);
        assert!((re2 - im2).abs() < 0.02);
        assert!(cross.abs() < 0.02);
    }

    #[test]
    fn sampling_is_deterministic() {
        let ens = Ensemble::quaternary(true);
        let a = sample_coefficients(&ens, 500, 42);
        let b = sample_coefficients(&ens, 500, 42);
        assert_eq!(a, b);
        let c = sample_coefficients(&ens, 500, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn custom_atoms_validated() {
        // Mean is not zero: rejected when normalization is requested.
        let bad = EnsembleKind::CustomDiscrete {
            atoms: vec![
                Atom {
                    value: c(1.0, 0.0),
                    probability: 0.75,
                },
                Atom {
                    value: c(-1.0, 0.0),
                    probability: 0.25,
                },
            ],
        };
        assert!(Ensemble::new(bad.clone(), true).is_err());
        assert!(Ensemble::new(bad, false).is_ok());
        // Anisotropic: E[(Re)²] ≠ E[(Im)²].
        let aniso = EnsembleKind::CustomDiscrete {
            atoms: vec![
                Atom {
                    value: c(1.0, 0.0),
                    probability: 0.5,
                },
                Atom {
                    value: c(-1.0, 0.0),
                    probability: 0.5,
                },
            ],
        };
        // A real ensemble is fine unnormalized but fails the complex
        // isotropy check only when Im-moments are required to match:
        // here E[(Im X)²] = 0 ≠ 1 = E[(Re X)²].
        assert!(Ensemble::new(aniso, true).is_err());
        let ok = EnsembleKind::CustomDiscrete {
            atoms: vec![
                Atom {
                    value: c(2.0, 0.0),
                    probability: 0.25,
                },
                Atom {
                    value: c(-2.0, 0.0),
                    probability: 0.25,
                },
                Atom {
                    value: c(0.0, 2.0),
                    probability: 0.25,
                },
                Atom {
                    value: c(0.0, -2.0),
                    probability: 0.25,
                },
            ],
        };
        let ens = Ensemble::new(ok, true).unwrap();
        let draws = sample_coefficients(&ens, 20_000, 7);
        let second = draws.iter().map(|x| x.norm_sqr()).sum::<f64>() / 20_000.0;
        assert!((second - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncation_degree_hyperbolic_closed_form() {
        // κ = -1: tail is exactly geometric, r^{2(N+1)}/(1-r²) < eps².
        let n = truncation_degree(Curvature::hyperbolic(), 0.9, 1e-6).unwrap();
        assert_eq!(n, 139);
    }

    #[test]
    fn truncation_degree_huge_eps() {
        let n = truncation_degree(Curvature::hyperbolic(), 0.5, 10.0).unwrap();
        assert_eq!(n, 0);
    }

    #[test]
    fn truncation_degree_flat_vs_factorial_oracle() {
        // Oracle: direct summation of Σ_{n>N} 4ⁿ/n! (κ = 0, r = 2).
        let tail_after = |n: usize| -> f64 {
            let mut term = 1.0f64; // 4^0/0!
            let mut sum = 0.0;
            for m in 1..200 {
                term *= 4.0 / m as f64;
                if m > n {
                    sum += term;
                }
            }
            sum
        };
        let mut oracle = 0;
        while tail_after(oracle) >= 1e-12 {
            oracle += 1;
        }
        let n = truncation_degree(Curvature::flat(), 2.0, 1e-6).unwrap();
        assert_eq!(n, oracle);
        assert!(tail_after(n) < 1e-12);
    }

    #[test]
    fn truncation_rejects_bad_radius() {
        assert!(truncation_degree(Curvature::hyperbolic(), 1.0, 1e-6).is_err());
        assert!(truncation_degree(Curvature::hyperbolic(), 0.0, 1e-6).is_err());
        assert!(truncation_degree(Curvature::hyperbolic(), 0.5, 0.0).is_err());
    }

    #[test]
    fn tail_bound_matches_direct_sum() {
        let kappa = Curvature::new(-0.5).unwrap();
        let r: f64 = 0.8 * kappa.radius();
        let n = 30;
        let table = crate::kernel::CoefficientTable::new(kappa, 400);
        let direct: f64 = (n + 1..=400)
            .map(|m| table.a_squared(m) * r.powi(2 * m as i32))
            .sum();
        let bound = tail_l2_bound(kappa, n, r).unwrap();
        assert_relative_eq!(bound, direct.sqrt(), max_relative = 1e-6);
    }

    #[test]
    fn raf_coefficients_hyperbolic_verbatim() {
        let ens = Ensemble::rademacher();
        let series = TruncatedSeries::sample(&ens, Curvature::hyperbolic(), 50, 0.5, 77).unwrap();
        let xs = sample_coefficients(&ens, 51, 77);
        assert_eq!(series.coeffs(), &xs[..]);
    }

    #[test]
    fn raf_coefficients_flat_factorial() {
        let ens = Ensemble::complex_gaussian();
        let series = TruncatedSeries::sample(&ens, Curvature::flat(), 20, 1.0, 5).unwrap();
        let xs = sample_coefficients(&ens, 21, 5);
        let mut fact = 1.0f64;
        for (n, &x) in xs.iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            let expected = x / fact.sqrt();
            assert!((series.coeffs()[n] - expected).norm() < 1e-14 * expected.norm().max(1.0));
        }
    }

    #[test]
    fn evaluate_constant_and_geometric() {
        let mut coeffs = vec![c(0.0, 0.0); 5];
        coeffs[0] = c(1.0, 0.0);
        let series = TruncatedSeries::from_coefficients(Curvature::hyperbolic(), coeffs, 0.9);
        assert_eq!(series.evaluate(c(0.3, -0.8)), c(1.0, 0.0));

        // All-ones coefficients at κ = -1: partial geometric sum. The
        // truncation gap 0.5^200 is far below roundoff, so the value is 2
        // to machine precision.
        let ones = vec![c(1.0, 0.0); 201];
        let series = TruncatedSeries::from_coefficients(Curvature::hyperbolic(), ones, 0.6);
        let v = series.evaluate(c(0.5, 0.0));
        assert!((v - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn evaluate_is_linear() {
        let ens = Ensemble::complex_gaussian();
        let s = TruncatedSeries::sample(&ens, Curvature::hyperbolic(), 40, 0.8, 1).unwrap();
        let t = TruncatedSeries::sample(&ens, Curvature::hyperbolic(), 40, 0.8, 2).unwrap();
        let summed: Vec<Complex64> = s
            .coeffs()
            .iter()
            .zip(t.coeffs())
            .map(|(&a, &b)| a + b)
            .collect();
        let st = TruncatedSeries::from_coefficients(Curvature::hyperbolic(), summed, 0.8);
        let z = c(0.41, -0.37);
        assert!((st.evaluate(z) - (s.evaluate(z) + t.evaluate(z))).norm() < 1e-12);
    }

    #[test]
    fn real_ensemble_conjugation_symmetry() {
        // Real coefficients: conj(f(z)) = f(conj z), exactly.
        for ens in [Ensemble::rademacher(), Ensemble::real_gaussian()] {
            let series =
                TruncatedSeries::sample(&ens, Curvature::hyperbolic(), 80, 0.9, 31).unwrap();
            for z in [c(0.3, 0.5), c(-0.77, 0.12), c(0.0, -0.89)] {
                assert_eq!(series.evaluate(z).conj(), series.evaluate(z.conj()));
            }
        }
    }

    #[test]
    fn empirical_covariance_matches_kernel() {
        let kappa = Curvature::hyperbolic();
        let ens = Ensemble::complex_gaussian();
        let z = c(0.5, 0.1);
        let w = c(-0.2, 0.4);
        let n_trunc = truncation_degree(kappa, 0.6, 1e-8).unwrap();
        let m = 5000usize;
        let mut cov = Complex64::new(0.0, 0.0);
        let mut pseudo = Complex64::new(0.0, 0.0);
        let mut var_z = 0.0f64;
        for i in 0..m {
            let seed = derive_sample_seed(4242, i as u64, 0);
            let s = TruncatedSeries::sample(&ens, kappa, n_trunc, 0.6, seed).unwrap();
            let fz = s.evaluate(z);
            let fw = s.evaluate(w);
            cov += fz * fw.conj();
            pseudo += fz * fw;
            var_z += fz.norm_sqr();
        }
        cov /= m as f64;
        pseudo /= m as f64;
        var_z /= m as f64;
        let q = covariance(z, w, kappa).unwrap();
        let qzz = covariance(z, z, kappa).unwrap().re;
        let qww = covariance(w, w, kappa).unwrap().re;
        let tol = 5.0 * (qzz * qww).sqrt() / (m as f64).sqrt();
        assert!(
            (cov - q).norm() < tol,
            "cov gap {} vs {tol}",
            (cov - q).norm()
        );
        assert!(pseudo.norm() < tol, "pseudo-covariance {}", pseudo.norm());
        assert!((var_z - qzz).abs() < 0.05 * qzz, "variance at z");
    }

    #[test]
    fn derived_seeds_do_not_collide() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..2000u64 {
            for a in 0..3u32 {
                assert!(seen.insert(derive_sample_seed(99, i, a)));
            }
        }
    }
}
