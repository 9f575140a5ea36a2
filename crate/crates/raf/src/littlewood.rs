//! Exhaustive root sets of sign and quaternary polynomials.
//!
//! `Z_n` collects the roots of all `2^{n+1}` polynomials of degree `n`
//! with coefficients in {+1, -1}; `W_n` the roots over the quaternary
//! alphabet {1+i, 1-i, -1+i, -1-i}. The leading coefficient is never
//! zero, so every polynomial contributes exactly `n` roots with
//! multiplicity and the atlas holds `n·|A|^{n+1}` roots.
//!
//! Coefficient sequences are enumerated as base-`|A|` integers,
//! little-endian in the coefficient index, which gives deterministic
//! chunking for parallel workers; root lists are globally sorted before
//! output.

use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::raster::{RasterGrid, Rect};
use crate::zerofinder::{aberth_roots, CoeffPoly, ZeroFinderError};

#[derive(Debug, Error)]
pub enum LittlewoodError {
    #[error("enumeration would produce {required} roots, over the budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error(transparent)]
    ZeroFinder(#[from] ZeroFinderError),
}

/// Default budget: covers `Z_13` (212 992 roots) and `W_8` (2 097 152).
pub const DEFAULT_ROOT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    /// Enumerate one representative per {negation, conjugation} orbit and
    /// reconstitute the rest by exact root transforms.
    pub quotient: bool,
    pub budget: u128,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            quotient: false,
            budget: DEFAULT_ROOT_BUDGET,
        }
    }
}

/// The full root multiset of one degree/alphabet family.
#[derive(Debug, Clone)]
pub struct RootAtlas {
    pub n: usize,
    pub alphabet: Alphabet,
    /// `n · |A|^{n+1}` roots with multiplicity, sorted by (Re, Im).
    pub roots: Vec<Complex64>,
    pub raster: Option<RasterGrid>,
}

fn digits_of(mut index: u64, size: u64, n_digits: usize) -> Vec<usize> {
    let mut digits = Vec::with_capacity(n_digits);
    for _ in 0..n_digits {
        digits.push((index % size) as usize);
        index /= size;
    }
    digits
}

fn index_of(digits: &[usize], size: u64) -> u64 {
    let mut index = 0u64;
    for &d in digits.iter().rev() {
        index = index * size + d as u64;
    }
    index
}

fn poly_of_index(index: u64, alphabet: Alphabet, n: usize) -> CoeffPoly {
    let atoms = alphabet.atoms();
    let digits = digits_of(index, alphabet.size() as u64, n + 1);
    CoeffPoly::new(digits.into_iter().map(|d| atoms[d]).collect())
}

/// Orbit of a coefficient index under coefficient-wise negation and
/// conjugation, with the root transform from the representative.
#[derive(Debug, Clone, Copy, PartialEq)]
enum RootTransform {
    Identity,
    Conjugate,
}

fn orbit_of(index: u64, alphabet: Alphabet, n: usize) -> Vec<(u64, RootTransform)> {
    let size = alphabet.size() as u64;
    let digits = digits_of(index, size, n + 1);
    let apply = |f: &dyn Fn(usize) -> usize| {
        index_of(&digits.iter().map(|&d| f(d)).collect::<Vec<_>>(), size)
    };
    let neg = apply(&|d| alphabet.negate_digit(d));
    let conj = apply(&|d| alphabet.conjugate_digit(d));
    let neg_conj = apply(&|d| alphabet.negate_digit(alphabet.conjugate_digit(d)));
    let mut orbit = vec![
        (index, RootTransform::Identity),
        (neg, RootTransform::Identity),
        (conj, RootTransform::Conjugate),
        (neg_conj, RootTransform::Conjugate),
    ];
    orbit.sort_by_key(|&(i, _)| i);
    orbit.dedup_by_key(|&mut (i, _)| i);
    orbit
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im)));
}

/// Enumerates all roots of the degree-`n` family with default options.
pub fn enumerate_roots(n: usize, alphabet: Alphabet) -> Result<RootAtlas, LittlewoodError> {
    enumerate_roots_with(n, alphabet, EnumerationOptions::default())
}

pub fn enumerate_roots_with(
    n: usize,
    alphabet: Alphabet,
    options: EnumerationOptions,
) -> Result<RootAtlas, LittlewoodError> {
    let size = alphabet.size() as u128;
    let count = size.pow(n as u32 + 1);
    let required = count * n as u128;
    if required > options.budget {
        return Err(LittlewoodError::BudgetExceeded {
            required,
            budget: options.budget,
        });
    }
    let m_count = count as u64;
    let roots = if options.quotient {
        enumerate_quotient(n, alphabet, m_count)?
    } else {
        let lists: Vec<Vec<Complex64>> = (0..m_count)
            .into_par_iter()
            .map(|m| aberth_roots(&poly_of_index(m, alphabet, n)).map(|zs| zs.flat_roots()))
            .collect::<Result<_, _>>()?;
        lists.into_iter().flatten().collect()
    };
    let mut roots = roots;
    sort_roots(&mut roots);
    debug_assert_eq!(roots.len() as u128, required);
    Ok(RootAtlas {
        n,
        alphabet,
        roots,
        raster: None,
    })
}

fn enumerate_quotient(
    n: usize,
    alphabet: Alphabet,
    m_count: u64,
) -> Result<Vec<Complex64>, LittlewoodError> {
    // Pass 1: solve one representative (the minimal index) per orbit.
    let reps: Vec<(u64, Vec<Complex64>)> = (0..m_count)
        .into_par_iter()
        .filter(|&m| orbit_of(m, alphabet, n)[0].0 == m)
        .map(|m| aberth_roots(&poly_of_index(m, alphabet, n)).map(|zs| (m, zs.flat_roots())))
        .collect::<Result<_, _>>()?;
    let table: HashMap<u64, &Vec<Complex64>> = reps.iter().map(|(m, r)| (*m, r)).collect();
    // Pass 2: reconstitute every index by the exact root transform.
    let lists: Vec<Vec<Complex64>> = (0..m_count)
        .into_par_iter()
        .map(|m| {
            let orbit = orbit_of(m, alphabet, n);
            let (rep, _) = orbit[0];
            let transform = orbit
                .iter()
                .find(|&&(i, _)| i == m)
                .map(|&(_, t)| t)
                .unwrap();
            let base = table[&rep];
            match transform {
                RootTransform::Identity => base.clone(),
                RootTransform::Conjugate => base.iter().map(|z| z.conj()).collect(),
            }
        })
        .collect();
    Ok(lists.into_iter().flatten().collect())
}

impl RootAtlas {
    pub fn expected_count(&self) -> usize {
        self.n * self.alphabet.size().pow(self.n as u32 + 1)
    }

    /// Punctured-neighborhood gap at `center`: the smallest distance from
    /// `center` to a root farther than `exclusion_tol` away. Returns
    /// `+∞` when every root is excluded.
    pub fn hole_radius(&self, center: Complex64, exclusion_tol: f64) -> f64 {
        self.roots
            .iter()
            .map(|&z| (z - center).norm())
            .filter(|&d| d > exclusion_tol)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn verify_conjugation_closure(&self, tol: f64) -> bool {
        let conj: Vec<Complex64> = self.roots.iter().map(|z| z.conj()).collect();
        multisets_match(&self.roots, &conj, tol)
    }

    pub fn verify_negation_closure(&self, tol: f64) -> bool {
        let neg: Vec<Complex64> = self.roots.iter().map(|z| -z).collect();
        multisets_match(&self.roots, &neg, tol)
    }

    /// Inversion closure `z ↦ 1/z` (coefficient reversal stays in the
    /// family). Roots are never zero since the alphabet excludes zero.
    pub fn verify_inversion_closure(&self, tol: f64) -> bool {
        let inv: Vec<Complex64> = self.roots.iter().map(|z| 1.0 / z).collect();
        multisets_match(&self.roots, &inv, tol)
    }

    /// Multiplication by `i` (quaternary only): `X_k ↦ i^k X_k` keeps
    /// coefficients in the alphabet and rotates the root set.
    pub fn verify_rotation_closure(&self, tol: f64) -> Option<bool> {
        if self.alphabet != Alphabet::Quaternary {
            return None;
        }
        let rotated: Vec<Complex64> = self
            .roots
            .iter()
            .map(|z| Complex64::new(0.0, 1.0) * z)
            .collect();
        Some(multisets_match(&self.roots, &rotated, tol))
    }
}

/// Greedy multiset matching at tolerance `tol` over a spatial hash grid.
///
/// Dedup-by-snapping is confined to this check (the atlas itself keeps
/// every root with multiplicity).
pub fn multisets_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let key = |z: Complex64| ((z.re / tol).floor() as i64, (z.im / tol).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<Complex64>> = HashMap::new();
    for &z in a {
        grid.entry(key(z)).or_default().push(z);
    }
    for &z in b {
        let (kx, ky) = key(z);
        let mut matched = false;
        'search: for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = grid.get_mut(&(kx + dx, ky + dy)) {
                    if let Some(pos) = bucket.iter().position(|&w| (w - z).norm() <= tol) {
                        bucket.swap_remove(pos);
                        matched = true;
                        break 'search;
                    }
                }
            }
        }
        if !matched {
            return false;
        }
    }
    true
}

/// Accumulates roots into a hit-count grid over `window`.
pub fn raster_accumulate(roots: &[Complex64], window: Rect, resolution: usize) -> RasterGrid {
    let mut grid = RasterGrid::new(window, resolution, resolution);
    grid.accumulate(roots);
    grid
}
