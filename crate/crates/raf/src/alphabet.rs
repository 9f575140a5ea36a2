//! Coefficient alphabets for exhaustive enumeration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Finite coefficient alphabet: the ±1 letters or the quaternary set
/// `{1+i, 1-i, -1+i, -1-i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    PlusMinusOne,
    Quaternary,
}

impl Alphabet {
    pub fn size(&self) -> usize {
        match self {
            Alphabet::PlusMinusOne => 2,
            Alphabet::Quaternary => 4,
        }
    }

    /// Letters in digit order; digit `d` of a base-`size` index selects
    /// `atoms()[d]`.
    pub fn atoms(&self) -> &'static [Complex64] {
        const PM1: [Complex64; 2] = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        const QUAT: [Complex64; 4] = [
            Complex64::new(1.0, 1.0),
            Complex64::new(1.0, -1.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(-1.0, -1.0),
        ];
        match self {
            Alphabet::PlusMinusOne => &PM1,
            Alphabet::Quaternary => &QUAT,
        }
    }

    /// `max_{a ∈ A} |a|`.
    pub fn max_modulus(&self) -> f64 {
        match self {
            Alphabet::PlusMinusOne => 1.0,
            Alphabet::Quaternary => std::f64::consts::SQRT_2,
        }
    }

    /// Digit permutation for coefficient-wise negation (maps A to A).
    pub fn negate_digit(&self, d: usize) -> usize {
        match self {
            Alphabet::PlusMinusOne => 1 - d,
            Alphabet::Quaternary => 3 - d,
        }
    }

    /// Digit permutation for coefficient-wise conjugation (maps A to A).
    pub fn conjugate_digit(&self, d: usize) -> usize {
        match self {
            Alphabet::PlusMinusOne => d,
            Alphabet::Quaternary => d ^ 1,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Alphabet::PlusMinusOne => "pm1",
            Alphabet::Quaternary => "quaternary",
        }
    }
}
