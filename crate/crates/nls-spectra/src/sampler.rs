//! Random input ensembles for the Monte-Carlo estimators.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::psd::Psd;
use crate::spectral::{Spectrum, TimeGrid};

/// A reproducible source of random input spectra.
///
/// Implementations must be pure given the RNG: all randomness flows through
/// the supplied stream so that `(seed, realization index)` fully determines
/// the draw.
pub trait SpectrumSampler: Send + Sync {
    fn grid(&self) -> TimeGrid;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Spectrum;
}

/// Zero-mean circular Gaussian process with independent modes,
/// `E|q_k(0)|² = S⁰_k`.
#[derive(Debug, Clone)]
pub struct GaussianProcess {
    s0: Psd,
}

impl GaussianProcess {
    pub fn new(s0: Psd) -> Self {
        Self { s0 }
    }

    pub fn s0(&self) -> &Psd {
        &self.s0
    }
}

impl SpectrumSampler for GaussianProcess {
    fn grid(&self) -> TimeGrid {
        self.s0.grid()
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Spectrum {
        let coeffs = self
            .s0
            .values()
            .iter()
            .map(|&s| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im) * (s / 2.0).sqrt()
            })
            .collect();
        Spectrum::new(self.grid(), coeffs).expect("PSD length matches grid")
    }
}

/// Fixed per-mode magnitudes with independent uniform phases; strongly
/// stationary regardless of the magnitude profile.
#[derive(Debug, Clone)]
pub struct UniformPhase {
    grid: TimeGrid,
    magnitudes: Vec<f64>,
}

impl UniformPhase {
    pub fn new(grid: TimeGrid, magnitudes: Vec<f64>) -> crate::Result<Self> {
        if magnitudes.len() != grid.sample_count() {
            return Err(crate::Error::LengthMismatch {
                got: magnitudes.len(),
                expected: grid.sample_count(),
            });
        }
        Ok(Self { grid, magnitudes })
    }

    pub fn from_psd(s0: &Psd) -> Self {
        Self {
            grid: s0.grid(),
            magnitudes: s0.values().iter().map(|&s| s.sqrt()).collect(),
        }
    }
}

impl SpectrumSampler for UniformPhase {
    fn grid(&self) -> TimeGrid {
        self.grid
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Spectrum {
        let coeffs = self
            .magnitudes
            .iter()
            .map(|&m| {
                let phase: f64 = rng.random::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(m, phase)
            })
            .collect();
        Spectrum::new(self.grid, coeffs).expect("length checked at construction")
    }
}
