//! Ground-truth propagation of the (generalized) cubic NLS equation by
//! symmetric split-step pseudospectral integration.
//!
//! The dimensionless form solved is `j ∂_z q = ∂_tt q + 2s|q|²q`, whose
//! discrete-frequency linear phase is `e^{+j ω₀²k² h}` under the crate's
//! `+jωt` transform convention. The physical form adds a power-loss exponent
//! `α`, a polynomial dispersion `β(ω)` (linear phase `e^{−jβ(ω)h}`) and
//! lumped gain at span ends. Both sub-steps are exact:
//!
//! * linear: per-mode phase rotation in the frequency domain;
//! * nonlinear + loss: `q ← q·e^{−αh/2}·e^{−j s γ |q|² h_eff}` with
//!   `h_eff = (1−e^{−αh})/α`, the exact solution of the joint
//!   loss/self-phase ODE over one step.
//!
//! Because both sub-steps preserve `Σ_k |q_k|²` exactly (up to loss), the L2
//! power is conserved to rounding in the lossless case; the Hamiltonian is
//! conserved to the splitting order `O(h²)`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::psd::Psd;
use crate::sampler::SpectrumSampler;
use crate::spectral::{Signal, Spectrum, TimeGrid};

/// Dispersion law of the propagation medium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DispersionSpec {
    /// Dimensionless integrable relation `ζ(k) = ω₀²k²` with linear phase
    /// `e^{+jζ(k)h}`.
    Quadratic,
    /// Taylor coefficients of the propagation constant:
    /// `β(ω) = Σ_i coeffs[i]·ωⁱ/i!` (rad per unit length, ω in rad per unit
    /// time), with linear phase `e^{−jβ(ω)h}`.
    Polynomial(Vec<f64>),
}

impl DispersionSpec {
    /// Linear phase advance per unit distance for mode `k`: the propagator
    /// multiplies by `e^{+j·phase_rate·h}`.
    pub fn phase_rate(&self, grid: &TimeGrid, k: i32) -> f64 {
        match self {
            DispersionSpec::Quadratic => {
                let w0 = grid.omega0();
                w0 * w0 * (k as f64) * (k as f64)
            }
            DispersionSpec::Polynomial(beta) => {
                let w = grid.omega(k);
                let mut fact = 1.0;
                let mut pow = 1.0;
                let mut b = 0.0;
                for (i, &c) in beta.iter().enumerate() {
                    if i > 0 {
                        fact *= i as f64;
                        pow *= w;
                    }
                    b += c * pow / fact;
                }
                -b
            }
        }
    }

    /// Phase mismatch `Ω` entering the integrated interaction kernel
    /// `−j∫ e^{−(F(l)+jΩl)} dl`: `Ω = θ_n + θ_k − θ_l − θ_m` in terms of the
    /// per-mode phase rates. For [`DispersionSpec::Quadratic`] this equals
    /// `−ω₀²(l²+m²−n²−k²)`; only its magnitude enters the PSD kernels.
    pub fn kernel_mismatch(&self, grid: &TimeGrid, l: i32, m: i32, n: i32, k: i32) -> f64 {
        self.phase_rate(grid, n) + self.phase_rate(grid, k)
            - self.phase_rate(grid, l)
            - self.phase_rate(grid, m)
    }
}

/// Loss, nonlinearity, dispersion and span structure of a link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkConfig {
    pub dispersion: DispersionSpec,
    /// Power loss exponent `α ≥ 0` (1/km, or dimensionless).
    pub alpha: f64,
    /// Nonlinear coefficient `γ` in `∂_z q ⊃ −j s γ |q|² q`. The
    /// dimensionless equation with nonlinearity parameter `ε` has `γ = 2ε`.
    pub nonlinear_coeff: f64,
    /// `s = ±1`, focusing (+1, the dimensionless default) or defocusing.
    pub sign: f64,
    /// Span length `ε_span` (same unit as `z`).
    pub span_length: f64,
    pub span_count: usize,
    /// Per-span power gain exponents; `None` means exact loss compensation
    /// `G_n = α·ε_span`.
    pub gains: Option<Vec<f64>>,
}

impl LinkConfig {
    /// Single lossless dimensionless span `j∂_z q = ∂_tt q + 2ε|q|²q` of
    /// unit length.
    pub fn dimensionless(epsilon: f64) -> Self {
        Self {
            dispersion: DispersionSpec::Quadratic,
            alpha: 0.0,
            nonlinear_coeff: 2.0 * epsilon,
            sign: 1.0,
            span_length: 1.0,
            span_count: 1,
            gains: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha < 0.0 || !self.alpha.is_finite() {
            return Err(Error::Link(format!("loss exponent must be >= 0, got {}", self.alpha)));
        }
        if self.span_count < 1 {
            return Err(Error::Link("span count must be >= 1".into()));
        }
        if !(self.span_length > 0.0) {
            return Err(Error::Link(format!("span length must be positive, got {}", self.span_length)));
        }
        if self.sign != 1.0 && self.sign != -1.0 {
            return Err(Error::Link(format!("nonlinearity sign must be ±1, got {}", self.sign)));
        }
        if let Some(g) = &self.gains {
            if g.len() != self.span_count {
                return Err(Error::Link(format!(
                    "{} gains supplied for {} spans",
                    g.len(),
                    self.span_count
                )));
            }
        }
        Ok(())
    }

    /// The model coefficient `ε = γ/2` (so the PSD prefactor `8ε² = 2γ²`).
    pub fn epsilon(&self) -> f64 {
        self.nonlinear_coeff / 2.0
    }

    pub fn total_length(&self) -> f64 {
        self.span_length * self.span_count as f64
    }

    /// Power gain exponent applied after span `i` (0-based).
    pub fn gain(&self, i: usize) -> f64 {
        match &self.gains {
            Some(g) => g[i],
            None => self.alpha * self.span_length,
        }
    }

    /// `N_sp·(1−e^{−αε})/α`, the loss-weighted interaction length of the
    /// whole link (reduces to the total length when `α = 0`).
    pub fn effective_length(&self) -> f64 {
        self.span_count as f64 * span_effective_length(self.alpha, self.span_length)
    }
}

pub(crate) fn span_effective_length(alpha: f64, length: f64) -> f64 {
    if alpha * length < 1e-12 {
        length
    } else {
        (1.0 - (-alpha * length).exp()) / alpha
    }
}

/// Step control for the split-step integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepConfig {
    /// Requested spatial step; `f64::INFINITY` leaves the choice entirely to
    /// the phase bound.
    pub h: f64,
    /// Bound on the nonlinear phase per step, `γ·max|q|²·h ≤ max_nonlinear_phase`.
    pub max_nonlinear_phase: f64,
    /// Subdivide automatically when the bound is violated; otherwise error.
    pub auto_refine: bool,
}

impl Default for StepConfig {
    fn default() -> Self {
        Self { h: f64::INFINITY, max_nonlinear_phase: 0.05, auto_refine: true }
    }
}

impl StepConfig {
    /// Fixed step `h`; errors out if the phase bound would be violated.
    pub fn fixed(h: f64) -> Self {
        Self { h, max_nonlinear_phase: 0.05, auto_refine: false }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) {
            return Err(Error::Link(format!("step must be positive, got {}", self.h)));
        }
        if !(self.max_nonlinear_phase > 0.0) {
            return Err(Error::Link("nonlinear phase bound must be positive".into()));
        }
        Ok(())
    }
}

/// Frequency-domain split-step state; reused across steps and realizations.
struct Stepper {
    grid: TimeGrid,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    /// phase rate θ(k) per FFT bin
    rates: Vec<f64>,
    /// cached half-step linear factors for the current h
    cached_h: f64,
    half_a: Vec<Complex64>,
    half_b: Vec<Complex64>,
    time: Vec<Complex64>,
}

impl Stepper {
    fn new(grid: TimeGrid, link: &LinkConfig) -> Self {
        let n = grid.sample_count();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let rates = (0..n)
            .map(|j| {
                let k = if j < n / 2 { j as i32 } else { j as i32 - n as i32 };
                link.dispersion.phase_rate(&grid, k)
            })
            .collect();
        Self {
            grid,
            fwd,
            inv,
            rates,
            cached_h: f64::NAN,
            half_a: Vec::new(),
            half_b: Vec::new(),
            time: vec![Complex64::ZERO; n],
        }
    }

    fn refresh_tables(&mut self, h: f64) {
        if h == self.cached_h {
            return;
        }
        let n = self.grid.sample_count() as f64;
        self.half_a = self.rates.iter().map(|&r| Complex64::from_polar(1.0, r * h / 2.0)).collect();
        // second half also undoes the unnormalized inverse FFT
        self.half_b =
            self.rates.iter().map(|&r| Complex64::from_polar(1.0 / n, r * h / 2.0)).collect();
        self.cached_h = h;
    }

    /// One symmetric Strang step of size `h` on frequency-domain
    /// coefficients in FFT bin order.
    fn step(&mut self, coeffs: &mut [Complex64], h: f64, link: &LinkConfig) {
        self.refresh_tables(h);
        for (c, f) in coeffs.iter_mut().zip(&self.half_a) {
            *c *= f;
        }
        self.time.copy_from_slice(coeffs);
        self.fwd.process(&mut self.time);
        let decay = (-link.alpha * h / 2.0).exp();
        let h_eff = span_effective_length(link.alpha, h);
        let rot = -link.sign * link.nonlinear_coeff * h_eff;
        for v in self.time.iter_mut() {
            let phase = rot * v.norm_sqr();
            *v *= Complex64::from_polar(decay, phase);
        }
        coeffs.copy_from_slice(&self.time);
        self.inv.process(coeffs);
        for (c, f) in coeffs.iter_mut().zip(&self.half_b) {
            *c *= f;
        }
    }
}

fn max_abs2(coeffs_time: &[Complex64]) -> f64 {
    coeffs_time.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max)
}

/// Advances FFT-ordered coefficients by distance `z` through the continuous
/// medium of `link` (no lumped gain).
fn advance(
    stepper: &mut Stepper,
    coeffs: &mut [Complex64],
    z: f64,
    link: &LinkConfig,
    step: &StepConfig,
) -> Result<()> {
    if z == 0.0 {
        return Ok(());
    }
    let gamma = link.nonlinear_coeff.abs();
    let mut done = 0.0;
    // time-domain peak power bounds the nonlinear phase; rechecked each step
    // because focusing dynamics can raise the peak mid-run
    let mut scratch = vec![Complex64::ZERO; coeffs.len()];
    while done < z * (1.0 - 1e-15) {
        let remaining = z - done;
        scratch.copy_from_slice(coeffs);
        stepper.fwd.process(&mut scratch);
        let peak = max_abs2(&scratch);
        let mut h = step.h.min(remaining);
        let phase = gamma * peak * h;
        if phase > step.max_nonlinear_phase {
            if !step.auto_refine {
                return Err(Error::StepTooCoarse { phase, bound: step.max_nonlinear_phase });
            }
            let allowed = step.max_nonlinear_phase / (gamma * peak);
            let parts = (remaining / allowed).ceil().max(1.0);
            h = remaining / parts;
        }
        stepper.step(coeffs, h, link);
        done += h;
    }
    Ok(())
}

fn to_fft_order(spectrum: &Spectrum) -> Vec<Complex64> {
    let n = spectrum.grid().sample_count();
    let mut out = vec![Complex64::ZERO; n];
    for (i, c) in spectrum.coeffs().iter().enumerate() {
        out[(i + n - n / 2) % n] = *c;
    }
    out
}

fn from_fft_order(grid: TimeGrid, coeffs: &[Complex64]) -> Spectrum {
    let n = grid.sample_count();
    let mut out = vec![Complex64::ZERO; n];
    for (j, c) in coeffs.iter().enumerate() {
        out[(j + n / 2) % n] = *c;
    }
    Spectrum::new(grid, out).expect("length preserved")
}

/// Propagates a signal a distance `z` through the continuous medium of
/// `link` (loss and dispersion, no lumped amplification).
pub fn propagate(signal: &Signal, link: &LinkConfig, z: f64, step: &StepConfig) -> Result<Signal> {
    link.validate()?;
    step.validate()?;
    signal.check_finite()?;
    if z < 0.0 {
        return Err(Error::Link(format!("propagation distance must be >= 0, got {z}")));
    }
    let spectrum = signal.to_spectrum();
    let mut coeffs = to_fft_order(&spectrum);
    let mut stepper = Stepper::new(signal.grid(), link);
    advance(&mut stepper, &mut coeffs, z, link, step)?;
    Ok(from_fft_order(signal.grid(), &coeffs).to_signal())
}

/// Propagates through the full multi-span link: each span is `span_length`
/// of lossy medium followed by a lumped amplifier with power gain exponent
/// [`LinkConfig::gain`].
pub fn propagate_spans(signal: &Signal, link: &LinkConfig, step: &StepConfig) -> Result<Signal> {
    link.validate()?;
    step.validate()?;
    signal.check_finite()?;
    let spectrum = signal.to_spectrum();
    let mut coeffs = to_fft_order(&spectrum);
    let mut stepper = Stepper::new(signal.grid(), link);
    for span in 0..link.span_count {
        advance(&mut stepper, &mut coeffs, link.span_length, link, step)?;
        let amp = (link.gain(span) / 2.0).exp();
        for c in coeffs.iter_mut() {
            *c *= amp;
        }
    }
    Ok(from_fft_order(signal.grid(), &coeffs).to_signal())
}

/// Per-mode magnitude history along the link.
#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryTable {
    pub z: Vec<f64>,
    pub modes: Vec<i32>,
    /// `magnitudes[i][j] = |q_{modes[j]}(z[i])|`
    pub magnitudes: Vec<Vec<f64>>,
}

/// Records `|q_k(z)|` for the requested modes at each sample distance
/// (continuous medium, as [`propagate`]).
pub fn mode_trajectory(
    signal: &Signal,
    link: &LinkConfig,
    z_samples: &[f64],
    modes: &[i32],
    step: &StepConfig,
) -> Result<TrajectoryTable> {
    link.validate()?;
    step.validate()?;
    signal.check_finite()?;
    if z_samples.windows(2).any(|w| w[1] <= w[0]) || z_samples.first().is_some_and(|&z| z < 0.0) {
        return Err(Error::Link("z samples must be strictly increasing and nonnegative".into()));
    }
    for &k in modes {
        if !signal.grid().contains_mode(k as i64) {
            return Err(Error::OutOfBand { k: k as i64, bound: signal.grid().max_mode() as i64 });
        }
    }
    let grid = signal.grid();
    let mut coeffs = to_fft_order(&signal.to_spectrum());
    let mut stepper = Stepper::new(grid, link);
    let mut magnitudes = Vec::with_capacity(z_samples.len());
    let mut at = 0.0;
    for &zs in z_samples {
        advance(&mut stepper, &mut coeffs, zs - at, link, step)?;
        at = zs;
        let spec = from_fft_order(grid, &coeffs);
        magnitudes.push(modes.iter().map(|&k| spec.coeff(k).norm()).collect());
    }
    Ok(TrajectoryTable { z: z_samples.to_vec(), modes: modes.to_vec(), magnitudes })
}

/// Monte-Carlo PSD estimate with per-mode standard errors.
#[derive(Debug, Clone)]
pub struct McEstimate {
    pub psd: Psd,
    pub stderr: Vec<f64>,
    pub realizations: usize,
}

const MC_CHUNK: usize = 32;

/// Estimates the per-mode output PSD `E|q_k(z)|²` over `realizations` draws
/// from `sampler`, propagating each through the continuous medium to `z`.
///
/// Realization `i` uses an RNG stream derived from `(seed, i)`, and partial
/// sums are reduced in a fixed chunk order, so the result is bit-identical
/// for any worker-thread count.
pub fn estimate_psd_mc(
    sampler: &(dyn SpectrumSampler + Sync),
    link: &LinkConfig,
    z: f64,
    realizations: usize,
    seed: u64,
    step: &StepConfig,
) -> Result<McEstimate> {
    if realizations < 2 {
        return Err(Error::Link("need at least 2 realizations".into()));
    }
    mc_accumulate(sampler, link, realizations, seed, |stepper, coeffs| {
        advance(stepper, coeffs, z, link, step)
    })
}

/// As [`estimate_psd_mc`], but through the full multi-span link with lumped
/// amplification.
pub fn estimate_psd_mc_spans(
    sampler: &(dyn SpectrumSampler + Sync),
    link: &LinkConfig,
    realizations: usize,
    seed: u64,
    step: &StepConfig,
) -> Result<McEstimate> {
    if realizations < 2 {
        return Err(Error::Link("need at least 2 realizations".into()));
    }
    mc_accumulate(sampler, link, realizations, seed, |stepper, coeffs| {
        for span in 0..link.span_count {
            advance(stepper, coeffs, link.span_length, link, step)?;
            let amp = (link.gain(span) / 2.0).exp();
            for c in coeffs.iter_mut() {
                *c *= amp;
            }
        }
        Ok(())
    })
}

fn mc_accumulate(
    sampler: &(dyn SpectrumSampler + Sync),
    link: &LinkConfig,
    realizations: usize,
    seed: u64,
    run: impl Fn(&mut Stepper, &mut [Complex64]) -> Result<()> + Sync,
) -> Result<McEstimate> {
    link.validate()?;
    let grid = sampler.grid();
    let n = grid.sample_count();

    let chunk_count = realizations.div_ceil(MC_CHUNK);
    let chunks: Vec<Result<(Vec<f64>, Vec<f64>)>> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * MC_CHUNK;
            let hi = (lo + MC_CHUNK).min(realizations);
            let mut sum = vec![0.0; n];
            let mut sumsq = vec![0.0; n];
            let mut stepper = Stepper::new(grid, link);
            for index in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index as u64);
                let spectrum = sampler.sample(&mut rng);
                let mut coeffs = to_fft_order(&spectrum);
                run(&mut stepper, &mut coeffs).map_err(|e| Error::Realization {
                    index,
                    source: Box::new(e),
                })?;
                let out = from_fft_order(grid, &coeffs);
                for (i, c) in out.coeffs().iter().enumerate() {
                    let p = c.norm_sqr();
                    sum[i] += p;
                    sumsq[i] += p * p;
                }
            }
            Ok((sum, sumsq))
        })
        .collect();

    let mut sum = vec![0.0; n];
    let mut sumsq = vec![0.0; n];
    for chunk in chunks {
        let (s, s2) = chunk?;
        for i in 0..n {
            sum[i] += s[i];
            sumsq[i] += s2[i];
        }
    }
    let r = realizations as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / r).collect();
    let stderr: Vec<f64> = mean
        .iter()
        .zip(&sumsq)
        .map(|(&m, &s2)| {
            let var = ((s2 - r * m * m) / (r - 1.0)).max(0.0);
            (var / r).sqrt()
        })
        .collect();
    Ok(McEstimate { psd: Psd::new(grid, mean)?, stderr, realizations })
}
