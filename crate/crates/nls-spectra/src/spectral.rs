//! Periodic time grids, envelope containers and the Fourier-series transform
//! pair, plus global scalar functionals (power, Hamiltonian split).
//!
//! Conventions used throughout the crate:
//!
//! * The forward kernel is `+jωt`: on a torus of period `T`,
//!   `q_k = (1/T) ∫ q(t) e^{+j k ω₀ t} dt` with `ω₀ = 2π/T`, and the inverse
//!   is `q(t) = Σ_k q_k e^{−j k ω₀ t}`. This is the opposite of the common
//!   engineering sign and flips the frequency axis; every dispersion phase
//!   in the crate is derived from this one choice and pinned by the
//!   single-tone test below.
//! * Coefficients carry amplitude units so that `Σ_k |q_k|²` equals the mean
//!   power `(1/T) ∫ |q|² dt` (Parseval with no stray factors).
//! * Mode indices run `k = −N/2 … N/2−1`; coefficient storage is in that
//!   (centered) order.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A periodic time grid: period `T`, `N` samples, fundamental `ω₀ = 2π/T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    period: f64,
    sample_count: usize,
}

impl TimeGrid {
    /// `sample_count` must be a power of two, at least 4; `period > 0`.
    pub fn new(period: f64, sample_count: usize) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::Grid(format!("period must be positive, got {period}")));
        }
        if sample_count < 4 || !sample_count.is_power_of_two() {
            return Err(Error::Grid(format!(
                "sample count must be a power of two >= 4, got {sample_count}"
            )));
        }
        Ok(Self { period, sample_count })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    /// Sample spacing `dt = T/N`; `dt·N = T` holds exactly.
    pub fn dt(&self) -> f64 {
        self.period / self.sample_count as f64
    }

    /// Fundamental angular frequency `ω₀ = 2π/T`.
    pub fn omega0(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.period
    }

    /// Angular frequency of mode `k`.
    pub fn omega(&self, k: i32) -> f64 {
        self.omega0() * k as f64
    }

    /// Smallest valid mode index, `−N/2`.
    pub fn min_mode(&self) -> i32 {
        -((self.sample_count / 2) as i32)
    }

    /// Largest valid mode index, `N/2−1`.
    pub fn max_mode(&self) -> i32 {
        (self.sample_count / 2) as i32 - 1
    }

    /// Mode indices in storage order, `−N/2 … N/2−1`.
    pub fn modes(&self) -> impl Iterator<Item = i32> + '_ {
        self.min_mode()..=self.max_mode()
    }

    pub fn contains_mode(&self, k: i64) -> bool {
        k >= self.min_mode() as i64 && k <= self.max_mode() as i64
    }

    /// Sample times `t_n = n·dt`, `n = 0 … N−1`.
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let dt = self.dt();
        (0..self.sample_count).map(move |n| n as f64 * dt)
    }
}

/// Time-domain envelope samples on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: TimeGrid,
    samples: Vec<Complex64>,
}

impl Signal {
    pub fn new(grid: TimeGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.sample_count() {
            return Err(Error::LengthMismatch {
                got: samples.len(),
                expected: grid.sample_count(),
            });
        }
        Ok(Self { grid, samples })
    }

    /// Sample `f(t)` at the grid times.
    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.times().map(f).collect();
        Self { grid, samples }
    }

    /// A pulse centered in the window: samples `f(t − T/2)`.
    pub fn from_pulse(grid: TimeGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let half = grid.period() / 2.0;
        Self::from_fn(grid, |t| f(t - half))
    }

    pub fn zero(grid: TimeGrid) -> Self {
        Self { grid, samples: vec![Complex64::ZERO; grid.sample_count()] }
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Mean power `(1/T) ∫ |q|² dt` by the trapezoid-free periodic rule.
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    /// Index of the first non-finite sample, if any.
    pub fn check_finite(&self) -> Result<()> {
        match self.samples.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            Some(i) => Err(Error::NonFinite(i)),
            None => Ok(()),
        }
    }

    pub fn to_spectrum(&self) -> Spectrum {
        forward_transform(self)
    }
}

/// Fourier-series coefficients `q_k`, stored for `k = −N/2 … N/2−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: TimeGrid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: TimeGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.sample_count() {
            return Err(Error::LengthMismatch {
                got: coeffs.len(),
                expected: grid.sample_count(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    /// Build from a per-mode closure.
    pub fn from_modes(grid: TimeGrid, f: impl Fn(i32) -> Complex64) -> Self {
        let coeffs = grid.modes().map(f).collect();
        Self { grid, coeffs }
    }

    pub fn zero(grid: TimeGrid) -> Self {
        Self { grid, coeffs: vec![Complex64::ZERO; grid.sample_count()] }
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    /// Coefficients in centered order.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of mode `k` (zero outside the band).
    pub fn coeff(&self, k: i32) -> Complex64 {
        if !self.grid.contains_mode(k as i64) {
            return Complex64::ZERO;
        }
        self.coeffs[(k - self.grid.min_mode()) as usize]
    }

    /// `(mode index, coefficient)` pairs in storage order.
    pub fn iter_modes(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.grid.modes().zip(self.coeffs.iter().copied())
    }

    pub fn to_signal(&self) -> Signal {
        inverse_transform(self)
    }
}

/// Centered storage index `i` for FFT bin `j`: bin `j` holds mode
/// `k = j` for `j < N/2` and `k = j − N` otherwise.
fn fft_bin_to_centered(j: usize, n: usize) -> usize {
    (j + n / 2) % n
}

/// `q_k = (1/T) ∫ q(t) e^{+j k ω₀ t} dt`, evaluated with an FFT.
///
/// With the `+jωt` kernel this is the *inverse* DFT of the samples scaled by
/// `1/N`; a pure tone `e^{−j ω₀ t}` therefore lands on mode `+1`.
pub fn forward_transform(signal: &Signal) -> Spectrum {
    let n = signal.grid.sample_count();
    let mut buf = signal.samples.clone();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let mut coeffs = vec![Complex64::ZERO; n];
    for (j, v) in buf.into_iter().enumerate() {
        coeffs[fft_bin_to_centered(j, n)] = v * scale;
    }
    Spectrum { grid: signal.grid, coeffs }
}

/// `q(t_n) = Σ_k q_k e^{−j k ω₀ t_n}`; exact inverse of [`forward_transform`].
pub fn inverse_transform(spectrum: &Spectrum) -> Signal {
    let n = spectrum.grid.sample_count();
    let mut buf = vec![Complex64::ZERO; n];
    for (i, v) in spectrum.coeffs.iter().enumerate() {
        // invert the centering permutation
        let j = (i + n - n / 2) % n;
        buf[j] = *v;
    }
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    Signal { grid: spectrum.grid, samples: buf }
}

/// Mean power `P = Σ_k |q_k|²` (equals `(1/T)∫|q|²dt` by Parseval).
pub fn power(spectrum: &Spectrum) -> f64 {
    spectrum.coeffs.iter().map(|c| c.norm_sqr()).sum()
}

/// The two Hamiltonian contributions and their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianSplit {
    /// `∫ |∂_t q|² dt`, evaluated spectrally.
    pub linear: f64,
    /// `∫ |q|⁴ dt`.
    pub nonlinear: f64,
    /// `a = nonlinear / linear`, the nonlinearity-strength parameter.
    pub ratio_a: f64,
}

/// Splits the Hamiltonian `∫(|∂_t q|² − |q|⁴) dt` of a signal into its linear
/// and nonlinear parts and reports the ratio `a = nonlinear/linear`.
///
/// Errors with [`Error::ZeroSignal`] when the linear part vanishes (the ratio
/// is undefined for the zero signal).
pub fn hamiltonian(signal: &Signal) -> Result<HamiltonianSplit> {
    let grid = signal.grid();
    let spectrum = forward_transform(signal);
    let linear: f64 = spectrum
        .iter_modes()
        .map(|(k, c)| {
            let w = grid.omega(k);
            w * w * c.norm_sqr()
        })
        .sum::<f64>()
        * grid.period();
    let nonlinear: f64 =
        signal.samples.iter().map(|c| c.norm_sqr().powi(2)).sum::<f64>() * grid.dt();
    if linear == 0.0 {
        return Err(Error::ZeroSignal);
    }
    Ok(HamiltonianSplit { linear, nonlinear, ratio_a: nonlinear / linear })
}

/// Signed value of the NLS invariant `H = ∫(|∂_t q|² − |q|⁴) dt`.
pub fn hamiltonian_value(signal: &Signal) -> f64 {
    let grid = signal.grid();
    let spectrum = forward_transform(signal);
    let linear: f64 = spectrum
        .iter_modes()
        .map(|(k, c)| {
            let w = grid.omega(k);
            w * w * c.norm_sqr()
        })
        .sum::<f64>()
        * grid.period();
    let nonlinear: f64 =
        signal.samples.iter().map(|c| c.norm_sqr().powi(2)).sum::<f64>() * grid.dt();
    linear - nonlinear
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(t: f64, n: usize) -> TimeGrid {
        TimeGrid::new(t, n).unwrap()
    }

    fn random_signal(g: TimeGrid, seed: u64) -> Signal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = (0..g.sample_count())
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        Signal::new(g, samples).unwrap()
    }

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(TimeGrid::new(1.0, 3).is_err());
        assert!(TimeGrid::new(1.0, 6).is_err());
        assert!(TimeGrid::new(0.0, 8).is_err());
        assert!(TimeGrid::new(1.0, 8).is_ok());
    }

    #[test]
    fn constant_signal_is_dc_only() {
        let g = grid(4.0, 16);
        let c = Complex64::new(0.7, -0.3);
        let s = Signal::from_fn(g, |_| c);
        let spec = forward_transform(&s);
        assert_relative_eq!(spec.coeff(0).re, c.re, max_relative = 1e-14);
        assert_relative_eq!(spec.coeff(0).im, c.im, max_relative = 1e-14);
        for (k, v) in spec.iter_modes() {
            if k != 0 {
                assert!(v.norm() < 1e-14, "mode {k} leaked: {v}");
            }
        }
    }

    #[test]
    fn single_tone_lands_on_plus_one() {
        // q(t) = e^{−jω₀t} maps to q_{+1} = 1 under the +jωt forward kernel.
        let g = grid(8.0, 32);
        let w0 = g.omega0();
        let s = Signal::from_fn(g, |t| Complex64::from_polar(1.0, -w0 * t));
        let spec = forward_transform(&s);
        assert!((spec.coeff(1) - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!(spec.coeff(-1).norm() < 1e-13);
    }

    #[test]
    fn round_trip_identity() {
        let g = grid(5.0, 64);
        let s = random_signal(g, 1);
        let back = inverse_transform(&forward_transform(&s));
        let err: f64 = s
            .samples()
            .iter()
            .zip(back.samples())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let norm: f64 = s.samples().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        assert!(err / norm < 1e-12);
    }

    #[test]
    fn power_examples() {
        let g = grid(2.0, 8);
        assert_eq!(power(&Spectrum::zero(g)), 0.0);
        let single =
            Spectrum::from_modes(g, |k| if k == 0 { Complex64::new(2.0, 0.0) } else { Complex64::ZERO });
        assert_relative_eq!(power(&single), 4.0);
    }

    #[test]
    fn parseval_matches_time_quadrature() {
        let g = grid(3.0, 128);
        let s = random_signal(g, 2);
        let p_spec = power(&forward_transform(&s));
        let p_time = s.mean_power();
        assert_relative_eq!(p_spec, p_time, max_relative = 1e-10);
    }

    #[test]
    fn hamiltonian_ratio_matches_gaussian_closed_form() {
        // ∫|q|⁴ = A⁴√(π/2), ∫|∂_t q|² = A²√π/2 for q = A e^{−t²/2},
        // so a = √2 A²; at A=2 this is 5.657, the strongly nonlinear case.
        let g = grid(32.0, 1024);
        for a_amp in [0.5, 2.0] {
            let s = Signal::from_pulse(g, |t| Complex64::new(a_amp * (-t * t / 2.0).exp(), 0.0));
            let h = hamiltonian(&s).unwrap();
            assert_relative_eq!(h.ratio_a, std::f64::consts::SQRT_2 * a_amp * a_amp, max_relative = 1e-6);
        }
        let s = Signal::from_pulse(g, |t| Complex64::new(2.0 * (-t * t / 2.0).exp(), 0.0));
        let h = hamiltonian(&s).unwrap();
        assert!((h.ratio_a - 5.65).abs() < 0.01);
    }

    #[test]
    fn hamiltonian_zero_signal_is_distinct_error() {
        let g = grid(4.0, 16);
        match hamiltonian(&Signal::zero(g)) {
            Err(Error::ZeroSignal) => {}
            other => panic!("expected ZeroSignal, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn prop_round_trip(seed in 0u64..500) {
            let g = grid(4.0, 32);
            let s = random_signal(g, seed);
            let back = inverse_transform(&forward_transform(&s));
            let err: f64 = s.samples().iter().zip(back.samples())
                .map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            let norm: f64 = s.samples().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(err <= 1e-12 * norm);
        }

        #[test]
        fn prop_parseval(seed in 0u64..500) {
            let g = grid(7.0, 64);
            let s = random_signal(g, seed);
            let p_spec = power(&forward_transform(&s));
            prop_assert!((p_spec - s.mean_power()).abs() <= 1e-10 * s.mean_power());
        }

        #[test]
        fn prop_hamiltonian_ratio_quadratic_in_scale(seed in 0u64..200, lam in 0.1f64..3.0) {
            let g = grid(4.0, 32);
            let s = random_signal(g, seed);
            let mut scaled = s.clone();
            for v in scaled.samples_mut() { *v *= lam; }
            let a1 = hamiltonian(&s).unwrap().ratio_a;
            let a2 = hamiltonian(&scaled).unwrap().ratio_a;
            prop_assert!((a2 - lam * lam * a1).abs() <= 1e-12 * a2.abs().max(1.0));
        }
    }
}
