//! The GN and KZ analytic power spectral densities, their lossy multi-span
//! generalizations, the collision term, and the identities connecting the
//! two models.
//!
//! Both models share the structure
//!
//! ```text
//! S_k(z) = S⁰_k + 8ε² Σ_{(l,m,n) ∈ nr_k} |H_{lmnk}(z)|² · X⁰_{lmnk}
//! ```
//!
//! with `X = S_l S_m S_n` for the GN model and the collision term
//! `X = T_{lmnk} = S_lS_mS_n + S_lS_mS_k − S_lS_nS_k − S_mS_nS_k` for the
//! KZ model. The GN correction is nonnegative everywhere; the KZ correction
//! sums to zero over the band (the `(l,m) ↔ (n,k)` involution flips the sign
//! of `T` and preserves `|H|`), so the KZ model is energy-preserving.
//!
//! Multi-span links replace the kernel by
//! `|H(jα−Ω)(ε_span)|²·|G(Ω)|²` with the span array factor `G` and report
//! post-amplifier densities, prefactored by `2γ²`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{DispersionSpec, LinkConfig};
use crate::perturbation::{h_abs2, h_kernel, h_lossy_abs2, mismatch_from_product};
use crate::quartets::Quartet;
use crate::spectral::TimeGrid;

/// Nonnegative per-mode spectral density on a grid (centered mode order).
#[derive(Debug, Clone, PartialEq)]
pub struct Psd {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl Psd {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.sample_count() {
            return Err(Error::LengthMismatch { got: values.len(), expected: grid.sample_count() });
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Grid(format!("PSD values must be finite and >= 0, got {bad}")));
        }
        Ok(Self { grid, values })
    }

    pub fn from_modes(grid: TimeGrid, f: impl Fn(i32) -> f64) -> Result<Self> {
        Self::new(grid, grid.modes().map(f).collect())
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, k: i64) -> Result<f64> {
        if !self.grid.contains_mode(k) {
            return Err(Error::OutOfBand { k, bound: self.grid.max_mode() as i64 });
        }
        Ok(self.values[(k - self.grid.min_mode() as i64) as usize])
    }

    /// Total energy `Σ_k S_k`.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelKind {
    Gn,
    Kz,
}

/// Link parameters a model output was computed with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub z: f64,
    /// Nonlinearity coefficient `ε` entering the `8ε²` prefactor.
    pub coeff: f64,
    pub alpha: f64,
    pub span_length: f64,
    pub span_count: usize,
}

/// A model PSD split into the input density and the signed nonlinear
/// correction.
#[derive(Debug, Clone)]
pub struct PsdModelOutput {
    pub model: ModelKind,
    pub s0: Psd,
    pub correction: Vec<f64>,
    pub params: ModelParams,
}

impl PsdModelOutput {
    /// `S⁰_k + correction_k` per mode.
    pub fn total(&self) -> Vec<f64> {
        self.s0.values().iter().zip(&self.correction).map(|(s, c)| s + c).collect()
    }

    pub fn grid(&self) -> TimeGrid {
        self.s0.grid()
    }
}

/// Collision term `T_{lmnk} = S_lS_mS_n + S_lS_mS_k − S_lS_nS_k − S_mS_nS_k`.
pub fn collision_term(s: &Psd, q: &Quartet) -> Result<f64> {
    if !q.is_frequency_matched() {
        return Err(Error::FrequencyMismatch { l: q.l, m: q.m, n: q.n, k: q.k });
    }
    let (sl, sm, sn, sk) = (s.value(q.l)?, s.value(q.m)?, s.value(q.n)?, s.value(q.k)?);
    Ok(sl * sm * (sn + sk) - sn * sk * (sl + sm))
}

struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn new() -> Self {
        Self { sum: 0.0, carry: 0.0 }
    }

    #[inline]
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Shared `O(N²)`-per-mode driver: corrections `Σ w·S_lS_mS_n` (GN) and
/// `Σ w·T_{lmnk}` (KZ) for every output mode, `n = l+m−k` clipped to the
/// grid and `l ≠ k`, `m ≠ k` excluded.
fn model_sums(
    s0: &Psd,
    weight: &(dyn Fn(i64, i64, i64, i64) -> f64 + Sync),
    prefactor: f64,
) -> (Vec<f64>, Vec<f64>) {
    let grid = s0.grid();
    let (kmin, kmax) = (grid.min_mode() as i64, grid.max_mode() as i64);
    let s = s0.values();
    let idx = |k: i64| (k - kmin) as usize;

    let modes: Vec<i64> = (kmin..=kmax).collect();
    let pairs: Vec<(f64, f64)> = modes
        .par_iter()
        .map(|&k| {
            let sk = s[idx(k)];
            let mut gn = Kahan::new();
            let mut kz = Kahan::new();
            for l in kmin..=kmax {
                if l == k {
                    continue;
                }
                let sl = s[idx(l)];
                for m in kmin.max(kmin - l + k)..=kmax.min(kmax - l + k) {
                    if m == k {
                        continue;
                    }
                    let sm = s[idx(m)];
                    let sn = s[idx(l + m - k)];
                    let w = weight(k, l, m, l + m - k);
                    let sls_m = sl * sm;
                    gn.add(w * sls_m * sn);
                    kz.add(w * (sls_m * (sn + sk) - sn * sk * (sl + sm)));
                }
            }
            (prefactor * gn.sum, prefactor * kz.sum)
        })
        .collect();
    pairs.into_iter().unzip()
}

/// `|H|²` weights for the quadratic relation, tabulated on
/// `p = (k−l)(k−m)` (the mismatch is `−2ω₀²p` and the kernel magnitude is
/// even in it).
fn quadratic_weight_table(grid: &TimeGrid, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let n = grid.sample_count() as i64;
    let pmax = (n - 1) * (n - 1);
    (0..=pmax).map(|p| f(mismatch_from_product(grid, p).abs())).collect()
}

fn single_span_params(z: f64, coeff: f64) -> ModelParams {
    ModelParams { z, coeff, alpha: 0.0, span_length: z, span_count: 1 }
}

/// GN model PSD on the discrete grid:
/// `S_k = S⁰_k + 8ε² Σ_{nr_k} |H_{lmnk}(z)|² S⁰_l S⁰_m S⁰_n`.
pub fn gn_psd(s0: &Psd, z: f64, coeff: f64) -> PsdModelOutput {
    let table = quadratic_weight_table(&s0.grid(), |om| h_abs2(om, z));
    let (gn, _) = model_sums(
        s0,
        &|k, l, m, _| table[((k - l) * (k - m)).unsigned_abs() as usize],
        8.0 * coeff * coeff,
    );
    PsdModelOutput {
        model: ModelKind::Gn,
        s0: s0.clone(),
        correction: gn,
        params: single_span_params(z, coeff),
    }
}

/// KZ model PSD on the discrete grid:
/// `S_k = S⁰_k + 8ε² Σ_{nr_k} |H_{lmnk}(z)|² T⁰_{lmnk}`.
pub fn kz_psd(s0: &Psd, z: f64, coeff: f64) -> PsdModelOutput {
    let table = quadratic_weight_table(&s0.grid(), |om| h_abs2(om, z));
    let (_, kz) = model_sums(
        s0,
        &|k, l, m, _| table[((k - l) * (k - m)).unsigned_abs() as usize],
        8.0 * coeff * coeff,
    );
    PsdModelOutput {
        model: ModelKind::Kz,
        s0: s0.clone(),
        correction: kz,
        params: single_span_params(z, coeff),
    }
}

/// The per-mode difference `S^GN − S^KZ` in two algebraic routes.
#[derive(Debug, Clone)]
pub struct DeltaS {
    /// Exact per-triple difference
    /// `8ε² S⁰_k Σ |H|² (S_lS_n + S_mS_n − S_lS_m)`.
    pub definitional: Vec<f64>,
    /// The literature's simplified single-product form
    /// `8ε² S⁰_k Σ |H|² S_lS_n`, kept as a diagnostic; the reduction uses a
    /// sum symmetry that does not hold mode-by-mode on a finite band.
    pub simplified: Vec<f64>,
}

pub fn delta_s(s0: &Psd, z: f64, coeff: f64) -> DeltaS {
    let grid = s0.grid();
    let table = quadratic_weight_table(&grid, |om| h_abs2(om, z));
    let (kmin, kmax) = (grid.min_mode() as i64, grid.max_mode() as i64);
    let s = s0.values();
    let idx = |k: i64| (k - kmin) as usize;
    let prefactor = 8.0 * coeff * coeff;

    let modes: Vec<i64> = (kmin..=kmax).collect();
    let rows: Vec<(f64, f64)> = modes
        .par_iter()
        .map(|&k| {
            let sk = s[idx(k)];
            let mut full = Kahan::new();
            let mut simple = Kahan::new();
            for l in kmin..=kmax {
                if l == k {
                    continue;
                }
                let sl = s[idx(l)];
                for m in kmin.max(kmin - l + k)..=kmax.min(kmax - l + k) {
                    if m == k {
                        continue;
                    }
                    let sm = s[idx(m)];
                    let sn = s[idx(l + m - k)];
                    let w = table[((k - l) * (k - m)).unsigned_abs() as usize];
                    full.add(w * (sl * sn + sm * sn - sl * sm));
                    simple.add(w * sl * sn);
                }
            }
            (prefactor * sk * full.sum, prefactor * sk * simple.sum)
        })
        .collect();
    let (definitional, simplified) = rows.into_iter().unzip();
    DeltaS { definitional, simplified }
}

/// Adds the kinetic equation's first contribution — the initial 4-point
/// cumulant term `4 Re Σ_{nr_k} H_{lmnk}(z) S̃_{lmnk}(0)` — and returns the
/// per-mode correction.
pub fn zero_order_cumulant_correction(
    s0: &Psd,
    s4_0: &(dyn Fn(i64, i64, i64, i64) -> Complex64 + Sync),
    z: f64,
) -> Vec<f64> {
    let grid = s0.grid();
    let (kmin, kmax) = (grid.min_mode() as i64, grid.max_mode() as i64);
    let n = grid.sample_count() as i64;
    let pmax = (n - 1) * (n - 1);
    let table: Vec<Complex64> =
        (-pmax..=pmax).map(|p| h_kernel(mismatch_from_product(&grid, p), z)).collect();

    let modes: Vec<i64> = (kmin..=kmax).collect();
    modes
        .par_iter()
        .map(|&k| {
            let mut acc = Kahan::new();
            for l in kmin..=kmax {
                if l == k {
                    continue;
                }
                for m in kmin.max(kmin - l + k)..=kmax.min(kmax - l + k) {
                    if m == k {
                        continue;
                    }
                    let nn = l + m - k;
                    let s4 = s4_0(l, m, nn, k);
                    if s4 == Complex64::ZERO {
                        continue;
                    }
                    let h = table[((k - l) * (k - m) + pmax) as usize];
                    acc.add(4.0 * (h * s4).re);
                }
            }
            acc.sum
        })
        .collect()
}

/// Span array factor `G(Ω) = Σ_{n=0}^{N−1} e^{−jnεΩ}`, in closed form with
/// the resonant limit `G → N` at `εΩ ∈ 2πZ`.
pub fn g_factor(omega: f64, span_length: f64, span_count: usize) -> Complex64 {
    let half = span_length * omega / 2.0;
    if half.sin().abs() < 1e-9 {
        // near a grating resonance the quotient is ill-conditioned
        return (0..span_count)
            .map(|n| Complex64::from_polar(1.0, -(n as f64) * span_length * omega))
            .sum();
    }
    let z = span_count as f64 * span_length;
    let num = 1.0 - Complex64::from_polar(1.0, -z * omega);
    let den = 1.0 - Complex64::from_polar(1.0, -span_length * omega);
    num / den
}

/// `|G(Ω)|² = sin²(zΩ/2)/sin²(εΩ/2)`, with limit `N²`.
pub fn g_factor_abs2(omega: f64, span_length: f64, span_count: usize) -> f64 {
    let half = span_length * omega / 2.0;
    let s = half.sin();
    if s.abs() < 1e-9 {
        return g_factor(omega, span_length, span_count).norm_sqr();
    }
    let z_half = span_count as f64 * half;
    let t = z_half.sin();
    t * t / (s * s)
}

fn multispan_params(link: &LinkConfig) -> ModelParams {
    ModelParams {
        z: link.total_length(),
        coeff: link.epsilon(),
        alpha: link.alpha,
        span_length: link.span_length,
        span_count: link.span_count,
    }
}

fn multispan_weight<'a>(
    link: &'a LinkConfig,
    grid: &TimeGrid,
) -> Box<dyn Fn(i64, i64, i64, i64) -> f64 + Sync + 'a> {
    let eps = link.span_length;
    let nsp = link.span_count;
    let alpha = link.alpha;
    match &link.dispersion {
        DispersionSpec::Quadratic => {
            let table = quadratic_weight_table(grid, |om| {
                h_lossy_abs2(alpha, om, eps) * g_factor_abs2(om, eps, nsp)
            });
            Box::new(move |k, l, m, _| table[((k - l) * (k - m)).unsigned_abs() as usize])
        }
        DispersionSpec::Polynomial(_) => {
            let grid = *grid;
            Box::new(move |k, l, m, n| {
                let om = link.dispersion.kernel_mismatch(&grid, l as i32, m as i32, n as i32, k as i32);
                h_lossy_abs2(alpha, om, eps) * g_factor_abs2(om, eps, nsp)
            })
        }
    }
}

/// Multi-span GN PSD, post-amplifier normalization:
/// `S_k = S⁰_k + 2γ² Σ_{nr_k} |H(jα−Ω)(ε_span)|²|G(Ω)|² S⁰_lS⁰_mS⁰_n`.
pub fn gn_psd_multispan(s0: &Psd, link: &LinkConfig) -> Result<PsdModelOutput> {
    link.validate()?;
    let gamma = link.nonlinear_coeff;
    let weight = multispan_weight(link, &s0.grid());
    let (gn, _) = model_sums(s0, weight.as_ref(), 2.0 * gamma * gamma);
    Ok(PsdModelOutput {
        model: ModelKind::Gn,
        s0: s0.clone(),
        correction: gn,
        params: multispan_params(link),
    })
}

/// Multi-span KZ PSD with the same kernel magnitude as the GN form and the
/// collision term in place of the triple product.
pub fn kz_psd_multispan(s0: &Psd, link: &LinkConfig) -> Result<PsdModelOutput> {
    link.validate()?;
    let gamma = link.nonlinear_coeff;
    let weight = multispan_weight(link, &s0.grid());
    let (_, kz) = model_sums(s0, weight.as_ref(), 2.0 * gamma * gamma);
    Ok(PsdModelOutput {
        model: ModelKind::Kz,
        s0: s0.clone(),
        correction: kz,
        params: multispan_params(link),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(n: usize) -> TimeGrid {
        TimeGrid::new(n as f64, n).unwrap()
    }

    fn random_psd(g: TimeGrid, seed: u64) -> Psd {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Psd::new(g, (0..g.sample_count()).map(|_| rng.random::<f64>()).collect()).unwrap()
    }

    #[test]
    fn collision_term_examples() {
        let g = grid(8);
        let s = Psd::from_modes(g, |k| match k {
            1 => 1.0,
            2 => 2.0,
            3 => 3.0,
            0 => 4.0,
            _ => 0.5,
        })
        .unwrap();
        // S=(1,2,3,4) on (l,m,n,k)=(1,2,3,0): 1·2·3 + 1·2·4 − 1·3·4 − 2·3·4 = −22
        let q = Quartet::new(1, 2, 3, 0);
        assert_relative_eq!(collision_term(&s, &q).unwrap(), -22.0);
        // antisymmetry under (l,m)↔(n,k)
        let swapped = Quartet::new(3, 0, 1, 2);
        assert_relative_eq!(collision_term(&s, &swapped).unwrap(), 22.0);
        // flat spectrum is collision-free
        let flat = Psd::from_modes(g, |_| 1.3).unwrap();
        assert_eq!(collision_term(&flat, &q).unwrap(), 0.0);
        assert!(collision_term(&s, &Quartet::new(1, 2, 3, 4)).is_err());
        assert!(collision_term(&s, &Quartet::new(7, 2, 9, 0)).is_err());
    }

    #[test]
    fn zero_coefficient_models_are_identity() {
        let g = grid(16);
        let s0 = random_psd(g, 3);
        let gn = gn_psd(&s0, 1.0, 0.0);
        let kz = kz_psd(&s0, 1.0, 0.0);
        assert!(gn.correction.iter().all(|&c| c == 0.0));
        assert!(kz.correction.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn single_occupied_mode_has_no_triples() {
        let g = grid(16);
        let s0 = Psd::from_modes(g, |k| if k == 2 { 1.5 } else { 0.0 }).unwrap();
        let gn = gn_psd(&s0, 1.0, 1.0);
        assert!(gn.correction.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn flat_spectrum_is_a_kz_fixed_point() {
        let g = grid(16);
        let s0 = Psd::from_modes(g, |_| 0.8).unwrap();
        let kz = kz_psd(&s0, 1.0, 1.0);
        for c in &kz.correction {
            assert!(c.abs() < 1e-15);
        }
    }

    #[test]
    fn kz_preserves_energy_and_gn_adds_it() {
        let g = grid(32);
        for seed in 0..5 {
            let s0 = random_psd(g, seed);
            let kz = kz_psd(&s0, 1.0, 1.0);
            let net: f64 = kz.correction.iter().sum();
            assert!(net.abs() <= 1e-12 * s0.total(), "net {net}");
            let gn = gn_psd(&s0, 1.0, 1.0);
            assert!(gn.correction.iter().sum::<f64>() > 0.0);
            assert!(gn.correction.iter().all(|&c| c >= 0.0));
        }
    }

    #[test]
    fn model_identity_and_pointwise_ordering() {
        let g = grid(32);
        for seed in 10..14 {
            let s0 = random_psd(g, seed);
            let gn = gn_psd(&s0, 1.0, 1.0);
            let kz = kz_psd(&s0, 1.0, 1.0);
            let ds = delta_s(&s0, 1.0, 1.0);
            let scale = s0.total();
            for i in 0..g.sample_count() {
                let diff = gn.correction[i] - kz.correction[i];
                assert!(
                    (diff - ds.definitional[i]).abs() <= 1e-12 * scale,
                    "ΔS mismatch at {i}"
                );
                assert!(gn.correction[i] >= kz.correction[i] - 1e-14 * scale);
                // the definitional difference is nonnegative on random S⁰
                assert!(ds.definitional[i] >= -1e-14 * scale);
            }
        }
    }

    #[test]
    fn delta_s_vanishes_without_nonlinearity() {
        let g = grid(16);
        let s0 = random_psd(g, 21);
        let ds = delta_s(&s0, 1.0, 0.0);
        assert!(ds.definitional.iter().all(|&v| v == 0.0));
        assert!(ds.simplified.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn zero_order_cumulant_examples() {
        let g = grid(16);
        let s0 = random_psd(g, 4);
        // S̃(0) ≡ 0 → no correction
        let corr = zero_order_cumulant_correction(&s0, &|_, _, _, _| Complex64::ZERO, 1.0);
        assert!(corr.iter().all(|&c| c == 0.0));
        // z → 0: H(Ω)(0) = 0 → no correction even with S̃ ≠ 0
        let corr =
            zero_order_cumulant_correction(&s0, &|_, _, _, _| Complex64::new(0.1, 0.0), 0.0);
        assert!(corr.iter().all(|&c| c.abs() < 1e-15));
    }

    #[test]
    fn zero_order_cumulant_matches_quadrature() {
        // independent oracle: integrate 4 Σ Im(e^{jΩz'} S̃) dz' by midpoint rule
        let g = grid(8);
        let s0 = Psd::from_modes(g, |_| 1.0).unwrap();
        let s4 = |l: i64, m: i64, n: i64, k: i64| {
            Complex64::new(
                0.01 * ((l - k) as f64).cos(),
                0.02 * ((m - n) as f64).sin(),
            )
        };
        let z = 1.3;
        let corr = zero_order_cumulant_correction(&s0, &s4, z);
        let (kmin, kmax) = (g.min_mode() as i64, g.max_mode() as i64);
        let w0 = g.omega0();
        for (i, k) in (kmin..=kmax).enumerate() {
            let mut quad = 0.0;
            let steps = 20_000;
            let dz = z / steps as f64;
            for l in kmin..=kmax {
                if l == k {
                    continue;
                }
                for m in kmin..=kmax {
                    if m == k {
                        continue;
                    }
                    let n = l + m - k;
                    if n < kmin || n > kmax {
                        continue;
                    }
                    let om = w0 * w0 * ((l * l + m * m - n * n - k * k) as f64);
                    let s = s4(l, m, n, k);
                    for j in 0..steps {
                        let zp = (j as f64 + 0.5) * dz;
                        quad += 4.0 * (Complex64::from_polar(1.0, om * zp) * s).im * dz;
                    }
                }
            }
            assert!((corr[i] - quad).abs() < 1e-6, "mode {k}: {} vs {quad}", corr[i]);
        }
    }

    #[test]
    fn g_factor_limits_and_closed_form() {
        assert_relative_eq!(g_factor(0.0, 1.0, 5).re, 5.0);
        assert!(g_factor(0.0, 1.0, 5).im.abs() < 1e-12);
        assert_relative_eq!(g_factor_abs2(1e-14, 1.0, 7), 49.0, max_relative = 1e-9);
        // N_sp=2, ε=1, Ω=π: 1 + e^{−jπ} = 0
        assert!(g_factor(std::f64::consts::PI, 1.0, 2).norm() < 1e-12);
        // random grid vs direct sum
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let om = 20.0 * (rng.random::<f64>() - 0.5);
            let eps = 0.1 + 2.0 * rng.random::<f64>();
            let nsp = 1 + (rng.random::<f64>() * 8.0) as usize;
            let direct: Complex64 = (0..nsp)
                .map(|n| Complex64::from_polar(1.0, -(n as f64) * eps * om))
                .sum();
            assert!(
                (g_factor(om, eps, nsp) - direct).norm() <= 1e-10 * direct.norm().max(1.0),
                "Ω={om} ε={eps} N={nsp}"
            );
            assert!(
                (g_factor_abs2(om, eps, nsp) - direct.norm_sqr()).abs()
                    <= 1e-10 * direct.norm_sqr().max(1.0)
            );
        }
    }

    #[test]
    fn multispan_single_span_lossless_reduces_to_basic_models() {
        let g = grid(16);
        let s0 = random_psd(g, 6);
        let link = LinkConfig::dimensionless(0.7);
        let ms = gn_psd_multispan(&s0, &link).unwrap();
        let basic = gn_psd(&s0, 1.0, 0.7);
        for (a, b) in ms.correction.iter().zip(&basic.correction) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-12));
        }
        let ms = kz_psd_multispan(&s0, &link).unwrap();
        let basic = kz_psd(&s0, 1.0, 0.7);
        for (a, b) in ms.correction.iter().zip(&basic.correction) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-12));
        }
    }

    #[test]
    fn multispan_lossless_kz_preserves_energy() {
        let g = grid(16);
        let s0 = random_psd(g, 7);
        let mut link = LinkConfig::dimensionless(1.0);
        link.span_count = 4;
        let ms = kz_psd_multispan(&s0, &link).unwrap();
        let net: f64 = ms.correction.iter().sum();
        assert!(net.abs() <= 1e-12 * s0.total());
    }

    #[test]
    fn multispan_gamma_zero_is_identity() {
        let g = grid(16);
        let s0 = random_psd(g, 8);
        let mut link = LinkConfig::dimensionless(0.0);
        link.alpha = 0.2;
        link.span_count = 3;
        let ms = gn_psd_multispan(&s0, &link).unwrap();
        assert!(ms.correction.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn multispan_center_correction_grows_coherently() {
        // narrowband input: near Ω=0 the array factor gives N² growth
        let g = grid(64);
        let w0 = g.omega0();
        let s0 = Psd::from_modes(g, |k| {
            0.01 * (-16.0 * w0 * w0 * (k as f64) * (k as f64)).exp()
        })
        .unwrap();
        let center = g.sample_count() / 2;
        let corr = |nsp: usize| {
            let link = LinkConfig {
                dispersion: DispersionSpec::Quadratic,
                alpha: 0.2,
                nonlinear_coeff: 2.0,
                sign: 1.0,
                span_length: 1.0,
                span_count: nsp,
                gains: None,
            };
            gn_psd_multispan(&s0, &link).unwrap().correction[center]
        };
        let c1 = corr(1);
        let c4 = corr(4);
        let growth = c4 / c1;
        assert!(growth > 12.0 && growth < 17.0, "growth {growth}");
    }

    #[test]
    fn polynomial_dispersion_weight_agrees_with_quadratic_special_case() {
        // β(ω) = −ω² reproduces the dimensionless quadratic relation
        let g = grid(16);
        let s0 = random_psd(g, 11);
        let quad = LinkConfig::dimensionless(1.0);
        let mut poly = quad.clone();
        poly.dispersion = DispersionSpec::Polynomial(vec![0.0, 0.0, -2.0]);
        let a = gn_psd_multispan(&s0, &quad).unwrap();
        let b = gn_psd_multispan(&s0, &poly).unwrap();
        for (x, y) in a.correction.iter().zip(&b.correction) {
            assert!((x - y).abs() <= 1e-10 * x.abs().max(1e-12));
        }
    }
}
