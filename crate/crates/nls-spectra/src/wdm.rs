//! WDM input construction, per-user spectral bookkeeping, interference
//! decomposition, and non-Gaussian corrections to both PSD models.
//!
//! A WDM ensemble has `2M_u+1` users, each modulating `M` orthonormal
//! band-limited pulses with i.i.d. complex symbols. With the `+jωt`
//! transform convention a user with paper index `m` occupies the grid modes
//! `k` with `mN₀ + k ∈ [−N₀/2, N₀/2)`, and the input coefficients are
//! `q_k = Σ_{l,m} a_m^l φ^l_{mN₀+k}`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perturbation::{h_abs2, h_kernel, quadratic_mismatch};
use crate::psd::{
    gn_psd, kz_psd, zero_order_cumulant_correction, ModelKind, Psd, PsdModelOutput,
};
use crate::sampler::SpectrumSampler;
use crate::spectral::{Signal, Spectrum, TimeGrid};
use crate::stats::{iid_cumulant_densities, SymbolMoments};

const ORTHONORMALITY_TOL: f64 = 1e-10;

/// An orthonormal family of pulses band-limited to one user slot.
///
/// `coeffs[pulse][slot]` with slot `r` holding in-band mode `r − N₀/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseBasis {
    coeffs: Vec<Vec<Complex64>>,
    n0: usize,
}

impl PulseBasis {
    /// Single-tone pulses: `φ^l` occupies band slot `l` alone. Yields a
    /// cyclostationary (spectrally uncorrelated) input.
    pub fn tones(n0: usize, pulses: usize) -> Result<Self> {
        if pulses == 0 || pulses > n0 {
            return Err(Error::Config(format!("need 1..={n0} tone pulses, got {pulses}")));
        }
        let coeffs = (0..pulses)
            .map(|l| {
                let mut row = vec![Complex64::ZERO; n0];
                row[l] = Complex64::new(1.0, 0.0);
                row
            })
            .collect();
        Self::custom(coeffs)
    }

    /// `N₀` time shifts of a flat-spectrum pulse,
    /// `φ^l_k = p_k e^{j2πkl/M}` with `|p_k| = 1/√N₀`; the critically
    /// sampled case with a diagonal input moment.
    pub fn delayed_flat(n0: usize) -> Result<Self> {
        let m = n0;
        let amp = 1.0 / (n0 as f64).sqrt();
        let coeffs = (0..m)
            .map(|l| {
                (0..n0)
                    .map(|r| {
                        let k = r as f64 - n0 as f64 / 2.0;
                        Complex64::from_polar(amp, std::f64::consts::TAU * k * l as f64 / m as f64)
                    })
                    .collect()
            })
            .collect();
        Self::custom(coeffs)
    }

    /// `N₀/2` time shifts of a smooth raised-rolloff pulse
    /// (`|p_r|² = sin²(π(r+½)/N₀)/M`, so folded pairs sum to `1/M`); the
    /// half-rate case whose input moment has off-diagonal entries.
    pub fn delayed_smooth(n0: usize) -> Result<Self> {
        if n0 % 2 != 0 || n0 < 4 {
            return Err(Error::Config(format!("smooth basis needs even N₀ >= 4, got {n0}")));
        }
        let m = n0 / 2;
        let p: Vec<f64> = (0..n0)
            .map(|r| {
                let u = (r as f64 + 0.5) / n0 as f64;
                (std::f64::consts::PI * u).sin() / (m as f64).sqrt()
            })
            .collect();
        let coeffs = (0..m)
            .map(|l| {
                (0..n0)
                    .map(|r| {
                        let k = r as f64 - n0 as f64 / 2.0;
                        Complex64::from_polar(
                            p[r],
                            std::f64::consts::TAU * k * l as f64 / m as f64,
                        )
                    })
                    .collect()
            })
            .collect();
        Self::custom(coeffs)
    }

    /// Arbitrary sampled coefficient table, checked for orthonormality.
    pub fn custom(coeffs: Vec<Vec<Complex64>>) -> Result<Self> {
        let n0 = coeffs.first().map_or(0, Vec::len);
        if n0 == 0 || coeffs.iter().any(|c| c.len() != n0) {
            return Err(Error::Config("pulse table must be rectangular and nonempty".into()));
        }
        let basis = Self { coeffs, n0 };
        let residual = basis.orthonormality_residual();
        if residual > ORTHONORMALITY_TOL {
            return Err(Error::NotOrthonormal(residual));
        }
        Ok(basis)
    }

    pub fn pulse_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    /// `max_{l,l'} |Σ_r φ^l_r φ^{l'*}_r − δ_{ll'}|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in self.coeffs.iter().enumerate() {
                let dot: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// A multi-user WDM input ensemble.
#[derive(Debug, Clone)]
pub struct WdmConfig {
    grid: TimeGrid,
    user_count: usize,
    basis: PulseBasis,
    symbol_moments: SymbolMoments,
}

impl WdmConfig {
    pub fn new(
        grid: TimeGrid,
        user_count: usize,
        basis: PulseBasis,
        symbol_moments: SymbolMoments,
    ) -> Result<Self> {
        if user_count == 0 || user_count % 2 == 0 {
            return Err(Error::Config(format!("user count must be odd, got {user_count}")));
        }
        let n0 = basis.n0() as i64;
        if n0 % 2 != 0 {
            return Err(Error::Config("modes per user must be even".into()));
        }
        let half_users = (user_count as i64 - 1) / 2;
        let extreme = half_users * n0 + n0 / 2;
        if extreme > grid.max_mode() as i64 {
            return Err(Error::Config(format!(
                "{user_count} users × {n0} modes exceed the grid band (need |k| ≤ {}, have {})",
                extreme,
                grid.max_mode()
            )));
        }
        Ok(Self { grid, user_count, basis, symbol_moments })
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn user_count(&self) -> usize {
        self.user_count
    }

    pub fn basis(&self) -> &PulseBasis {
        &self.basis
    }

    pub fn symbol_moments(&self) -> SymbolMoments {
        self.symbol_moments
    }

    pub fn n0(&self) -> i64 {
        self.basis.n0() as i64
    }

    /// Paper-convention user indices `−M_u ..= M_u`.
    pub fn users(&self) -> impl Iterator<Item = i64> {
        let half = (self.user_count as i64 - 1) / 2;
        -half..=half
    }

    /// Grid modes occupied by user `m`.
    pub fn user_band(&self, m: i64) -> std::ops::Range<i64> {
        let n0 = self.n0();
        (-m * n0 - n0 / 2)..(-m * n0 + n0 / 2)
    }

    /// The user whose band holds mode `k`, if any.
    pub fn user_of_mode(&self, k: i64) -> Option<i64> {
        let n0 = self.n0();
        let m = (n0 / 2 - 1 - k).div_euclid(n0);
        let half = (self.user_count as i64 - 1) / 2;
        (m.abs() <= half).then_some(m)
    }

    /// `φ^pulse_{mN₀+k}` — zero whenever `mN₀+k` falls outside the pulse
    /// band.
    pub fn phi(&self, pulse: usize, m: i64, k: i64) -> Complex64 {
        let n0 = self.n0();
        let slot = m * n0 + k + n0 / 2;
        if slot < 0 || slot >= n0 {
            Complex64::ZERO
        } else {
            self.basis.coeffs[pulse][slot as usize]
        }
    }

    /// Diagonal input density `S⁰_k = E|q_k|²`.
    pub fn input_psd(&self) -> Psd {
        Psd::from_modes(self.grid, |k| input_spectral_moment(self, k as i64, k as i64).re)
            .expect("diagonal moments are nonnegative")
    }
}

/// Builds the WDM spectrum `q_k = Σ_{l,m} a_m^l φ^l_{mN₀+k}` from per-user
/// symbol arrays (`symbols[user][pulse]`, users in paper order `−M_u…M_u`).
pub fn build_wdm_spectrum(cfg: &WdmConfig, symbols: &[Vec<Complex64>]) -> Result<Spectrum> {
    if symbols.len() != cfg.user_count
        || symbols.iter().any(|row| row.len() != cfg.basis.pulse_count())
    {
        return Err(Error::Config(format!(
            "symbol array must be {} users × {} pulses",
            cfg.user_count,
            cfg.basis.pulse_count()
        )));
    }
    let mut spec = Spectrum::zero(cfg.grid);
    let n0 = cfg.n0();
    let kmin = cfg.grid.min_mode() as i64;
    for (u, m) in cfg.users().enumerate() {
        for r in 0..n0 {
            let k = r - n0 / 2 - m * n0;
            let mut acc = Complex64::ZERO;
            for (l, &a) in symbols[u].iter().enumerate() {
                acc += a * cfg.basis.coeffs[l][r as usize];
            }
            spec.coeffs_mut()[(k - kmin) as usize] += acc;
        }
    }
    Ok(spec)
}

/// Time-domain WDM signal; see [`build_wdm_spectrum`].
pub fn build_wdm_signal(cfg: &WdmConfig, symbols: &[Vec<Complex64>]) -> Result<Signal> {
    Ok(build_wdm_spectrum(cfg, symbols)?.to_signal())
}

/// Closed-form input moment `μ₁₂ = E q_{k₁} q*_{k₂}` for i.i.d. symbols:
/// `P₀ Σ_{l,m} φ^l_{mN₀+k₁} φ^{l*}_{mN₀+k₂}`. Zero across user bands.
pub fn input_spectral_moment(cfg: &WdmConfig, k1: i64, k2: i64) -> Complex64 {
    let Some(m) = cfg.user_of_mode(k1) else { return Complex64::ZERO };
    if cfg.user_of_mode(k2) != Some(m) {
        return Complex64::ZERO;
    }
    let p0 = cfg.symbol_moments.e2;
    let mut acc = Complex64::ZERO;
    for l in 0..cfg.basis.pulse_count() {
        acc += cfg.phi(l, m, k1) * cfg.phi(l, m, k2).conj();
    }
    acc * p0
}

/// Splits the symbol energy `Σ_{l,m} |a_m^l|²` into the part owned by
/// `user` and the part contributed by everyone else (the constant-phase
/// cross term seen by that user).
pub fn xpm_energy_decomposition(
    cfg: &WdmConfig,
    symbols: &[Vec<Complex64>],
    user: i64,
) -> Result<(f64, f64)> {
    if symbols.len() != cfg.user_count {
        return Err(Error::Config("symbol array user count mismatch".into()));
    }
    let mut own = 0.0;
    let mut cross = 0.0;
    for (u, m) in cfg.users().enumerate() {
        let e: f64 = symbols[u].iter().map(|a| a.norm_sqr()).sum();
        if m == user {
            own += e;
        } else {
            cross += e;
        }
    }
    Ok((own, cross))
}

/// Per-mode interference decomposition for one user, by how many of the
/// interacting triple's indices fall inside that user's band.
#[derive(Debug, Clone, Serialize)]
pub struct InterferenceReport {
    pub user: i64,
    pub model: ModelKind,
    /// Band modes the rows refer to.
    pub modes: Vec<i64>,
    /// All three indices in-band (self-channel mixing).
    pub intra: Vec<f64>,
    /// Exactly two indices in-band.
    pub one_wave: Vec<f64>,
    /// Exactly one index in-band.
    pub two_wave: Vec<f64>,
    /// No index in-band.
    pub three_wave: Vec<f64>,
    /// Triple counts per class over the whole band.
    pub counts: [u64; 4],
    pub total_intra: f64,
    pub total_one_wave: f64,
    pub total_two_wave: f64,
    pub total_three_wave: f64,
    pub total: f64,
}

/// Streams over `nr_k` for each mode of `user`'s band, attributing each
/// triple's model contribution (`S_lS_mS_n` for GN, the collision term for
/// KZ) to the intra/1-wave/2-wave/3-wave classes. Components sum to the
/// model's nonlinear correction exactly.
pub fn decompose_interference(
    cfg: &WdmConfig,
    z: f64,
    coeff: f64,
    model: ModelKind,
    user: i64,
) -> Result<InterferenceReport> {
    if !cfg.users().any(|m| m == user) {
        return Err(Error::OutOfBand { k: user, bound: (cfg.user_count as i64 - 1) / 2 });
    }
    let s0 = cfg.input_psd();
    let grid = cfg.grid;
    let (kmin, kmax) = (grid.min_mode() as i64, grid.max_mode() as i64);
    let s = s0.values();
    let idx = |k: i64| (k - kmin) as usize;
    let band = cfg.user_band(user);
    let in_band = |x: i64| band.contains(&x);
    let prefactor = 8.0 * coeff * coeff;

    let modes: Vec<i64> = band.clone().collect();
    let mut intra = vec![0.0; modes.len()];
    let mut one_wave = vec![0.0; modes.len()];
    let mut two_wave = vec![0.0; modes.len()];
    let mut three_wave = vec![0.0; modes.len()];
    let mut counts = [0u64; 4];
    for (row, &k) in modes.iter().enumerate() {
        let sk = s[idx(k)];
        for l in kmin..=kmax {
            if l == k {
                continue;
            }
            let sl = s[idx(l)];
            for m in kmin.max(kmin - l + k)..=kmax.min(kmax - l + k) {
                if m == k {
                    continue;
                }
                let n = l + m - k;
                let w = prefactor * h_abs2(quadratic_mismatch(&grid, l, m, n, k), z);
                let sm = s[idx(m)];
                let sn = s[idx(n)];
                let x = match model {
                    ModelKind::Gn => sl * sm * sn,
                    ModelKind::Kz => sl * sm * (sn + sk) - sn * sk * (sl + sm),
                };
                let inside =
                    usize::from(in_band(l)) + usize::from(in_band(m)) + usize::from(in_band(n));
                counts[3 - inside] += 1;
                match inside {
                    3 => intra[row] += w * x,
                    2 => one_wave[row] += w * x,
                    1 => two_wave[row] += w * x,
                    _ => three_wave[row] += w * x,
                }
            }
        }
    }
    let sum = |v: &[f64]| v.iter().sum::<f64>();
    let (ti, t1, t2, t3) = (sum(&intra), sum(&one_wave), sum(&two_wave), sum(&three_wave));
    Ok(InterferenceReport {
        user,
        model,
        modes,
        intra,
        one_wave,
        two_wave,
        three_wave,
        counts,
        total_intra: ti,
        total_one_wave: t1,
        total_two_wave: t2,
        total_three_wave: t3,
        total: ti + t1 + t2 + t3,
    })
}

/// Work estimate guard for the cumulant-corrected models.
fn guard_cost(cfg: &WdmConfig) -> Result<()> {
    let n = cfg.grid.sample_count() as u64;
    let work = n * n * n * (cfg.basis.pulse_count() as u64) * (cfg.user_count as u64);
    const LIMIT: u64 = 4_000_000_000;
    if work > LIMIT {
        return Err(Error::Config(format!(
            "cumulant-corrected model cost ~{work} ops exceeds the {LIMIT} guard; \
             reduce the grid, user count or pulse count"
        )));
    }
    Ok(())
}

/// Fourth-order spectral cumulant of the i.i.d. WDM input on a quartet:
/// `κ₄(l,m,n,k) = S̃₄(a) Σ_{u,p} φ^u_{[l]}φ^u_{[m]}φ^{u*}_{[n]}φ^{u*}_{[k]}`.
pub fn spectral_cumulant4(cfg: &WdmConfig, s4: f64, l: i64, m: i64, n: i64, k: i64) -> Complex64 {
    // all four indices must share one user band
    let Some(p) = cfg.user_of_mode(l) else { return Complex64::ZERO };
    if cfg.user_of_mode(m) != Some(p)
        || cfg.user_of_mode(n) != Some(p)
        || cfg.user_of_mode(k) != Some(p)
    {
        return Complex64::ZERO;
    }
    let mut acc = Complex64::ZERO;
    for u in 0..cfg.basis.pulse_count() {
        acc += cfg.phi(u, p, l) * cfg.phi(u, p, m) * cfg.phi(u, p, n).conj() * cfg.phi(u, p, k).conj();
    }
    acc * s4
}

/// Precomputed trilinear basis sums
/// `Λ^u_p(x) = Σ_{l'+m'−n'=x} φ^u_{[l']}φ^u_{[m']}φ^{u*}_{[n']}` per user
/// band and pulse, supported on the widened band of `p`.
struct TrilinearTable {
    /// `[user][pulse]` → (offset, values)
    tables: Vec<Vec<(i64, Vec<Complex64>)>>,
}

impl TrilinearTable {
    fn build(cfg: &WdmConfig) -> Self {
        let n0 = cfg.n0();
        let tables = cfg
            .users()
            .map(|p| {
                let base = -p * n0;
                let lo = base - 3 * n0 / 2 + 1;
                let len = (3 * n0 - 1) as usize;
                (0..cfg.basis.pulse_count())
                    .map(|u| {
                        let mut vals = vec![Complex64::ZERO; len];
                        let band: Vec<i64> = cfg.user_band(p).collect();
                        for &lp in &band {
                            let fl = cfg.phi(u, p, lp);
                            for &mp in &band {
                                let flm = fl * cfg.phi(u, p, mp);
                                for &np in &band {
                                    let x = lp + mp - np;
                                    vals[(x - lo) as usize] += flm * cfg.phi(u, p, np).conj();
                                }
                            }
                        }
                        (lo, vals)
                    })
                    .collect()
            })
            .collect();
        Self { tables }
    }

    fn get(&self, user_row: usize, pulse: usize, x: i64) -> Complex64 {
        let (lo, vals) = &self.tables[user_row][pulse];
        let i = x - lo;
        if i < 0 || i as usize >= vals.len() {
            Complex64::ZERO
        } else {
            vals[i as usize]
        }
    }
}

/// Sixth-cumulant collision correction
/// `T̂_{lmnk} = ½ Σ_{l'm'n'} (κ₆ terms)` for the i.i.d. WDM input, using the
/// factorized basis products.
fn t_hat(
    cfg: &WdmConfig,
    tri: &TrilinearTable,
    s6: f64,
    l: i64,
    m: i64,
    n: i64,
    k: i64,
) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for (row, p) in cfg.users().enumerate() {
        for u in 0..cfg.basis.pulse_count() {
            // remaining-triple products vanish unless all three live in band p
            let t1 = cfg.phi(u, p, m) * cfg.phi(u, p, n).conj() * cfg.phi(u, p, k).conj();
            if t1 != Complex64::ZERO {
                acc += t1 * tri.get(row, u, l);
            }
            let t2 = cfg.phi(u, p, l) * cfg.phi(u, p, n).conj() * cfg.phi(u, p, k).conj();
            if t2 != Complex64::ZERO {
                acc += t2 * tri.get(row, u, m);
            }
            let t3 = cfg.phi(u, p, l) * cfg.phi(u, p, m) * cfg.phi(u, p, k).conj();
            if t3 != Complex64::ZERO {
                acc -= t3 * tri.get(row, u, n).conj();
            }
            let t4 = cfg.phi(u, p, l) * cfg.phi(u, p, m) * cfg.phi(u, p, n).conj();
            if t4 != Complex64::ZERO {
                acc -= t4 * tri.get(row, u, k).conj();
            }
        }
    }
    0.5 * s6 * acc
}

/// GN/KZ PSDs with the non-Gaussian i.i.d.-symbol corrections.
///
/// The Gaussian part is the plain model on the diagonal input density. The
/// GN correction adds the sixth-cumulant double sum
/// `4 S̃₆ Σ_{u,p} |Σ_{nr_k} H φφφ*|²`; the KZ correction adds the
/// fourth-cumulant kinetic term `4 Re Σ H κ₄` and the sixth-cumulant
/// collision term `8 Σ |H|² Re T̂`. Gaussian symbols leave both models
/// unchanged.
pub fn corrected_psds(
    cfg: &WdmConfig,
    z: f64,
    coeff: f64,
    model: ModelKind,
) -> Result<PsdModelOutput> {
    guard_cost(cfg)?;
    let densities = iid_cumulant_densities(&cfg.symbol_moments)?;
    let s0 = cfg.input_psd();
    let grid = cfg.grid;
    let (kmin, kmax) = (grid.min_mode() as i64, grid.max_mode() as i64);
    let base = match model {
        ModelKind::Gn => gn_psd(&s0, z, coeff),
        ModelKind::Kz => kz_psd(&s0, z, coeff),
    };
    let mut correction = base.correction.clone();

    match model {
        ModelKind::Gn => {
            if densities.s6 != 0.0 {
                for k in kmin..=kmax {
                    let mut total = 0.0;
                    for p in cfg.users() {
                        for u in 0..cfg.basis.pulse_count() {
                            let mut theta = Complex64::ZERO;
                            for l in cfg.user_band(p) {
                                if l == k {
                                    continue;
                                }
                                let fl = cfg.phi(u, p, l);
                                for m in cfg.user_band(p) {
                                    if m == k {
                                        continue;
                                    }
                                    let n = l + m - k;
                                    if cfg.user_of_mode(n) != Some(p) {
                                        continue;
                                    }
                                    theta += h_kernel(quadratic_mismatch(&grid, l, m, n, k), z)
                                        * fl
                                        * cfg.phi(u, p, m)
                                        * cfg.phi(u, p, n).conj();
                                }
                            }
                            total += theta.norm_sqr();
                        }
                    }
                    correction[(k - kmin) as usize] +=
                        4.0 * coeff * coeff * densities.s6 * total;
                }
            }
        }
        ModelKind::Kz => {
            if densities.s4 != 0.0 {
                // the kinetic equation's first term is 4ε Re Σ H κ₄; fold the
                // ε into the cumulant handed to the driver
                let scaled = densities.s4 * coeff;
                let kappa4 = move |l: i64, m: i64, n: i64, k: i64| {
                    spectral_cumulant4(cfg, scaled, l, m, n, k)
                };
                let corr4 = zero_order_cumulant_correction(&s0, &kappa4, z);
                for (c, d) in correction.iter_mut().zip(&corr4) {
                    *c += d;
                }
            }
            if densities.s6 != 0.0 {
                let tri = TrilinearTable::build(cfg);
                for k in kmin..=kmax {
                    let mut acc = 0.0;
                    for l in kmin..=kmax {
                        if l == k {
                            continue;
                        }
                        for m in kmin.max(kmin - l + k)..=kmax.min(kmax - l + k) {
                            if m == k {
                                continue;
                            }
                            let n = l + m - k;
                            let th = t_hat(cfg, &tri, densities.s6, l, m, n, k);
                            if th != Complex64::ZERO {
                                acc += h_abs2(quadratic_mismatch(&grid, l, m, n, k), z) * th.re;
                            }
                        }
                    }
                    correction[(k - kmin) as usize] += 8.0 * coeff * coeff * acc;
                }
            }
        }
    }

    Ok(PsdModelOutput { model, s0, correction, params: base.params })
}

/// Symbol laws available for the Monte-Carlo side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub enum SymbolDistribution {
    /// Circular complex Gaussian with `E|a|² = power`.
    CircularGaussian { power: f64 },
    /// `√power·e^{jθ}` with uniform phase.
    ConstantModulus { power: f64 },
}

impl SymbolDistribution {
    pub fn moments(&self) -> SymbolMoments {
        match *self {
            SymbolDistribution::CircularGaussian { power } => SymbolMoments::gaussian(power),
            SymbolDistribution::ConstantModulus { power } => {
                SymbolMoments::constant_modulus(power)
            }
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        match *self {
            SymbolDistribution::CircularGaussian { power } => {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im) * (power / 2.0).sqrt()
            }
            SymbolDistribution::ConstantModulus { power } => {
                let phase = rng.random::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(power.sqrt(), phase)
            }
        }
    }
}

/// Draws i.i.d. symbols for every `(user, pulse)` slot and assembles the
/// WDM spectrum.
#[derive(Debug, Clone)]
pub struct WdmSampler {
    cfg: WdmConfig,
    dist: SymbolDistribution,
}

impl WdmSampler {
    pub fn new(cfg: WdmConfig, dist: SymbolDistribution) -> Self {
        Self { cfg, dist }
    }

    pub fn config(&self) -> &WdmConfig {
        &self.cfg
    }

    pub fn draw_symbols(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
        (0..self.cfg.user_count)
            .map(|_| (0..self.cfg.basis.pulse_count()).map(|_| self.dist.draw(rng)).collect())
            .collect()
    }
}

impl SpectrumSampler for WdmSampler {
    fn grid(&self) -> TimeGrid {
        self.cfg.grid
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Spectrum {
        let symbols = self.draw_symbols(rng);
        build_wdm_spectrum(&self.cfg, &symbols).expect("shapes match by construction")
    }
}
