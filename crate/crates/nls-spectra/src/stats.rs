//! Spectral moments, cumulants, the Wick decomposition and Monte-Carlo
//! estimators.
//!
//! Moment specs carry conjugation signs: the first group of indices enters
//! unconjugated, the second conjugated. Asymmetric specs (unequal group
//! sizes) evaluate to zero by convention, as do partition blocks that mix
//! conjugation unevenly — both follow from phase invariance of the
//! ensembles considered here.
//!
//! Moment/cumulant conversion is implemented from the generating-function
//! partition formulas
//!
//! ```text
//! μ_B = Σ_{p ∈ partitions(B)} Π_{b ∈ p} κ_b
//! κ_B = Σ_{p ∈ partitions(B)} (−1)^{|p|−1}(|p|−1)! Π_{b ∈ p} μ_b
//! ```
//!
//! rather than from any printed order-by-order expansion; the Gaussian
//! nullity of κ₄ and κ₆ then holds analytically. For i.i.d. symbols the
//! printed sixth-order density in circulation has inconsistent signs (it
//! fails Gaussian nullity); [`iid_cumulant_densities`] therefore reports
//! both the partition-formula value and the printed expression so the
//! discrepancy stays visible.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::psd::Psd;
use crate::sampler::SpectrumSampler;
use crate::spectral::Spectrum;

/// Conjugation-signed moment identifier `E[q_{k₁}…q_{kₙ} q*_{k_{n+1}}…]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSpec {
    plus: Vec<i64>,
    minus: Vec<i64>,
}

impl MomentSpec {
    pub fn new(plus: Vec<i64>, minus: Vec<i64>) -> Self {
        Self { plus, minus }
    }

    pub fn order(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.plus.len() == self.minus.len()
    }

    pub fn plus(&self) -> &[i64] {
        &self.plus
    }

    pub fn minus(&self) -> &[i64] {
        &self.minus
    }

    /// Sorts each conjugation group; evaluation is invariant under these
    /// permutations, so canonical specs deduplicate pairings.
    pub fn canonicalize(&mut self) {
        self.plus.sort_unstable();
        self.minus.sort_unstable();
    }
}

const PERMS_1: [[usize; 1]; 1] = [[0]];
const PERMS_2: [[usize; 2]; 2] = [[0, 1], [1, 0]];
const PERMS_3: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Gaussian (zero-cumulant) value of a spectral moment: the sum over
/// pairings of unconjugated with conjugated indices of `S_k δ_{k k'}`.
///
/// Asymmetric specs return zero; orders above 6 are unsupported.
pub fn wick_moment(psd: &Psd, spec: &MomentSpec) -> Result<Complex64> {
    if !spec.is_balanced() {
        return Ok(Complex64::ZERO);
    }
    let n = spec.plus.len();
    if n == 0 || n > 3 {
        return Err(Error::UnsupportedOrder(spec.order()));
    }
    let perms: &[&[usize]] = match n {
        1 => &[&PERMS_1[0]],
        2 => &[&PERMS_2[0], &PERMS_2[1]],
        _ => &[
            &PERMS_3[0], &PERMS_3[1], &PERMS_3[2], &PERMS_3[3], &PERMS_3[4], &PERMS_3[5],
        ],
    };
    let mut total = 0.0;
    for perm in perms {
        let mut prod = 1.0;
        for (i, &j) in perm.iter().enumerate() {
            if spec.plus[i] != spec.minus[j] {
                prod = 0.0;
                break;
            }
            prod *= psd.value(spec.plus[i])?;
        }
        total += prod;
    }
    Ok(Complex64::new(total, 0.0))
}

/// All partitions of `items` into nonempty blocks.
fn partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let rest = &items[1..];
    let mut out = Vec::new();
    for sub in partitions(rest) {
        // first joins an existing block
        for i in 0..sub.len() {
            let mut p = sub.clone();
            p[i].insert(0, first);
            out.push(p);
        }
        // first opens its own block
        let mut p = sub;
        p.insert(0, vec![first]);
        out.push(p);
    }
    out
}

fn is_balanced_block(block: &[usize], half: usize) -> bool {
    let plus = block.iter().filter(|&&p| p < half).count();
    2 * plus == block.len()
}

fn check_positions(positions: &[usize]) -> Result<()> {
    let n = positions.len();
    if n == 0 || n % 2 != 0 || n > 6 {
        return Err(Error::UnsupportedOrder(n));
    }
    Ok(())
}

/// Moment of the index tuple at `positions` from its joint cumulants.
/// Positions `< half` are unconjugated. Blocks with uneven conjugation are
/// skipped (their cumulants vanish for the phase-invariant ensembles in
/// scope), so `kappa` is only ever queried on balanced blocks.
pub fn cumulants_to_moment(
    positions: &[usize],
    half: usize,
    kappa: &dyn Fn(&[usize]) -> Complex64,
) -> Result<Complex64> {
    check_positions(positions)?;
    let mut total = Complex64::ZERO;
    'parts: for p in partitions(positions) {
        let mut prod = Complex64::new(1.0, 0.0);
        for block in &p {
            if !is_balanced_block(block, half) {
                continue 'parts;
            }
            prod *= kappa(block);
        }
        total += prod;
    }
    Ok(total)
}

/// Joint cumulant of the index tuple at `positions` from its moments:
/// `Σ_p (−1)^{|p|−1}(|p|−1)! Π μ_b`, with the same balance rule.
pub fn moments_to_cumulant(
    positions: &[usize],
    half: usize,
    mu: &dyn Fn(&[usize]) -> Complex64,
) -> Result<Complex64> {
    check_positions(positions)?;
    let mut total = Complex64::ZERO;
    'parts: for p in partitions(positions) {
        let mut prod = Complex64::new(1.0, 0.0);
        for block in &p {
            if !is_balanced_block(block, half) {
                continue 'parts;
            }
            prod *= mu(block);
        }
        let blocks = p.len() as i32;
        let mut coeff = if blocks % 2 == 1 { 1.0 } else { -1.0 };
        for i in 1..blocks {
            coeff *= i as f64;
        }
        total += coeff * prod;
    }
    Ok(total)
}

/// Absolute moments `E|a|²`, `E|a|⁴`, `E|a|⁶` of a symbol distribution.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SymbolMoments {
    pub e2: f64,
    pub e4: f64,
    pub e6: f64,
}

impl SymbolMoments {
    /// Circular complex Gaussian with `E|a|² = p`.
    pub fn gaussian(p: f64) -> Self {
        Self { e2: p, e4: 2.0 * p * p, e6: 6.0 * p * p * p }
    }

    /// Constant-modulus symbols with `|a|² = p`.
    pub fn constant_modulus(p: f64) -> Self {
        Self { e2: p, e4: p * p, e6: p * p * p }
    }
}

/// Per-mode cumulant densities of an i.i.d. symbol stream.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CumulantDensitySet {
    /// `S̃₂ = E|a|²`.
    pub s2: f64,
    /// `S̃₄ = E|a|⁴ − 2E²|a|²`.
    pub s4: f64,
    /// `S̃₆ = E|a|⁶ − 9E|a|²E|a|⁴ + 12E³|a|²` (partition formula; vanishes
    /// for Gaussian symbols).
    pub s6: f64,
    /// The printed sixth-order expression `E|a|⁶ + 9E|a|²E|a|⁴ − 12E³|a|²`
    /// found in circulation; kept for comparison, not used in models.
    pub printed_s6: f64,
    /// Whether the printed expression agrees with the partition formula for
    /// these moments (it generally does not; for Gaussian symbols it fails
    /// Gaussian nullity).
    pub printed_matches: bool,
}

/// Cumulant densities up to order 6 for i.i.d. symbols, from the partition
/// formula. Rejects moment triples violating the Cauchy-Schwarz chain
/// `E|a|⁴ ≥ E²|a|²`, `E|a|²·E|a|⁶ ≥ E²|a|⁴`.
pub fn iid_cumulant_densities(m: &SymbolMoments) -> Result<CumulantDensitySet> {
    if !(m.e2 >= 0.0 && m.e4 >= 0.0 && m.e6 >= 0.0) {
        return Err(Error::InconsistentMoments("absolute moments must be >= 0".into()));
    }
    let tol = 1e-12;
    if m.e4 < m.e2 * m.e2 * (1.0 - tol) {
        return Err(Error::InconsistentMoments(format!(
            "E|a|⁴ = {} < E²|a|² = {}",
            m.e4,
            m.e2 * m.e2
        )));
    }
    if m.e2 * m.e6 < m.e4 * m.e4 * (1.0 - tol) {
        return Err(Error::InconsistentMoments(format!(
            "E|a|²·E|a|⁶ = {} < E²|a|⁴ = {}",
            m.e2 * m.e6,
            m.e4 * m.e4
        )));
    }
    let s4 = m.e4 - 2.0 * m.e2 * m.e2;
    let s6 = m.e6 - 9.0 * m.e2 * m.e4 + 12.0 * m.e2.powi(3);
    let printed_s6 = m.e6 + 9.0 * m.e2 * m.e4 - 12.0 * m.e2.powi(3);
    let scale = m.e6.abs().max(m.e2.abs().powi(3)).max(1e-300);
    Ok(CumulantDensitySet {
        s2: m.e2,
        s4,
        s6,
        printed_s6,
        printed_matches: (s6 - printed_s6).abs() <= 1e-12 * scale,
    })
}

/// Empirical average of the conjugation-signed product over `realizations`
/// draws, with its standard error (combined over the real and imaginary
/// parts). Deterministic given the seed.
pub fn estimate_moment_mc(
    sampler: &dyn SpectrumSampler,
    spec: &MomentSpec,
    realizations: usize,
    seed: u64,
) -> Result<(Complex64, f64)> {
    if realizations < 2 {
        return Err(Error::Config("need at least 2 realizations".into()));
    }
    let grid = sampler.grid();
    for &k in spec.plus.iter().chain(&spec.minus) {
        if !grid.contains_mode(k) {
            return Err(Error::OutOfBand { k, bound: grid.max_mode() as i64 });
        }
    }
    let mut sum = Complex64::ZERO;
    let mut sum_re2 = 0.0;
    let mut sum_im2 = 0.0;
    for index in 0..realizations {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let s = sampler.sample(&mut rng);
        let mut prod = Complex64::new(1.0, 0.0);
        for &k in &spec.plus {
            prod *= s.coeff(k as i32);
        }
        for &k in &spec.minus {
            prod *= s.coeff(k as i32).conj();
        }
        sum += prod;
        sum_re2 += prod.re * prod.re;
        sum_im2 += prod.im * prod.im;
    }
    let r = realizations as f64;
    let mean = sum / r;
    let var = ((sum_re2 / r - mean.re * mean.re) + (sum_im2 / r - mean.im * mean.im)).max(0.0)
        * r
        / (r - 1.0);
    Ok((mean, (var / r).sqrt()))
}

/// Normalized magnitudes of the estimated 4th- and 6th-order diagonal
/// cumulant densities of a spectrum ensemble, with batch-means errors.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct QuasiGaussianReport {
    /// `Σ_k |κ₄(k)| / Σ_k S_k²` averaged over batches.
    pub s4_norm: f64,
    pub s4_stderr: f64,
    /// `Σ_k |κ₆(k)| / Σ_k S_k³` averaged over batches.
    pub s6_norm: f64,
    pub s6_stderr: f64,
}

/// Estimates how far an ensemble deviates from circular Gaussian
/// statistics via the per-mode diagonal cumulants
/// `κ₄ = m₄ − 2m₂²` and `κ₆ = m₆ − 9m₂m₄ + 12m₂³`.
pub fn quasi_gaussian_deviation(samples: &[Spectrum], batches: usize) -> Result<QuasiGaussianReport> {
    if samples.len() < 2 * batches || batches < 2 {
        return Err(Error::Config(format!(
            "need at least {} samples for {batches} batches",
            2 * batches
        )));
    }
    let n = samples[0].grid().sample_count();
    let per = samples.len() / batches;
    let mut s4_vals = Vec::with_capacity(batches);
    let mut s6_vals = Vec::with_capacity(batches);
    for b in 0..batches {
        let chunk = &samples[b * per..(b + 1) * per];
        let r = chunk.len() as f64;
        let mut m2 = vec![0.0; n];
        let mut m4 = vec![0.0; n];
        let mut m6 = vec![0.0; n];
        for s in chunk {
            for (i, c) in s.coeffs().iter().enumerate() {
                let p = c.norm_sqr();
                m2[i] += p;
                m4[i] += p * p;
                m6[i] += p * p * p;
            }
        }
        let mut num4 = 0.0;
        let mut den4 = 0.0;
        let mut num6 = 0.0;
        let mut den6 = 0.0;
        for i in 0..n {
            let (a2, a4, a6) = (m2[i] / r, m4[i] / r, m6[i] / r);
            num4 += (a4 - 2.0 * a2 * a2).abs();
            den4 += a2 * a2;
            num6 += (a6 - 9.0 * a2 * a4 + 12.0 * a2.powi(3)).abs();
            den6 += a2.powi(3);
        }
        s4_vals.push(num4 / den4.max(1e-300));
        s6_vals.push(num6 / den6.max(1e-300));
    }
    let mean_std = |v: &[f64]| {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64;
        (m, (var / v.len() as f64).sqrt())
    };
    let (s4_norm, s4_stderr) = mean_std(&s4_vals);
    let (s6_norm, s6_stderr) = mean_std(&s6_vals);
    Ok(QuasiGaussianReport { s4_norm, s4_stderr, s6_norm, s6_stderr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::{GaussianProcess, UniformPhase};
    use crate::spectral::TimeGrid;
    use approx::assert_relative_eq;
    use std::collections::HashMap;

    fn grid8() -> TimeGrid {
        TimeGrid::new(8.0, 8).unwrap()
    }

    fn psd_with(vals: &[(i64, f64)]) -> Psd {
        Psd::from_modes(grid8(), |k| {
            vals.iter().find(|(i, _)| *i == k as i64).map_or(0.0, |(_, v)| *v)
        })
        .unwrap()
    }

    #[test]
    fn wick_examples() {
        let psd = psd_with(&[(1, 2.0), (2, 3.0)]);
        // E q₁q₂q₁*q₂* = S₁S₂ (one surviving pairing)
        let m = wick_moment(&psd, &MomentSpec::new(vec![1, 2], vec![1, 2])).unwrap();
        assert_relative_eq!(m.re, 6.0);
        // E|q₁|⁴ = 2S₁² (two pairings)
        let m = wick_moment(&psd, &MomentSpec::new(vec![1, 1], vec![1, 1])).unwrap();
        assert_relative_eq!(m.re, 8.0);
        // off-manifold: no pairing matches
        let m = wick_moment(&psd, &MomentSpec::new(vec![1, 2], vec![1, 3])).unwrap();
        assert_eq!(m, Complex64::ZERO);
        // asymmetric specs vanish by convention
        let m = wick_moment(&psd, &MomentSpec::new(vec![1, 2], vec![1])).unwrap();
        assert_eq!(m, Complex64::ZERO);
        // order 8 unsupported
        assert!(matches!(
            wick_moment(&psd, &MomentSpec::new(vec![1; 4], vec![1; 4])),
            Err(Error::UnsupportedOrder(8))
        ));
    }

    #[test]
    fn wick_six_point_counts_all_pairings() {
        let psd = psd_with(&[(0, 2.0)]);
        // E|q₀|⁶ = 3!·S³ = 48
        let m = wick_moment(&psd, &MomentSpec::new(vec![0, 0, 0], vec![0, 0, 0])).unwrap();
        assert_relative_eq!(m.re, 48.0);
    }

    #[test]
    fn cumulant_expansion_matches_printed_order_four() {
        // μ₁₂₃₄ = κ₁₃κ₂₄ + κ₁₄κ₂₃ + κ₁₂₃₄ for zero-mean balanced statistics
        let kappa = |block: &[usize]| match block {
            [0, 2] => Complex64::new(2.0, 0.5),
            [0, 3] => Complex64::new(-1.0, 0.25),
            [1, 2] => Complex64::new(0.5, -1.0),
            [1, 3] => Complex64::new(3.0, 0.0),
            [0, 1, 2, 3] => Complex64::new(0.7, -0.2),
            _ => Complex64::ZERO,
        };
        let mu = cumulants_to_moment(&[0, 1, 2, 3], 2, &kappa).unwrap();
        let expect = kappa(&[0, 2]) * kappa(&[1, 3])
            + kappa(&[0, 3]) * kappa(&[1, 2])
            + kappa(&[0, 1, 2, 3]);
        assert!((mu - expect).norm() < 1e-14);
    }

    #[test]
    fn conversion_round_trip_is_identity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        // random cumulants on every balanced block of a 6-tuple
        let mut kappa: HashMap<Vec<usize>, Complex64> = HashMap::new();
        let all: Vec<usize> = (0..6).collect();
        for mask in 1u32..64 {
            let block: Vec<usize> = all.iter().copied().filter(|&i| mask & (1 << i) != 0).collect();
            if super::is_balanced_block(&block, 3) {
                kappa.insert(
                    block,
                    Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                );
            }
        }
        let kf = |b: &[usize]| kappa[&b.to_vec()];
        // moments for every balanced block, by the partition formula applied
        // within the block
        let mut mu: HashMap<Vec<usize>, Complex64> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = kappa.keys().cloned().collect();
        blocks.sort_by_key(|b| b.len());
        for b in &blocks {
            let v = cumulants_to_moment(b, 3, &kf).unwrap();
            mu.insert(b.clone(), v);
        }
        let mf = |b: &[usize]| mu[&b.to_vec()];
        // invert and compare
        for b in &blocks {
            let back = moments_to_cumulant(b, 3, &mf).unwrap();
            let orig = kappa[b];
            assert!((back - orig).norm() <= 1e-12 * orig.norm().max(1.0), "block {b:?}");
        }
    }

    #[test]
    fn gaussian_moments_have_analytically_zero_cumulants() {
        let psd = psd_with(&[(0, 1.3), (1, 0.7), (2, 2.0)]);
        // 4th and 6th cumulants of exactly-Wick moments vanish
        let tuples: [(Vec<i64>, Vec<i64>); 3] = [
            (vec![0, 1], vec![0, 1]),
            (vec![0, 0], vec![0, 0]),
            (vec![0, 1, 2], vec![0, 1, 2]),
        ];
        for (plus, minus) in tuples {
            let all: Vec<i64> = plus.iter().chain(&minus).copied().collect();
            let half = plus.len();
            let mu = |block: &[usize]| {
                let p: Vec<i64> =
                    block.iter().filter(|&&i| i < half).map(|&i| all[i]).collect();
                let m: Vec<i64> =
                    block.iter().filter(|&&i| i >= half).map(|&i| all[i]).collect();
                wick_moment(&psd, &MomentSpec::new(p, m)).unwrap()
            };
            let positions: Vec<usize> = (0..all.len()).collect();
            let kappa = moments_to_cumulant(&positions, half, &mu).unwrap();
            assert!(kappa.norm() < 1e-13, "tuple order {}: κ = {kappa}", all.len());
        }
    }

    #[test]
    fn iid_densities_examples() {
        // circular Gaussian: all higher densities vanish
        let g = iid_cumulant_densities(&SymbolMoments::gaussian(1.7)).unwrap();
        assert_relative_eq!(g.s2, 1.7);
        assert!(g.s4.abs() < 1e-12);
        assert!(g.s6.abs() < 1e-12);
        // the printed sixth-order expression does not vanish there: report it
        assert!(!g.printed_matches);
        assert_relative_eq!(g.printed_s6, 12.0 * 1.7f64.powi(3));
        // constant modulus: S̃₄ = −1 at unit power
        let c = iid_cumulant_densities(&SymbolMoments::constant_modulus(1.0)).unwrap();
        assert_relative_eq!(c.s4, -1.0);
        assert_relative_eq!(c.s6, 4.0);
        // inconsistent inputs rejected
        assert!(iid_cumulant_densities(&SymbolMoments { e2: 1.0, e4: 0.5, e6: 1.0 }).is_err());
        assert!(iid_cumulant_densities(&SymbolMoments { e2: 1.0, e4: 2.0, e6: 1.0 }).is_err());
    }

    #[test]
    fn mc_moment_matches_wick_for_gaussian_input() {
        let psd = psd_with(&[(0, 1.0), (1, 2.0), (2, 0.5), (-1, 1.5)]);
        let sampler = GaussianProcess::new(psd.clone());
        let spec = MomentSpec::new(vec![0, 1], vec![0, 1]);
        let (est, se) = estimate_moment_mc(&sampler, &spec, 40_000, 3).unwrap();
        let truth = wick_moment(&psd, &spec).unwrap();
        assert!((est - truth).norm() < 3.0 * se, "est {est} truth {truth} se {se}");
    }

    #[test]
    fn mc_moment_stationary_off_diagonal_vanishes() {
        let grid = grid8();
        let sampler = UniformPhase::new(grid, vec![1.0; 8]).unwrap();
        let spec = MomentSpec::new(vec![0], vec![2]);
        let (est, se) = estimate_moment_mc(&sampler, &spec, 30_000, 11).unwrap();
        assert!(est.norm() < 3.0 * se + 1e-12, "est {est} se {se}");
    }

    #[test]
    fn mc_stderr_scales_inverse_sqrt() {
        let psd = psd_with(&[(0, 1.0), (1, 2.0)]);
        let sampler = GaussianProcess::new(psd);
        let spec = MomentSpec::new(vec![0, 1], vec![0, 1]);
        let (_, se1) = estimate_moment_mc(&sampler, &spec, 4_000, 7).unwrap();
        let (_, se4) = estimate_moment_mc(&sampler, &spec, 16_000, 7).unwrap();
        let ratio = se1 / se4;
        assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
    }

    #[test]
    fn mc_moment_is_deterministic() {
        let psd = psd_with(&[(0, 1.0), (1, 2.0)]);
        let sampler = GaussianProcess::new(psd);
        let spec = MomentSpec::new(vec![0, 1], vec![1, 0]);
        let a = estimate_moment_mc(&sampler, &spec, 500, 9).unwrap();
        let b = estimate_moment_mc(&sampler, &spec, 500, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quasi_gaussian_flags_nothing_on_gaussian_ensembles() {
        use rand::SeedableRng;
        let psd = psd_with(&[(0, 1.0), (1, 2.0), (2, 0.5), (-1, 1.0), (-2, 0.25)]);
        let sampler = GaussianProcess::new(psd);
        let mut samples = Vec::new();
        for i in 0..4000 {
            let mut rng = ChaCha8Rng::seed_from_u64(100);
            rng.set_stream(i);
            samples.push(sampler.sample(&mut rng));
        }
        let rep = quasi_gaussian_deviation(&samples, 10).unwrap();
        assert!(rep.s4_norm < 3.0 * rep.s4_stderr + 0.05, "{rep:?}");
        assert!(rep.s6_norm < 3.0 * rep.s6_stderr + 0.3, "{rep:?}");
        let rep2 = quasi_gaussian_deviation(&samples, 10).unwrap();
        assert_eq!(rep.s4_norm, rep2.s4_norm);
    }

    #[test]
    fn canonicalize_sorts_groups() {
        let mut spec = MomentSpec::new(vec![3, 1], vec![2, -1]);
        spec.canonicalize();
        assert_eq!(spec.plus(), &[1, 3]);
        assert_eq!(spec.minus(), &[-1, 2]);
    }
}
