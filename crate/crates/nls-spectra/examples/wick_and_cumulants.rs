//! Spectral moments, the Wick decomposition, cumulant conversions and the
//! Monte-Carlo estimators behind the quasi-Gaussian closure.
//!
//! ```bash
//! cargo run --example wick_and_cumulants
//! ```

use nls_spectra::psd::Psd;
use nls_spectra::sampler::{GaussianProcess, SpectrumSampler, UniformPhase};
use nls_spectra::spectral::TimeGrid;
use nls_spectra::stats::{
    estimate_moment_mc, iid_cumulant_densities, moments_to_cumulant, quasi_gaussian_deviation,
    wick_moment, MomentSpec, SymbolMoments,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let grid = TimeGrid::new(8.0, 8).unwrap();
    let psd = Psd::from_modes(grid, |k| match k {
        1 => 2.0,
        2 => 3.0,
        _ => 1.0,
    })
    .unwrap();

    // Wick values vs sampled Gaussian ensembles
    let sampler = GaussianProcess::new(psd.clone());
    for (plus, minus, label) in [
        (vec![1, 2], vec![1, 2], "E q₁q₂q₁*q₂*"),
        (vec![1, 1], vec![1, 1], "E |q₁|⁴"),
        (vec![1, 2, 0], vec![1, 2, 0], "E q₁q₂q₀q₁*q₂*q₀*"),
    ] {
        let spec = MomentSpec::new(plus, minus);
        let truth = wick_moment(&psd, &spec).unwrap();
        let (est, se) = estimate_moment_mc(&sampler, &spec, 50_000, 7).unwrap();
        println!("{label}: Wick {:.4}, sampled {:.4} ± {:.4}", truth.re, est.re, se);
    }

    // stationary inputs decorrelate distinct modes
    let stationary = UniformPhase::new(grid, vec![1.0; 8]).unwrap();
    let (offdiag, se) =
        estimate_moment_mc(&stationary, &MomentSpec::new(vec![0], vec![2]), 50_000, 8).unwrap();
    println!("\nstationary input, E q₀q₂*: {:.5} ± {se:.5} (supported on the diagonal only)", offdiag.norm());

    // cumulants from moments: Gaussian nullity is analytic
    let mu = |block: &[usize]| {
        let all = [1i64, 2, 0, 1, 2, 0];
        let plus: Vec<i64> = block.iter().filter(|&&i| i < 3).map(|&i| all[i]).collect();
        let minus: Vec<i64> = block.iter().filter(|&&i| i >= 3).map(|&i| all[i]).collect();
        wick_moment(&psd, &MomentSpec::new(plus, minus)).unwrap()
    };
    let k4 = moments_to_cumulant(&[0, 1, 3, 4], 3, &mu).unwrap();
    let k6 = moments_to_cumulant(&[0, 1, 2, 3, 4, 5], 3, &mu).unwrap();
    println!("\npartition-formula cumulants of exactly-Wick moments: κ₄ = {:.2e}, κ₆ = {:.2e}", k4.norm(), k6.norm());

    // i.i.d. symbol densities: the partition formula vs the printed form
    for (m, label) in [
        (SymbolMoments::gaussian(1.0), "circular Gaussian"),
        (SymbolMoments::constant_modulus(1.0), "constant modulus"),
    ] {
        let d = iid_cumulant_densities(&m).unwrap();
        println!(
            "{label}: S̃₂ = {}, S̃₄ = {}, S̃₆ = {} (printed sixth-order form gives {}, matches: {})",
            d.s2, d.s4, d.s6, d.printed_s6, d.printed_matches
        );
    }

    // ensemble-level deviation monitor
    let mut samples = Vec::new();
    for i in 0..2000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        rng.set_stream(i);
        samples.push(sampler.sample(&mut rng));
    }
    let rep = quasi_gaussian_deviation(&samples, 10).unwrap();
    println!(
        "\nGaussian ensemble deviation monitor: |S̃₄|-summary {:.3} ± {:.3}, |S̃₆|-summary {:.3} ± {:.3}",
        rep.s4_norm, rep.s4_stderr, rep.s6_norm, rep.s6_stderr
    );
}
