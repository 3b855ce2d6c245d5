//! The headline comparison: GN and KZ analytic spectra against the
//! split-step Monte-Carlo oracle for a Gaussian-process input.
//!
//! ```bash
//! cargo run --release --example gn_vs_kz
//! ```

use nls_spectra::oracle::{estimate_psd_mc, propagate, LinkConfig, StepConfig};
use nls_spectra::psd::{delta_s, gn_psd, kz_psd, Psd};
use nls_spectra::sampler::{GaussianProcess, SpectrumSampler};
use nls_spectra::spectral::{hamiltonian, TimeGrid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 256usize;
    let grid = TimeGrid::new(n as f64, n).unwrap();
    let w0 = grid.omega0();
    // Gaussian input spectrum; amplitude puts the run in the visibly
    // nonlinear regime (measured a(1) ≈ 4.3)
    let s0 = Psd::from_modes(grid, |k| 0.06 * (-(w0 * w0) * (k as f64).powi(2)).exp()).unwrap();
    let sampler = GaussianProcess::new(s0.clone());
    let link = LinkConfig::dimensionless(1.0);
    let step = StepConfig::default();

    let realizations = 600;
    println!("propagating {realizations} realizations at N = {n}, z = 1 …");
    let est = estimate_psd_mc(&sampler, &link, 1.0, realizations, 44, &step).unwrap();

    let mut a_sum = 0.0;
    for i in 0..30u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(4444);
        rng.set_stream(i);
        let out = propagate(&sampler.sample(&mut rng).to_signal(), &link, 1.0, &step).unwrap();
        a_sum += hamiltonian(&out).unwrap().ratio_a;
    }
    println!("measured nonlinearity ratio a(1) ≈ {:.3}", a_sum / 30.0);

    let gn = gn_psd(&s0, 1.0, 1.0);
    let kz = kz_psd(&s0, 1.0, 1.0);
    let ds = delta_s(&s0, 1.0, 1.0);

    println!("\n   k      S⁰          GN          KZ          MC (±σ)");
    for k in (-120..=120).step_by(24) {
        let i = (k + n as i64 / 2) as usize;
        println!(
            "{k:5}  {:.4e}  {:.4e}  {:.4e}  {:.4e} ({:.1e})",
            s0.values()[i],
            s0.values()[i] + gn.correction[i],
            s0.values()[i] + kz.correction[i],
            est.psd.values()[i],
            est.stderr[i]
        );
    }

    let mut l2_gn = 0.0;
    let mut l2_kz = 0.0;
    for i in 0..n {
        l2_gn += (s0.values()[i] + gn.correction[i] - est.psd.values()[i]).powi(2);
        l2_kz += (s0.values()[i] + kz.correction[i] - est.psd.values()[i]).powi(2);
    }
    println!("\n‖GN − MC‖₂ = {:.4e}", l2_gn.sqrt());
    println!("‖KZ − MC‖₂ = {:.4e}", l2_kz.sqrt());

    println!("\nenergy bookkeeping:");
    println!("  input            {:.6}", s0.total());
    println!("  GN total         {:.6} (adds energy)", s0.total() + gn.correction.iter().sum::<f64>());
    println!("  KZ total         {:.6} (preserves it)", s0.total() + kz.correction.iter().sum::<f64>());
    println!("  simulated        {:.6}", est.psd.total());
    let worst_gap = ds
        .definitional
        .iter()
        .zip(&ds.simplified)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!(
        "\nΔS diagnostic: the simplified single-product form deviates from the exact\n\
         difference by up to {worst_gap:.3e} per mode on this input"
    );
}
