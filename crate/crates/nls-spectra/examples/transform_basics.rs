//! Grids, the transform pair, Parseval bookkeeping and the Hamiltonian
//! split.
//!
//! ```bash
//! cargo run --example transform_basics
//! ```

use nls_spectra::spectral::{forward_transform, hamiltonian, inverse_transform, power, Signal, TimeGrid};
use num_complex::Complex64;

fn main() {
    let grid = TimeGrid::new(32.0, 256).unwrap();
    println!(
        "grid: T = {}, N = {}, dt = {}, ω₀ = {:.6}",
        grid.period(),
        grid.sample_count(),
        grid.dt(),
        grid.omega0()
    );

    // the +jωt convention: e^{−jω₀t} lands on mode +1
    let w0 = grid.omega0();
    let tone = Signal::from_fn(grid, |t| Complex64::from_polar(1.0, -w0 * t));
    let spec = forward_transform(&tone);
    println!(
        "single tone e^(−jω₀t): |q₊₁| = {:.6}, |q₋₁| = {:.2e}",
        spec.coeff(1).norm(),
        spec.coeff(-1).norm()
    );

    // Parseval: Σ|q_k|² equals the mean power
    let pulse = Signal::from_pulse(grid, |t| Complex64::new(2.0 * (-t * t / 2.0).exp(), 0.0));
    let spec = forward_transform(&pulse);
    println!(
        "Gaussian pulse A=2: mean power {:.9} (time) = {:.9} (modes)",
        pulse.mean_power(),
        power(&spec)
    );

    // transform round trip
    let back = inverse_transform(&spec);
    let err: f64 = pulse
        .samples()
        .iter()
        .zip(back.samples())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    println!("round-trip residual: {err:.2e}");

    // Hamiltonian split and the nonlinearity-strength ratio a = √2 A²
    for amp in [0.5, 1.0, 2.0] {
        let pulse = Signal::from_pulse(grid, move |t| {
            Complex64::new(amp * (-t * t / 2.0).exp(), 0.0)
        });
        let h = hamiltonian(&pulse).unwrap();
        println!(
            "A = {amp}: linear {:.5}, nonlinear {:.5}, a = {:.4} (√2·A² = {:.4})",
            h.linear,
            h.nonlinear,
            h.ratio_a,
            std::f64::consts::SQRT_2 * amp * amp
        );
    }
}
