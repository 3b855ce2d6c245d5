//! Interference power spectra for signals governed by the cubic nonlinear
//! Schrödinger equation.
//!
//! The crate computes two analytic per-mode power spectral densities for a
//! randomly modulated envelope after nonlinear propagation:
//!
//! * the first-order perturbation PSD (the *GN model*), obtained by squaring
//!   the first-order signal and closing the moment hierarchy with perfectly
//!   Gaussian statistics, and
//! * the wave-turbulence kinetic-equation PSD (the *KZ model*), obtained by
//!   solving the cumulant hierarchy of the same equation to second order in
//!   the nonlinearity.
//!
//! Both are validated against a split-step pseudospectral Monte-Carlo oracle
//! ([`oracle`]). Supporting machinery covers quartet classification and
//! resonance enumeration ([`quartets`]), spectral moments and cumulants
//! ([`stats`]), WDM multi-user inputs ([`wdm`]) and lossy multi-span links
//! with lumped amplification ([`psd`], [`oracle`]).
//!
//! Everything is deterministic: Monte-Carlo estimators take an explicit seed
//! and produce bit-identical results regardless of the worker-thread count.
//!
//! See the crate examples for end-to-end tours of each capability, or the
//! `nls-spectra` binary for the config-driven command line front end.

pub mod cli;
pub mod config;
pub mod error;
pub mod oracle;
pub mod perturbation;
pub mod psd;
pub mod quartets;
pub mod sampler;
pub mod spectral;
pub mod stats;
pub mod wdm;

pub use error::{Error, Result};
pub use spectral::{Signal, Spectrum, TimeGrid};
