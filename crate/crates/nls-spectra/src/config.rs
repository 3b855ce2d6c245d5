//! Experiment configuration files for the command line front end.
//!
//! Configs are JSON with a strict schema (unknown fields are rejected so
//! typos surface as errors with line/column positions). All randomness is
//! funneled through the single `seed` field. Physical-unit link configs
//! carry the unit in the field name (`alpha_per_km`, `span_length_km`);
//! dimensionless configs use the plain names.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{DispersionSpec, LinkConfig, StepConfig};
use crate::psd::Psd;
use crate::sampler::{GaussianProcess, SpectrumSampler};
use crate::spectral::{Signal, TimeGrid};
use crate::stats::SymbolMoments;
use crate::wdm::{PulseBasis, SymbolDistribution, WdmConfig, WdmSampler};
use num_complex::Complex64;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Power-of-two sample count.
    pub sample_count: usize,
    /// Torus period; seconds in physical-unit runs, dimensionless otherwise.
    pub period: f64,
}

impl GridConfig {
    pub fn build(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.period, self.sample_count)
    }
}

fn default_sign() -> f64 {
    1.0
}

fn default_span_length() -> f64 {
    1.0
}

fn default_one() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LinkFileConfig {
    /// `j∂_z q = ∂_tt q + 2ε|q|²q`, optionally with loss and spans.
    Dimensionless {
        epsilon: f64,
        #[serde(default = "default_sign")]
        sign: f64,
        #[serde(default)]
        alpha: f64,
        #[serde(default = "default_span_length")]
        span_length: f64,
        #[serde(default = "default_one")]
        span_count: usize,
    },
    /// Fiber units: γ in 1/(W·km), α in 1/km, β Taylor coefficients in
    /// rad/km per (rad/s)^i, lengths in km.
    Physical {
        gamma_per_w_km: f64,
        alpha_per_km: f64,
        /// `β(ω) = Σ beta_coeffs[i]·ωⁱ/i!`
        beta_coeffs: Vec<f64>,
        span_length_km: f64,
        span_count: usize,
        #[serde(default)]
        gains: Option<Vec<f64>>,
    },
}

impl LinkFileConfig {
    pub fn build(&self) -> Result<LinkConfig> {
        let link = match self {
            LinkFileConfig::Dimensionless { epsilon, sign, alpha, span_length, span_count } => {
                LinkConfig {
                    dispersion: DispersionSpec::Quadratic,
                    alpha: *alpha,
                    nonlinear_coeff: 2.0 * epsilon,
                    sign: *sign,
                    span_length: *span_length,
                    span_count: *span_count,
                    gains: None,
                }
            }
            LinkFileConfig::Physical {
                gamma_per_w_km,
                alpha_per_km,
                beta_coeffs,
                span_length_km,
                span_count,
                gains,
            } => LinkConfig {
                dispersion: DispersionSpec::Polynomial(beta_coeffs.clone()),
                alpha: *alpha_per_km,
                nonlinear_coeff: *gamma_per_w_km,
                sign: 1.0,
                span_length: *span_length_km,
                span_count: *span_count,
                gains: gains.clone(),
            },
        };
        link.validate()?;
        Ok(link)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Tones,
    DelayedFlat,
    DelayedSmooth,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolsKind {
    Gaussian,
    ConstantModulus,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InputConfig {
    /// Zero-mean Gaussian process with
    /// `S⁰_k = amplitude_sq · e^{−width·ω₀²k²}`.
    GaussianProcess { amplitude_sq: f64, #[serde(default = "default_sign")] width: f64 },
    /// Deterministic pulse `A·e^{−t²/2}` centered in the window.
    GaussianPulse { amplitude: f64 },
    /// Multi-user WDM ensemble with i.i.d. symbols.
    Wdm {
        users: usize,
        modes_per_user: usize,
        basis: BasisKind,
        symbols: SymbolsKind,
        symbol_power: f64,
    },
}

impl InputConfig {
    /// Analytic input PSD, when the input is an ensemble.
    pub fn input_psd(&self, grid: TimeGrid) -> Result<Option<Psd>> {
        match self {
            InputConfig::GaussianProcess { amplitude_sq, width } => {
                let w0 = grid.omega0();
                let psd = Psd::from_modes(grid, |k| {
                    amplitude_sq * (-width * w0 * w0 * (k as f64) * (k as f64)).exp()
                })?;
                Ok(Some(psd))
            }
            InputConfig::GaussianPulse { .. } => Ok(None),
            InputConfig::Wdm { .. } => Ok(Some(self.wdm_config(grid)?.input_psd())),
        }
    }

    pub fn wdm_config(&self, grid: TimeGrid) -> Result<WdmConfig> {
        let InputConfig::Wdm { users, modes_per_user, basis, symbols, symbol_power } = self
        else {
            return Err(Error::Config("input is not a WDM ensemble".into()));
        };
        let basis = match basis {
            BasisKind::Tones => PulseBasis::tones(*modes_per_user, *modes_per_user)?,
            BasisKind::DelayedFlat => PulseBasis::delayed_flat(*modes_per_user)?,
            BasisKind::DelayedSmooth => PulseBasis::delayed_smooth(*modes_per_user)?,
        };
        let moments = match symbols {
            SymbolsKind::Gaussian => SymbolMoments::gaussian(*symbol_power),
            SymbolsKind::ConstantModulus => SymbolMoments::constant_modulus(*symbol_power),
        };
        WdmConfig::new(grid, *users, basis, moments)
    }

    pub fn sampler(&self, grid: TimeGrid) -> Result<Box<dyn SpectrumSampler>> {
        match self {
            InputConfig::GaussianProcess { .. } => {
                let s0 = self.input_psd(grid)?.expect("process input has a PSD");
                Ok(Box::new(GaussianProcess::new(s0)))
            }
            InputConfig::Wdm { symbols, symbol_power, .. } => {
                let cfg = self.wdm_config(grid)?;
                let dist = match symbols {
                    SymbolsKind::Gaussian => {
                        SymbolDistribution::CircularGaussian { power: *symbol_power }
                    }
                    SymbolsKind::ConstantModulus => {
                        SymbolDistribution::ConstantModulus { power: *symbol_power }
                    }
                };
                Ok(Box::new(WdmSampler::new(cfg, dist)))
            }
            InputConfig::GaussianPulse { .. } => {
                Err(Error::Config("a deterministic pulse has no sampling distribution".into()))
            }
        }
    }

    /// Deterministic input signal, when the input is a pulse.
    pub fn pulse_signal(&self, grid: TimeGrid) -> Result<Signal> {
        match self {
            InputConfig::GaussianPulse { amplitude } => {
                let a = *amplitude;
                Ok(Signal::from_pulse(grid, move |t| {
                    Complex64::new(a * (-t * t / 2.0).exp(), 0.0)
                }))
            }
            _ => Err(Error::Config("input is not a deterministic pulse".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepFileConfig {
    #[serde(default)]
    pub h: Option<f64>,
    #[serde(default = "default_phase_bound")]
    pub max_nonlinear_phase: f64,
    #[serde(default = "default_true")]
    pub auto_refine: bool,
}

fn default_phase_bound() -> f64 {
    0.05
}

fn default_true() -> bool {
    true
}

impl Default for StepFileConfig {
    fn default() -> Self {
        Self { h: None, max_nonlinear_phase: 0.05, auto_refine: true }
    }
}

impl StepFileConfig {
    pub fn build(&self) -> StepConfig {
        StepConfig {
            h: self.h.unwrap_or(f64::INFINITY),
            max_nonlinear_phase: self.max_nonlinear_phase,
            auto_refine: self.auto_refine,
        }
    }
}

fn default_realizations() -> usize {
    1000
}

fn default_span_sweep() -> Vec<usize> {
    vec![1, 2, 4, 8]
}

fn default_amplitudes() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

/// A full experiment description; one file drives any subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub grid: GridConfig,
    pub link: LinkFileConfig,
    pub input: InputConfig,
    /// Propagation / model distance (ignored by multi-span commands, which
    /// use the link's span structure).
    pub z: f64,
    pub seed: u64,
    #[serde(default = "default_realizations")]
    pub realizations: usize,
    #[serde(default)]
    pub step: StepFileConfig,
    /// Model coefficient ε; defaults to the link's γ/2.
    #[serde(default)]
    pub model_coeff: Option<f64>,
    /// Span counts swept by `multispan`.
    #[serde(default = "default_span_sweep")]
    pub span_sweep: Vec<usize>,
    /// Amplitudes swept by `perturb`.
    #[serde(default = "default_amplitudes")]
    pub amplitudes: Vec<f64>,
    /// Distances recorded by `modes`.
    #[serde(default)]
    pub z_samples: Vec<f64>,
    /// Mode indices tracked by `modes`.
    #[serde(default)]
    pub modes: Vec<i32>,
    /// User whose interference `wdm` reports; defaults to the center user.
    #[serde(default)]
    pub wdm_user: Option<i64>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("config schema violation: {e}")))
    }

    pub fn coeff(&self) -> Result<f64> {
        Ok(match self.model_coeff {
            Some(c) => c,
            None => self.link.build()?.epsilon(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_parses() {
        let text = r#"{
            "grid": {"sample_count": 64, "period": 64.0},
            "link": {"kind": "dimensionless", "epsilon": 1.0},
            "input": {"kind": "gaussian_process", "amplitude_sq": 0.05, "width": 1.0},
            "z": 1.0,
            "seed": 7
        }"#;
        let cfg = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(cfg.realizations, 1000);
        assert_eq!(cfg.coeff().unwrap(), 1.0);
        assert!(cfg.grid.build().is_ok());
        assert!(cfg.link.build().is_ok());
    }

    #[test]
    fn unknown_fields_are_rejected_with_position() {
        let text = r#"{
            "grid": {"sample_count": 64, "period": 64.0, "oops": 1},
            "link": {"kind": "dimensionless", "epsilon": 1.0},
            "input": {"kind": "gaussian_pulse", "amplitude": 0.5},
            "z": 1.0,
            "seed": 7
        }"#;
        let err = ExperimentConfig::from_json(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("oops"), "{msg}");
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn physical_link_builds() {
        let text = r#"{
            "grid": {"sample_count": 64, "period": 1e-9},
            "link": {"kind": "physical", "gamma_per_w_km": 1.3, "alpha_per_km": 0.046,
                     "beta_coeffs": [0.0, 0.0, -2.1e-26], "span_length_km": 80.0, "span_count": 10},
            "input": {"kind": "gaussian_process", "amplitude_sq": 1e-6, "width": 1.0},
            "z": 800.0,
            "seed": 1
        }"#;
        let cfg = ExperimentConfig::from_json(text).unwrap();
        let link = cfg.link.build().unwrap();
        assert_eq!(link.span_count, 10);
        assert_eq!(link.nonlinear_coeff, 1.3);
    }
}
