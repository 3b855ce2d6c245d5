//! Config-driven command line front end.
//!
//! Every subcommand except `quartets` reads one JSON [`ExperimentConfig`]
//! and writes CSV/JSON tables plus a gnuplot script into `--out`. Runs are
//! reproducible: the same config and seed produce byte-identical artifacts
//! regardless of the worker-thread count (set `RAYON_NUM_THREADS` to
//! override the default).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{ExperimentConfig, InputConfig};
use crate::error::{Error, Result};
use crate::oracle::{
    estimate_psd_mc, estimate_psd_mc_spans, mode_trajectory, propagate, propagate_spans,
};
use crate::perturbation::perturbation_error_curve;
use crate::psd::{delta_s, gn_psd, gn_psd_multispan, kz_psd, kz_psd_multispan, ModelKind, Psd};
use crate::quartets::{enumerate_resonant, is_trivial, write_csv as write_quartets_csv, DispersionRelation};
use crate::spectral::{forward_transform, Signal};
use crate::wdm::{corrected_psds, decompose_interference, xpm_energy_decomposition};
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "nls-spectra",
    about = "Analytic GN/KZ interference spectra for the cubic NLS equation, \
             with a split-step Monte-Carlo oracle",
    after_help = "Thread count: set RAYON_NUM_THREADS to override; outputs are \
                  byte-identical for any value."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct RunArgs {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate the configured input and tabulate the output spectrum
    /// (Monte-Carlo mean for ensembles, deterministic for pulses).
    Oracle(RunArgs),
    /// GN model PSD table.
    Gn(RunArgs),
    /// KZ model PSD table.
    Kz(RunArgs),
    /// GN vs KZ vs Monte-Carlo comparison with L2 summary.
    Compare(RunArgs),
    /// First-order perturbation error curve over pulse amplitudes.
    Perturb(RunArgs),
    /// Per-mode magnitude trajectories along the link.
    Modes(RunArgs),
    /// Enumerate resonant quartets of an integer dispersion relation.
    Quartets {
        /// Integer polynomial in k, e.g. "k^2" or "k^3+3k^2".
        #[arg(long)]
        zeta: String,
        /// Half-width K of the index box.
        #[arg(long = "box")]
        box_size: i64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// WDM interference report and cumulant-corrected PSDs.
    Wdm(RunArgs),
    /// Multi-span PSDs and span-count scaling of the coherent FWM growth.
    Multispan(RunArgs),
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/version through the error
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Oracle(a) => cmd_oracle(&load(&a)?, &a.out),
        Command::Gn(a) => cmd_model(&load(&a)?, &a.out, ModelKind::Gn),
        Command::Kz(a) => cmd_model(&load(&a)?, &a.out, ModelKind::Kz),
        Command::Compare(a) => cmd_compare(&load(&a)?, &a.out),
        Command::Perturb(a) => cmd_perturb(&load(&a)?, &a.out),
        Command::Modes(a) => cmd_modes(&load(&a)?, &a.out),
        Command::Quartets { zeta, box_size, out } => cmd_quartets(&zeta, box_size, &out),
        Command::Wdm(a) => cmd_wdm(&load(&a)?, &a.out),
        Command::Multispan(a) => cmd_multispan(&load(&a)?, &a.out),
    }
}

fn load(args: &RunArgs) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(&args.config).map_err(|e| {
        Error::Config(format!("cannot read config {}: {e}", args.config.display()))
    })?;
    ExperimentConfig::from_json(&text)
}

fn ensure_dir(out: &Path) -> Result<()> {
    fs::create_dir_all(out)?;
    Ok(())
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn write_table(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    let mut text = String::with_capacity(rows.len() * 32 + header.len() + 1);
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("serialization: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn write_plot(path: &Path, lines: &[&str]) -> Result<()> {
    let mut text = String::from("# gnuplot script; run as: gnuplot <this file>\n");
    for l in lines {
        text.push_str(l);
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

/// `Σ_k |q_k(z)|²` table for the configured input.
fn cmd_oracle(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    ensure_dir(out)?;
    let grid = cfg.grid.build()?;
    let link = cfg.link.build()?;
    let step = cfg.step.build();

    let (s0_col, out_col, err_col): (Vec<f64>, Vec<f64>, Vec<f64>) =
        if let InputConfig::GaussianPulse { .. } = cfg.input {
            let signal = cfg.input.pulse_signal(grid)?;
            let in_spec = forward_transform(&signal);
            let propagated = if link.span_count > 1 {
                propagate_spans(&signal, &link, &step)?
            } else {
                propagate(&signal, &link, cfg.z, &step)?
            };
            let out_spec = forward_transform(&propagated);
            (
                in_spec.coeffs().iter().map(|c| c.norm_sqr()).collect(),
                out_spec.coeffs().iter().map(|c| c.norm_sqr()).collect(),
                vec![0.0; grid.sample_count()],
            )
        } else {
            let s0 = cfg.input.input_psd(grid)?.expect("ensemble input");
            let sampler = cfg.input.sampler(grid)?;
            let est = if link.span_count > 1 {
                estimate_psd_mc_spans(sampler.as_ref(), &link, cfg.realizations, cfg.seed, &step)?
            } else {
                estimate_psd_mc(sampler.as_ref(), &link, cfg.z, cfg.realizations, cfg.seed, &step)?
            };
            (s0.values().to_vec(), est.psd.values().to_vec(), est.stderr)
        };

    let rows: Vec<String> = grid
        .modes()
        .enumerate()
        .map(|(i, k)| format!("{k},{},{},{}", num(s0_col[i]), num(out_col[i]), num(err_col[i])))
        .collect();
    write_table(&out.join("oracle.csv"), "k,s0,s_out,stderr", &rows)?;
    println!("oracle: wrote {} modes to {}", rows.len(), out.join("oracle.csv").display());
    Ok(())
}

fn analytic_model(
    cfg: &ExperimentConfig,
    s0: &Psd,
    kind: ModelKind,
) -> Result<crate::psd::PsdModelOutput> {
    let grid = s0.grid();
    let link = cfg.link.build()?;
    let coeff = cfg.coeff()?;
    if let InputConfig::Wdm { .. } = cfg.input {
        return corrected_psds(&cfg.input.wdm_config(grid)?, cfg.z, coeff, kind);
    }
    if link.span_count > 1 || link.alpha > 0.0 {
        return match kind {
            ModelKind::Gn => gn_psd_multispan(s0, &link),
            ModelKind::Kz => kz_psd_multispan(s0, &link),
        };
    }
    Ok(match kind {
        ModelKind::Gn => gn_psd(s0, cfg.z, coeff),
        ModelKind::Kz => kz_psd(s0, cfg.z, coeff),
    })
}

fn cmd_model(cfg: &ExperimentConfig, out: &Path, kind: ModelKind) -> Result<()> {
    ensure_dir(out)?;
    let grid = cfg.grid.build()?;
    let s0 = cfg.input.input_psd(grid)?.ok_or_else(|| {
        Error::Config("model PSDs need an ensemble input (gaussian_process or wdm)".into())
    })?;
    let model = analytic_model(cfg, &s0, kind)?;
    let name = match kind {
        ModelKind::Gn => "gn",
        ModelKind::Kz => "kz",
    };
    let rows: Vec<String> = grid
        .modes()
        .enumerate()
        .map(|(i, k)| {
            format!(
                "{k},{},{},{}",
                num(s0.values()[i]),
                num(model.correction[i]),
                num(s0.values()[i] + model.correction[i])
            )
        })
        .collect();
    write_table(&out.join(format!("{name}.csv")), "k,s0,correction,total", &rows)?;
    println!("{name}: wrote {}", out.join(format!("{name}.csv")).display());
    Ok(())
}

#[derive(serde::Serialize)]
struct CompareSummary {
    realizations: usize,
    l2_gn_vs_mc: f64,
    l2_kz_vs_mc: f64,
    kz_closer: bool,
    energy_in: f64,
    energy_mc: f64,
    energy_gn: f64,
    energy_kz: f64,
}

fn cmd_compare(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    ensure_dir(out)?;
    let grid = cfg.grid.build()?;
    let link = cfg.link.build()?;
    let step = cfg.step.build();
    let s0 = cfg.input.input_psd(grid)?.ok_or_else(|| {
        Error::Config("compare needs an ensemble input (gaussian_process or wdm)".into())
    })?;
    let sampler = cfg.input.sampler(grid)?;
    let est = if link.span_count > 1 {
        estimate_psd_mc_spans(sampler.as_ref(), &link, cfg.realizations, cfg.seed, &step)?
    } else {
        estimate_psd_mc(sampler.as_ref(), &link, cfg.z, cfg.realizations, cfg.seed, &step)?
    };
    let gn = analytic_model(cfg, &s0, ModelKind::Gn)?;
    let kz = analytic_model(cfg, &s0, ModelKind::Kz)?;
    let ds: Vec<f64> = if link.span_count == 1 && link.alpha == 0.0 {
        delta_s(&s0, cfg.z, cfg.coeff()?).definitional
    } else {
        gn.correction.iter().zip(&kz.correction).map(|(a, b)| a - b).collect()
    };

    let mut l2_gn = 0.0;
    let mut l2_kz = 0.0;
    let rows: Vec<String> = grid
        .modes()
        .enumerate()
        .map(|(i, k)| {
            let s_gn = s0.values()[i] + gn.correction[i];
            let s_kz = s0.values()[i] + kz.correction[i];
            let s_mc = est.psd.values()[i];
            l2_gn += (s_gn - s_mc) * (s_gn - s_mc);
            l2_kz += (s_kz - s_mc) * (s_kz - s_mc);
            format!(
                "{k},{},{},{},{},{},{}",
                num(s0.values()[i]),
                num(s_gn),
                num(s_kz),
                num(ds[i]),
                num(s_mc),
                num(est.stderr[i])
            )
        })
        .collect();
    write_table(&out.join("compare.csv"), "k,s0,s_gn,s_kz,delta_s,s_mc,stderr_mc", &rows)?;

    let summary = CompareSummary {
        realizations: est.realizations,
        l2_gn_vs_mc: l2_gn.sqrt(),
        l2_kz_vs_mc: l2_kz.sqrt(),
        kz_closer: l2_kz < l2_gn,
        energy_in: s0.total(),
        energy_mc: est.psd.total(),
        energy_gn: s0.total() + gn.correction.iter().sum::<f64>(),
        energy_kz: s0.total() + kz.correction.iter().sum::<f64>(),
    };
    write_json(&out.join("summary.json"), &summary)?;
    write_plot(
        &out.join("plot.txt"),
        &[
            "set datafile separator ','",
            "set logscale y",
            "set xlabel 'mode k'",
            "set ylabel 'PSD'",
            "plot 'compare.csv' using 1:2 with lines title 'S0', \\",
            "     'compare.csv' using 1:3 with lines title 'GN', \\",
            "     'compare.csv' using 1:4 with lines title 'KZ', \\",
            "     'compare.csv' using 1:6 with points pt 7 ps 0.3 title 'MC'",
        ],
    )?;
    println!(
        "compare: ||GN-MC||₂ = {:.6e}, ||KZ-MC||₂ = {:.6e} ({} realizations)",
        summary.l2_gn_vs_mc, summary.l2_kz_vs_mc, est.realizations
    );
    Ok(())
}

fn cmd_perturb(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    ensure_dir(out)?;
    let grid = cfg.grid.build()?;
    let step = cfg.step.build();
    let eps = cfg.coeff()?;
    let points = perturbation_error_curve(
        grid,
        |amp| Signal::from_pulse(grid, move |t| Complex64::new(amp * (-t * t / 2.0).exp(), 0.0)),
        &cfg.amplitudes,
        cfg.z,
        eps,
        &step,
    )?;
    let rows: Vec<String> = points
        .iter()
        .map(|p| {
            format!("{},{},{},{}", num(p.amplitude), num(p.ratio_a), num(p.error), num(p.norm_ratio))
        })
        .collect();
    write_table(&out.join("perturb.csv"), "amplitude,a,e,norm_ratio", &rows)?;
    write_plot(
        &out.join("plot.txt"),
        &[
            "set datafile separator ','",
            "set xlabel 'nonlinearity ratio a'",
            "set ylabel 'relative error e'",
            "plot 'perturb.csv' using 2:3 with linespoints title 'e(a)'",
        ],
    )?;
    println!("perturb: {} amplitudes written", points.len());
    Ok(())
}

fn cmd_modes(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    ensure_dir(out)?;
    if cfg.z_samples.is_empty() || cfg.modes.is_empty() {
        return Err(Error::Config("modes needs non-empty z_samples and modes lists".into()));
    }
    let grid = cfg.grid.build()?;
    let link = cfg.link.build()?;
    let step = cfg.step.build();
    let signal = cfg.input.pulse_signal(grid)?;
    let table = mode_trajectory(&signal, &link, &cfg.z_samples, &cfg.modes, &step)?;
    let mut header = String::from("z");
    for k in &table.modes {
        let _ = write!(header, ",p_{k}");
    }
    let rows: Vec<String> = table
        .z
        .iter()
        .zip(&table.magnitudes)
        .map(|(z, row)| {
            let mut line = num(*z);
            for m in row {
                let _ = write!(line, ",{}", num(m * m));
            }
            line
        })
        .collect();
    write_table(&out.join("modes.csv"), &header, &rows)?;
    write_plot(
        &out.join("plot.txt"),
        &[
            "set datafile separator ','",
            "set xlabel 'z'",
            "set ylabel '|q_k|^2'",
            "plot for [col=2:*] 'modes.csv' using 1:col with lines title columnheader",
        ],
    )?;
    println!("modes: {} distances × {} modes", table.z.len(), table.modes.len());
    Ok(())
}

/// Parses an integer polynomial in `k`, e.g. `k^2`, `k^3+3k^2`, `-2k+5`.
pub fn parse_zeta(text: &str) -> Result<DispersionRelation> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Config("empty dispersion polynomial".into()));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut add = |pow: usize, c: i64| {
        if coeffs.len() <= pow {
            coeffs.resize(pow + 1, 0);
        }
        coeffs[pow] += c;
    };
    // split into signed terms
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in cleaned.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(cur.clone());
            cur.clear();
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let t = term.as_str();
        let bad = || Error::Config(format!("cannot parse dispersion term '{t}' in '{text}'"));
        let (coef_str, pow) = match t.find('k') {
            None => (t, 0usize),
            Some(pos) => {
                let after = &t[pos + 1..];
                let pow = if after.is_empty() {
                    1
                } else if let Some(p) = after.strip_prefix('^') {
                    p.parse::<usize>().map_err(|_| bad())?
                } else {
                    return Err(bad());
                };
                (&t[..pos], pow)
            }
        };
        let coef = match coef_str {
            "" | "+" => 1,
            "-" => -1,
            s => s.parse::<i64>().map_err(|_| bad())?,
        };
        add(pow, coef);
    }
    Ok(DispersionRelation::new(coeffs))
}

fn cmd_quartets(zeta_text: &str, box_size: i64, out: &Path) -> Result<()> {
    if let Some(dir) = out.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let zeta = parse_zeta(zeta_text)?;
    let quartets = enumerate_resonant(&zeta, box_size)?;
    let mut buf = Vec::new();
    write_quartets_csv(&quartets, &zeta, &mut buf)?;
    fs::write(out, buf)?;
    let nontrivial = quartets.iter().filter(|q| !is_trivial(q).unwrap_or(false)).count();
    println!(
        "quartets: {} resonant in |k| <= {box_size} ({} nontrivial) -> {}",
        quartets.len(),
        nontrivial,
        out.display()
    );
    Ok(())
}

#[derive(serde::Serialize)]
struct WdmArtifacts<'a> {
    user: i64,
    xpm_own_energy: f64,
    xpm_cross_energy: f64,
    gn: &'a crate::wdm::InterferenceReport,
    kz: &'a crate::wdm::InterferenceReport,
}

fn cmd_wdm(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    ensure_dir(out)?;
    let grid = cfg.grid.build()?;
    let wdm_cfg = cfg.input.wdm_config(grid)?;
    let coeff = cfg.coeff()?;
    let user = cfg.wdm_user.unwrap_or(0);

    let gn_rep = decompose_interference(&wdm_cfg, cfg.z, coeff, ModelKind::Gn, user)?;
    let kz_rep = decompose_interference(&wdm_cfg, cfg.z, coeff, ModelKind::Kz, user)?;

    // one symbol draw for the energy split; the analytic expectation is
    // pulse_count·symbol_power per user
    let wdm_sampler = {
        use crate::wdm::{SymbolDistribution, WdmSampler};
        let InputConfig::Wdm { symbols, symbol_power, .. } = &cfg.input else {
            return Err(Error::Config("wdm needs a wdm input".into()));
        };
        let dist = match symbols {
            crate::config::SymbolsKind::Gaussian => {
                SymbolDistribution::CircularGaussian { power: *symbol_power }
            }
            crate::config::SymbolsKind::ConstantModulus => {
                SymbolDistribution::ConstantModulus { power: *symbol_power }
            }
        };
        WdmSampler::new(wdm_cfg.clone(), dist)
    };
    let mut rng = {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed)
    };
    let symbols = wdm_sampler.draw_symbols(&mut rng);
    let (own, cross) = xpm_energy_decomposition(&wdm_cfg, &symbols, user)?;

    write_json(
        &out.join("interference_report.json"),
        &WdmArtifacts { user, xpm_own_energy: own, xpm_cross_energy: cross, gn: &gn_rep, kz: &kz_rep },
    )?;

    let gn = corrected_psds(&wdm_cfg, cfg.z, coeff, ModelKind::Gn)?;
    let kz = corrected_psds(&wdm_cfg, cfg.z, coeff, ModelKind::Kz)?;
    let s0 = wdm_cfg.input_psd();
    let rows: Vec<String> = grid
        .modes()
        .enumerate()
        .map(|(i, k)| {
            format!(
                "{k},{},{},{}",
                num(s0.values()[i]),
                num(s0.values()[i] + gn.correction[i]),
                num(s0.values()[i] + kz.correction[i])
            )
        })
        .collect();
    write_table(&out.join("wdm_psd.csv"), "k,s0,gn_corrected,kz_corrected", &rows)?;
    println!(
        "wdm: user {user} interference (GN) intra={:.4e} 1w={:.4e} 2w={:.4e} 3w={:.4e}",
        gn_rep.total_intra, gn_rep.total_one_wave, gn_rep.total_two_wave, gn_rep.total_three_wave
    );
    Ok(())
}

#[derive(serde::Serialize)]
struct MultispanSummary {
    span_sweep: Vec<usize>,
    gn_center_corrections: Vec<f64>,
    kz_center_corrections: Vec<f64>,
    /// Log-log slope of the GN center-mode correction vs span count.
    gn_scaling_slope: f64,
}

fn cmd_multispan(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    ensure_dir(out)?;
    let grid = cfg.grid.build()?;
    let base_link = cfg.link.build()?;
    let s0 = cfg.input.input_psd(grid)?.ok_or_else(|| {
        Error::Config("multispan needs an ensemble input (gaussian_process or wdm)".into())
    })?;

    let gn = gn_psd_multispan(&s0, &base_link)?;
    let kz = kz_psd_multispan(&s0, &base_link)?;
    let rows: Vec<String> = grid
        .modes()
        .enumerate()
        .map(|(i, k)| {
            format!(
                "{k},{},{},{}",
                num(s0.values()[i]),
                num(s0.values()[i] + gn.correction[i]),
                num(s0.values()[i] + kz.correction[i])
            )
        })
        .collect();
    write_table(&out.join("multispan.csv"), "k,s0,s_gn,s_kz", &rows)?;

    let center = grid.sample_count() / 2;
    let mut gn_c = Vec::new();
    let mut kz_c = Vec::new();
    for &nsp in &cfg.span_sweep {
        let mut link = base_link.clone();
        link.span_count = nsp;
        link.gains = None;
        gn_c.push(gn_psd_multispan(&s0, &link)?.correction[center]);
        kz_c.push(kz_psd_multispan(&s0, &link)?.correction[center]);
    }
    let sweep_rows: Vec<String> = cfg
        .span_sweep
        .iter()
        .zip(gn_c.iter().zip(&kz_c))
        .map(|(n, (g, k))| format!("{n},{},{}", num(*g), num(*k)))
        .collect();
    write_table(&out.join("sweep.csv"), "span_count,gn_center_correction,kz_center_correction", &sweep_rows)?;

    let slope = log_log_slope(&cfg.span_sweep, &gn_c);
    write_json(
        &out.join("summary.json"),
        &MultispanSummary {
            span_sweep: cfg.span_sweep.clone(),
            gn_center_corrections: gn_c,
            kz_center_corrections: kz_c,
            gn_scaling_slope: slope,
        },
    )?;
    println!("multispan: GN center-mode scaling slope {slope:.3}");
    Ok(())
}

fn log_log_slope(ns: &[usize], vals: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(vals)
        .filter(|(_, v)| **v > 0.0)
        .map(|(n, v)| ((*n as f64).ln(), v.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
