//! Plain-text key/value configuration for a full simulation run.
//!
//! The format is one `key = value` pair per line; `#` starts a comment and
//! blank lines are ignored. Every key is optional and falls back to the
//! built-in defaults; unknown keys are rejected so typos surface instead of
//! silently reverting to defaults.
//!
//! ```text
//! # sample geometry
//! layers = 0.012:0.30; 0.0002:0.20; 0.006:0.05   # thickness_m:reflectivity per layer
//! defect_layer_index = 1
//! hole_diameters_m = 0.003, 0.005, 0.007, 0.009, 0.011, 0.013
//! hole_centers_m = 0.007:0.012, 0.015:0.012, 0.025:0.012, 0.037:0.012, 0.051:0.012, 0.067:0.012
//! hole_interface_reflectivity = 0.6
//! platform_reflectivity = 0.8
//! standoff_m = 0.025
//! scan_step_m = 0.001
//! grid_nx = 80
//! grid_ny = 25
//! beam_waist_m = 0.0
//! clutter_count = 3
//! clutter_reflectivity_max = 0.05
//! clutter_seed = 7
//! # sweep
//! sweep_period_s = 240e-6
//! freq_span_hz = 90e9
//! band_start_hz = 0.23e12
//! band_end_hz = 0.32e12
//! n_time_samples = 1024
//! propagation_speed_mps = 299792458
//! # demodulation
//! n_depth_bins = 512
//! max_depth_m = 0.05
//! window = hann
//! # interference fringe
//! intensity_i1 = 1.0
//! intensity_i2 = 1.0
//! visibility = 1.0
//! initial_phase_rad = 0.0
//! ```

use crate::error::{Error, Result};
use crate::fmcw::{DemodConfig, InterferenceParams, SweepConfig, WindowKind};
use crate::phantom::{LayerSpec, PhantomSpec};

/// Everything a simulation run needs: sample, sweep, demodulation, fringe.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub phantom: PhantomSpec,
    pub sweep: SweepConfig,
    pub demod: DemodConfig,
    pub interference: InterferenceParams,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        let sweep = SweepConfig::default();
        Self {
            phantom: PhantomSpec::default(),
            interference: InterferenceParams::balanced(&sweep),
            demod: DemodConfig::default(),
            sweep,
        }
    }
}

/// Parse and validate a configuration text.
pub fn parse_simulation_config(text: &str) -> Result<SimulationConfig> {
    let mut phantom = PhantomSpec::default();
    let mut sweep = SweepConfig::default();
    let mut demod = DemodConfig::default();
    let (mut i1, mut i2, mut visibility, mut phase) = (1.0, 1.0, 1.0, 0.0);

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::format(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();

        match key {
            "layers" => phantom.layer_stack = parse_layers(value)?,
            "defect_layer_index" => phantom.defect_layer_index = parse_usize(key, value)?,
            "hole_diameters_m" => phantom.hole_diameters_m = parse_f64_list(key, value)?,
            "hole_centers_m" => phantom.hole_centers_xy_m = parse_pair_list(key, value)?,
            "hole_interface_reflectivity" => {
                phantom.hole_interface_reflectivity = parse_f64(key, value)?
            }
            "platform_reflectivity" => phantom.platform_reflectivity = parse_f64(key, value)?,
            "standoff_m" => phantom.standoff_m = parse_f64(key, value)?,
            "scan_step_m" => phantom.scan_step_m = parse_f64(key, value)?,
            "grid_nx" => phantom.grid_nx = parse_usize(key, value)?,
            "grid_ny" => phantom.grid_ny = parse_usize(key, value)?,
            "beam_waist_m" => phantom.beam_waist_m = parse_f64(key, value)?,
            "clutter_count" => phantom.clutter_count = parse_usize(key, value)?,
            "clutter_reflectivity_max" => {
                phantom.clutter_reflectivity_max = parse_f64(key, value)?
            }
            "clutter_seed" => phantom.clutter_seed = parse_u64(key, value)?,
            "sweep_period_s" => sweep.sweep_period_s = parse_f64(key, value)?,
            "freq_span_hz" => sweep.freq_span_hz = parse_f64(key, value)?,
            "band_start_hz" => sweep.band_start_hz = parse_f64(key, value)?,
            "band_end_hz" => sweep.band_end_hz = parse_f64(key, value)?,
            "n_time_samples" => sweep.n_time_samples = parse_usize(key, value)?,
            "propagation_speed_mps" => sweep.propagation_speed_mps = parse_f64(key, value)?,
            "n_depth_bins" => demod.n_depth_bins = parse_usize(key, value)?,
            "max_depth_m" => demod.max_depth_m = parse_f64(key, value)?,
            "window" => {
                demod.window = match value {
                    "hann" => WindowKind::Hann,
                    "rect" | "rectangular" => WindowKind::Rectangular,
                    other => {
                        return Err(Error::format(format!(
                            "window must be `hann` or `rect`, got `{other}`"
                        )))
                    }
                }
            }
            "intensity_i1" => i1 = parse_f64(key, value)?,
            "intensity_i2" => i2 = parse_f64(key, value)?,
            "visibility" => visibility = parse_f64(key, value)?,
            "initial_phase_rad" => phase = parse_f64(key, value)?,
            other => {
                return Err(Error::format(format!(
                    "line {}: unknown config key `{other}`",
                    lineno + 1
                )))
            }
        }
    }

    sweep.validate()?;
    demod.validate(&sweep)?;
    phantom.validate()?;
    let interference = InterferenceParams::new(i1, i2, visibility, phase, &sweep)?;

    Ok(SimulationConfig {
        phantom,
        sweep,
        demod,
        interference,
    })
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse()
        .map_err(|_| Error::format(format!("{key}: `{value}` is not a number")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| Error::format(format!("{key}: `{value}` is not a nonnegative integer")))
}

fn parse_u64(key: &str, value: &str) -> Result<u64> {
    value
        .parse()
        .map_err(|_| Error::format(format!("{key}: `{value}` is not a nonnegative integer")))
}

fn parse_f64_list(key: &str, value: &str) -> Result<Vec<f64>> {
    if value.is_empty() {
        return Ok(vec![]);
    }
    value
        .split(',')
        .map(|item| parse_f64(key, item.trim()))
        .collect()
}

fn parse_pair_list(key: &str, value: &str) -> Result<Vec<(f64, f64)>> {
    if value.is_empty() {
        return Ok(vec![]);
    }
    value
        .split(',')
        .map(|item| {
            let (a, b) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::format(format!("{key}: expected `x:y`, got `{item}`")))?;
            Ok((parse_f64(key, a.trim())?, parse_f64(key, b.trim())?))
        })
        .collect()
}

fn parse_layers(value: &str) -> Result<Vec<LayerSpec>> {
    value
        .split(';')
        .map(|item| {
            let (t, r) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| {
                    Error::format(format!("layers: expected `thickness:reflectivity`, got `{item}`"))
                })?;
            Ok(LayerSpec {
                thickness_m: parse_f64("layers", t.trim())?,
                top_interface_reflectivity: parse_f64("layers", r.trim())?,
            })
        })
        .collect()
}
