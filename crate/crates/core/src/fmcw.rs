//! FMCW interferometry model.
//!
//! A frequency-swept source interfering with its delayed echo produces a beat
//! tone whose frequency is proportional to the two-way optical path
//! difference. This module evaluates the interference fringe, maps beat
//! frequency to range and back, and synthesizes depth-resolved reflection
//! profiles (A-scans) for stacks of point reflectors.

use crate::error::{non_negative, positive, Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

/// Speed of light in vacuum (m/s).
pub const VACUUM_LIGHT_SPEED_MPS: f64 = 299_792_458.0;

// ---------------------------------------------------------------------------
// Configuration types
// ---------------------------------------------------------------------------

/// Parameters of one linear frequency sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Sweep period T_m in seconds.
    pub sweep_period_s: f64,
    /// Swept frequency span Δf in hertz (stored as ordinary frequency; the
    /// 2π lives in [`InterferenceParams::chirp_rate_rad_per_s2`]).
    pub freq_span_hz: f64,
    /// Lower edge of the swept band in hertz.
    pub band_start_hz: f64,
    /// Upper edge of the swept band in hertz.
    pub band_end_hz: f64,
    /// Number of beat-signal samples acquired per sweep.
    pub n_time_samples: usize,
    /// Effective propagation speed in the medium (m/s).
    pub propagation_speed_mps: f64,
}

impl Default for SweepConfig {
    /// Defaults match a 0.23–0.32 THz probe sweeping 90 GHz in 240 µs.
    fn default() -> Self {
        Self {
            sweep_period_s: 240e-6,
            freq_span_hz: 90e9,
            band_start_hz: 0.23e12,
            band_end_hz: 0.32e12,
            n_time_samples: 1024,
            propagation_speed_mps: VACUUM_LIGHT_SPEED_MPS,
        }
    }
}

impl SweepConfig {
    pub fn new(
        sweep_period_s: f64,
        freq_span_hz: f64,
        band_start_hz: f64,
        band_end_hz: f64,
        n_time_samples: usize,
        propagation_speed_mps: f64,
    ) -> Result<Self> {
        let cfg = Self {
            sweep_period_s,
            freq_span_hz,
            band_start_hz,
            band_end_hz,
            n_time_samples,
            propagation_speed_mps,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Check the construction invariants.
    pub fn validate(&self) -> Result<()> {
        if !positive(self.sweep_period_s) {
            return Err(Error::spec("sweep_period_s must be positive"));
        }
        if !positive(self.freq_span_hz) {
            return Err(Error::spec("freq_span_hz must be positive"));
        }
        if !positive(self.propagation_speed_mps) {
            return Err(Error::spec("propagation_speed_mps must be positive"));
        }
        let band = self.band_end_hz - self.band_start_hz;
        if ((band - self.freq_span_hz) / self.freq_span_hz).abs() > 1e-6 {
            return Err(Error::spec(
                "band_end_hz - band_start_hz must equal freq_span_hz (1e-6 relative)",
            ));
        }
        if self.n_time_samples < 2 {
            return Err(Error::spec("n_time_samples must be at least 2"));
        }
        Ok(())
    }

    /// Chirp rate α = 2π·Δf / T_m in rad/s².
    pub fn chirp_rate_rad_per_s2(&self) -> f64 {
        2.0 * PI * self.freq_span_hz / self.sweep_period_s
    }

    /// Band-start angular frequency ω₀ = 2π·band_start in rad/s.
    pub fn band_start_angular_hz(&self) -> f64 {
        2.0 * PI * self.band_start_hz
    }

    /// Beat-signal sample rate in Hz.
    pub fn sample_rate_hz(&self) -> f64 {
        self.n_time_samples as f64 / self.sweep_period_s
    }
}

/// Amplitudes and phase of the two-beam interference fringe.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceParams {
    /// Intensity of the reference beam (arbitrary units).
    pub i1: f64,
    /// Intensity of the delayed beam (arbitrary units).
    pub i2: f64,
    /// Fringe visibility V in [0, 1].
    pub visibility: f64,
    /// Extra instrument phase added on top of the geometric ω₀·ΔL/c term.
    pub initial_phase_rad: f64,
    /// Chirp rate α = 2π·Δf / T_m in rad/s².
    pub chirp_rate_rad_per_s2: f64,
}

impl InterferenceParams {
    pub fn new(
        i1: f64,
        i2: f64,
        visibility: f64,
        initial_phase_rad: f64,
        sweep: &SweepConfig,
    ) -> Result<Self> {
        let params = Self {
            i1,
            i2,
            visibility,
            initial_phase_rad,
            chirp_rate_rad_per_s2: sweep.chirp_rate_rad_per_s2(),
        };
        params.validate()?;
        Ok(params)
    }

    /// Unit-intensity, unit-visibility fringe for the given sweep.
    pub fn balanced(sweep: &SweepConfig) -> Self {
        Self {
            i1: 1.0,
            i2: 1.0,
            visibility: 1.0,
            initial_phase_rad: 0.0,
            chirp_rate_rad_per_s2: sweep.chirp_rate_rad_per_s2(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !non_negative(self.i1) || !non_negative(self.i2) {
            return Err(Error::spec("beam intensities must be nonnegative"));
        }
        if !(0.0..=1.0).contains(&self.visibility) {
            return Err(Error::spec("visibility must lie in [0, 1]"));
        }
        if !self.initial_phase_rad.is_finite() || !self.chirp_rate_rad_per_s2.is_finite() {
            return Err(Error::spec("phase and chirp rate must be finite"));
        }
        Ok(())
    }
}

/// One point reflector seen by the probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflector {
    /// Two-way optical path difference ΔL in meters.
    pub path_difference_m: f64,
    /// Dimensionless reflectivity, ≥ 0.
    pub reflectivity: f64,
}

impl Reflector {
    pub fn new(path_difference_m: f64, reflectivity: f64) -> Result<Self> {
        if !non_negative(path_difference_m) {
            return Err(Error::spec("path_difference_m must be nonnegative"));
        }
        if !non_negative(reflectivity) {
            return Err(Error::spec("reflectivity must be nonnegative"));
        }
        Ok(Self {
            path_difference_m,
            reflectivity,
        })
    }
}

/// How the sampled beat signal is turned into a depth profile.
#[derive(Debug, Clone, PartialEq)]
pub struct DemodConfig {
    /// Number of depth bins in the output profile.
    pub n_depth_bins: usize,
    /// One-way depth covered by the profile, in meters. Bin `k` sits at depth
    /// `k · max_depth_m / n_depth_bins` (path difference twice that).
    pub max_depth_m: f64,
    /// Window applied to the beat signal before frequency analysis.
    pub window: WindowKind,
}

/// Analysis window for the beat signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Hann,
    Rectangular,
}

impl Default for DemodConfig {
    fn default() -> Self {
        Self {
            n_depth_bins: 512,
            max_depth_m: 0.05,
            window: WindowKind::Hann,
        }
    }
}

impl DemodConfig {
    /// Check invariants against a sweep, including that the deepest bin's
    /// beat frequency stays below the Nyquist rate of the sampled sweep.
    pub fn validate(&self, sweep: &SweepConfig) -> Result<()> {
        if self.n_depth_bins == 0 {
            return Err(Error::spec("n_depth_bins must be at least 1"));
        }
        if !positive(self.max_depth_m) {
            return Err(Error::spec("max_depth_m must be positive"));
        }
        let max_beat = beat_frequency(sweep, 2.0 * self.max_depth_m)?;
        let nyquist = sweep.sample_rate_hz() / 2.0;
        if max_beat > nyquist {
            return Err(Error::spec(format!(
                "depth window needs {max_beat:.0} Hz but the sweep samples only to {nyquist:.0} Hz"
            )));
        }
        Ok(())
    }

    /// One-way depth covered by one bin.
    pub fn depth_step_m(&self) -> f64 {
        self.max_depth_m / self.n_depth_bins as f64
    }
}

/// Depth-resolved reflection magnitude profile at one raster position.
#[derive(Debug, Clone, PartialEq)]
pub struct AScan {
    /// Reflection magnitude per depth bin.
    pub samples: Vec<f64>,
    /// One-way depth per bin, in meters.
    pub depth_step_m: f64,
}

impl AScan {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Depth of bin `k` in meters.
    pub fn depth_of_bin(&self, k: usize) -> f64 {
        k as f64 * self.depth_step_m
    }

    /// Index of the bin nearest the given one-way depth.
    pub fn nearest_bin(&self, depth_m: f64) -> usize {
        let k = (depth_m / self.depth_step_m).round();
        (k.max(0.0) as usize).min(self.samples.len().saturating_sub(1))
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Beat frequency of a reflector at two-way path difference ΔL:
/// `f_b = Δf · ΔL / (c · T_m)`.
pub fn beat_frequency(sweep: &SweepConfig, path_difference_m: f64) -> Result<f64> {
    if !path_difference_m.is_finite() || path_difference_m < 0.0 {
        return Err(Error::domain("path difference must be nonnegative"));
    }
    Ok(sweep.freq_span_hz * path_difference_m
        / (sweep.propagation_speed_mps * sweep.sweep_period_s))
}

/// Two-way path difference producing the given beat frequency; inverse of
/// [`beat_frequency`].
pub fn range_from_beat(sweep: &SweepConfig, beat_hz: f64) -> Result<f64> {
    if !beat_hz.is_finite() || beat_hz < 0.0 {
        return Err(Error::domain("beat frequency must be nonnegative"));
    }
    Ok(beat_hz * sweep.propagation_speed_mps * sweep.sweep_period_s / sweep.freq_span_hz)
}

/// Interference intensity `(I₁+I₂)·[1 + V·cos(2π·f_b·t + φ₀)]` with
/// `φ₀ = ω₀·ΔL/c + initial_phase_rad`, ω₀ the band-start angular frequency.
///
/// Callers keep `t` within `[0, sweep_period_s)`; the expression itself is
/// evaluated for any finite input.
pub fn interference_intensity(
    sweep: &SweepConfig,
    params: &InterferenceParams,
    path_difference_m: f64,
    t_s: f64,
) -> f64 {
    let c = sweep.propagation_speed_mps;
    let beat_hz = params.chirp_rate_rad_per_s2 * path_difference_m / (2.0 * PI * c);
    let phase0 =
        sweep.band_start_angular_hz() * path_difference_m / c + params.initial_phase_rad;
    (params.i1 + params.i2)
        * (1.0 + params.visibility * (2.0 * PI * beat_hz * t_s + phase0).cos())
}

/// Synthesize the depth profile seen by the probe over one sweep.
///
/// Superposes one interference fringe per reflector (scaled by its
/// reflectivity), adds white Gaussian noise of standard deviation
/// `noise_sigma · (I₁+I₂)` to the time-domain beat signal, then demodulates:
/// the windowed signal is correlated against the beat tone of every depth bin
/// and the magnitude is normalized so a unit-visibility, unit-reflectivity
/// fringe reads close to `I₁+I₂`.
///
/// With `noise_sigma == 0` the output is independent of `rng_seed`.
pub fn synthesize_ascan(
    sweep: &SweepConfig,
    demod: &DemodConfig,
    params: &InterferenceParams,
    reflectors: &[Reflector],
    noise_sigma: f64,
    rng_seed: u64,
) -> Result<AScan> {
    sweep.validate()?;
    demod.validate(sweep)?;
    params.validate()?;
    if reflectors.is_empty() {
        return Err(Error::domain("at least one reflector is required"));
    }
    for r in reflectors {
        if !non_negative(r.path_difference_m) || !non_negative(r.reflectivity) {
            return Err(Error::domain("reflectors must have nonnegative fields"));
        }
    }
    if !non_negative(noise_sigma) {
        return Err(Error::domain("noise_sigma must be nonnegative"));
    }

    let n = sweep.n_time_samples;
    let dt = sweep.sweep_period_s / n as f64;

    // Time-domain beat signal: superposed fringes plus noise.
    let mut signal = vec![0.0f64; n];
    for r in reflectors {
        if r.reflectivity == 0.0 {
            continue;
        }
        for (i, s) in signal.iter_mut().enumerate() {
            let t = i as f64 * dt;
            *s += r.reflectivity * interference_intensity(sweep, params, r.path_difference_m, t);
        }
    }
    if noise_sigma > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let normal = Normal::new(0.0, noise_sigma * (params.i1 + params.i2))
            .map_err(|e| Error::domain(format!("invalid noise sigma: {e}")))?;
        for s in signal.iter_mut() {
            *s += normal.sample(&mut rng);
        }
    }

    Ok(demodulate(sweep, demod, &signal))
}

/// Windowed single-bin correlations of the beat signal at the beat frequency
/// of every depth bin.
///
/// The static pedestal (the `1 +` term of the fringe summed over reflectors)
/// carries no range information and would bury shallow bins, so the
/// window-weighted mean is removed before the correlation.
fn demodulate(sweep: &SweepConfig, demod: &DemodConfig, signal: &[f64]) -> AScan {
    let n = signal.len();
    let dt = sweep.sweep_period_s / n as f64;
    let window = make_window(demod.window, n);
    let window_sum: f64 = window.iter().sum();
    let norm = 2.0 / window_sum;

    let weighted_mean =
        signal.iter().zip(&window).map(|(s, w)| s * w).sum::<f64>() / window_sum;
    let windowed: Vec<f64> = signal
        .iter()
        .zip(&window)
        .map(|(s, w)| (s - weighted_mean) * w)
        .collect();

    let depth_step = demod.depth_step_m();
    let mut samples = Vec::with_capacity(demod.n_depth_bins);
    for k in 0..demod.n_depth_bins {
        let depth = k as f64 * depth_step;
        let beat = sweep.freq_span_hz * (2.0 * depth)
            / (sweep.propagation_speed_mps * sweep.sweep_period_s);
        let theta = 2.0 * PI * beat * dt;
        // Rotate a unit phasor through the samples instead of calling
        // sin/cos once per sample.
        let (step_sin, step_cos) = theta.sin_cos();
        let mut ph_re = 1.0f64;
        let mut ph_im = 0.0f64;
        let mut acc_re = 0.0f64;
        let mut acc_im = 0.0f64;
        for &s in &windowed {
            acc_re += s * ph_re;
            acc_im -= s * ph_im;
            let re = ph_re * step_cos - ph_im * step_sin;
            ph_im = ph_re * step_sin + ph_im * step_cos;
            ph_re = re;
        }
        samples.push(norm * acc_re.hypot(acc_im));
    }

    AScan {
        samples,
        depth_step_m: depth_step,
    }
}

fn make_window(kind: WindowKind, n: usize) -> Vec<f64> {
    match kind {
        WindowKind::Rectangular => vec![1.0; n],
        WindowKind::Hann => (0..n)
            .map(|i| 0.5 * (1.0 - (2.0 * PI * i as f64 / (n - 1) as f64).cos()))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    /// Sweep used by the worked examples: Δf = 90 GHz, T_m = 240 µs, c = 3e8.
    fn example_sweep() -> SweepConfig {
        SweepConfig::new(240e-6, 90e9, 0.23e12, 0.32e12, 1024, 3e8).unwrap()
    }

    #[test]
    fn beat_frequency_zero_path() {
        let f = beat_frequency(&example_sweep(), 0.0).unwrap();
        assert_eq!(f, 0.0);
    }

    #[test]
    fn beat_frequency_matches_hand_substitution() {
        // 90e9 * 0.01 / (3e8 * 240e-6) = 12_500 Hz
        let f = beat_frequency(&example_sweep(), 0.01).unwrap();
        assert!((f - 12_500.0).abs() / 12_500.0 < 1e-12, "f = {f}");
    }

    #[test]
    fn beat_frequency_is_linear() {
        let sweep = example_sweep();
        let f1 = beat_frequency(&sweep, 0.01).unwrap();
        let f2 = beat_frequency(&sweep, 0.02).unwrap();
        assert!((f2 - 2.0 * f1).abs() / f2 < 1e-12);
        assert!((f2 - 25_000.0).abs() / 25_000.0 < 1e-12);
    }

    #[test]
    fn beat_frequency_rejects_negative_path() {
        assert!(beat_frequency(&example_sweep(), -1e-3).is_err());
    }

    #[test]
    fn range_from_beat_inverts_example() {
        let sweep = example_sweep();
        assert_eq!(range_from_beat(&sweep, 0.0).unwrap(), 0.0);
        let dl = range_from_beat(&sweep, 12_500.0).unwrap();
        assert!((dl - 0.01).abs() / 0.01 < 1e-12, "dl = {dl}");
        assert!(range_from_beat(&sweep, -1.0).is_err());
    }

    #[test]
    fn range_beat_round_trip() {
        let sweep = example_sweep();
        for i in 0..100 {
            let dl = i as f64 * 0.01 + 0.0003;
            let f = beat_frequency(&sweep, dl).unwrap();
            let back = range_from_beat(&sweep, f).unwrap();
            assert!((back - dl).abs() / dl < 1e-9, "dl = {dl}, back = {back}");
        }
    }

    #[test]
    fn intensity_constant_when_visibility_zero() {
        let sweep = example_sweep();
        let params = InterferenceParams::new(1.3, 0.7, 0.0, 0.4, &sweep).unwrap();
        for i in 0..50 {
            let t = i as f64 * 4e-6;
            let v = interference_intensity(&sweep, &params, 0.013, t);
            assert!((v - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn intensity_peaks_at_zero_path() {
        let sweep = example_sweep();
        let params = InterferenceParams::new(1.0, 1.0, 0.8, 0.0, &sweep).unwrap();
        for i in 0..50 {
            let t = i as f64 * 4e-6;
            let v = interference_intensity(&sweep, &params, 0.0, t);
            assert!((v - 2.0 * 1.8).abs() < 1e-12);
        }
    }

    #[test]
    fn intensity_matches_hand_evaluation() {
        let sweep = example_sweep();
        let params = InterferenceParams::new(1.0, 1.0, 1.0, 0.0, &sweep).unwrap();
        let t = 40e-6;
        let dl = 0.01;
        // Hand evaluation: f_b = 12_500 Hz, phase0 = 2π·0.23e12·0.01/3e8.
        let phase0 = 2.0 * PI * 0.23e12 * dl / 3e8;
        let expected = 2.0 * (1.0 + (2.0 * PI * 12_500.0 * t + phase0).cos());
        let got = interference_intensity(&sweep, &params, dl, t);
        assert!((got - expected).abs() < 1e-9, "got {got}, expected {expected}");
    }

    #[test]
    fn intensity_stays_within_fringe_envelope() {
        let sweep = example_sweep();
        let params = InterferenceParams::new(0.9, 1.4, 0.63, 1.1, &sweep).unwrap();
        let total = params.i1 + params.i2;
        let (lo, hi) = (total * (1.0 - params.visibility), total * (1.0 + params.visibility));
        for i in 0..2000 {
            let t = i as f64 * sweep.sweep_period_s / 2000.0;
            let v = interference_intensity(&sweep, &params, 0.0173, t);
            assert!(v >= lo - 1e-12 && v <= hi + 1e-12, "v = {v} outside [{lo}, {hi}]");
        }
    }

    fn small_demod() -> DemodConfig {
        DemodConfig {
            n_depth_bins: 256,
            max_depth_m: 0.05,
            window: WindowKind::Hann,
        }
    }

    #[test]
    fn single_reflector_peaks_at_its_depth_bin() {
        let sweep = example_sweep();
        let demod = small_demod();
        let params = InterferenceParams::balanced(&sweep);
        let depth = 0.021;
        let refl = vec![Reflector::new(2.0 * depth, 1.0).unwrap()];
        let scan = synthesize_ascan(&sweep, &demod, &params, &refl, 0.0, 0).unwrap();

        // Brute-force argmax as the oracle.
        let argmax = scan
            .samples
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        let expected = scan.nearest_bin(depth);
        assert!(
            (argmax as i64 - expected as i64).abs() <= 1,
            "argmax {argmax}, expected {expected}"
        );
    }

    #[test]
    fn two_reflectors_keep_reflectivity_order() {
        let sweep = example_sweep();
        let demod = small_demod();
        let params = InterferenceParams::balanced(&sweep);
        let (d1, d2) = (0.012, 0.034);
        let refl = vec![
            Reflector::new(2.0 * d1, 1.0).unwrap(),
            Reflector::new(2.0 * d2, 0.5).unwrap(),
        ];
        let scan = synthesize_ascan(&sweep, &demod, &params, &refl, 0.0, 0).unwrap();
        let (b1, b2) = (scan.nearest_bin(d1), scan.nearest_bin(d2));

        let local_peak = |bin: usize| -> (usize, f64) {
            // strongest sample within two bins of the nominal location
            ((bin - 2)..=(bin + 2))
                .map(|k| (k, scan.samples[k]))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap()
        };
        let (k1, p1) = local_peak(b1);
        let (k2, p2) = local_peak(b2);
        assert!(p1 > p2, "stronger reflector should peak higher: {p1} vs {p2}");
        // both are genuine local maxima
        for (k, p) in [(k1, p1), (k2, p2)] {
            assert!(scan.samples[k - 3] < p && scan.samples[k + 3] < p);
        }
    }

    #[test]
    fn same_seed_same_noise_different_seed_different_noise() {
        let sweep = example_sweep();
        let demod = small_demod();
        let params = InterferenceParams::balanced(&sweep);
        let refl = vec![Reflector::new(0.03, 0.7).unwrap()];
        let a = synthesize_ascan(&sweep, &demod, &params, &refl, 0.05, 42).unwrap();
        let b = synthesize_ascan(&sweep, &demod, &params, &refl, 0.05, 42).unwrap();
        let c = synthesize_ascan(&sweep, &demod, &params, &refl, 0.05, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn zero_noise_ignores_seed() {
        let sweep = example_sweep();
        let demod = small_demod();
        let params = InterferenceParams::balanced(&sweep);
        let refl = vec![Reflector::new(0.03, 0.7).unwrap()];
        let a = synthesize_ascan(&sweep, &demod, &params, &refl, 0.0, 1).unwrap();
        let b = synthesize_ascan(&sweep, &demod, &params, &refl, 0.0, 999).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn synthesize_rejects_bad_inputs() {
        let sweep = example_sweep();
        let demod = small_demod();
        let params = InterferenceParams::balanced(&sweep);
        assert!(matches!(
            synthesize_ascan(&sweep, &demod, &params, &[], 0.0, 0),
            Err(Error::Domain(_))
        ));
        let refl = vec![Reflector::new(0.03, 0.7).unwrap()];
        assert!(synthesize_ascan(&sweep, &demod, &params, &refl, -0.1, 0).is_err());
    }

    #[test]
    fn sweep_config_invariants() {
        assert!(SweepConfig::new(240e-6, 90e9, 0.23e12, 0.33e12, 1024, 3e8).is_err());
        assert!(SweepConfig::new(240e-6, 90e9, 0.23e12, 0.32e12, 1, 3e8).is_err());
        assert!(SweepConfig::new(-1.0, 90e9, 0.23e12, 0.32e12, 1024, 3e8).is_err());
        assert!(SweepConfig::new(240e-6, 90e9, 0.23e12, 0.32e12, 1024, 3e8).is_ok());
    }

    #[test]
    fn demod_rejects_depth_beyond_nyquist() {
        let mut sweep = example_sweep();
        sweep.n_time_samples = 64; // Nyquist depth = c·N/(4Δf) ≈ 53 mm
        let demod = DemodConfig {
            n_depth_bins: 128,
            max_depth_m: 0.06,
            window: WindowKind::Hann,
        };
        assert!(demod.validate(&sweep).is_err());
        let demod_ok = DemodConfig {
            max_depth_m: 0.05,
            ..demod
        };
        assert!(demod_ok.validate(&sweep).is_ok());
    }

    #[test]
    fn interference_params_invariants() {
        let sweep = example_sweep();
        assert!(InterferenceParams::new(-0.1, 1.0, 0.5, 0.0, &sweep).is_err());
        assert!(InterferenceParams::new(1.0, 1.0, 1.1, 0.0, &sweep).is_err());
        let p = InterferenceParams::new(1.0, 1.0, 1.0, 0.0, &sweep).unwrap();
        let alpha = 2.0 * PI * 90e9 / 240e-6;
        assert!((p.chirp_rate_rad_per_s2 - alpha).abs() / alpha < 1e-12);
    }
}
