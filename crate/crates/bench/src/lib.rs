//! Shared fixtures for the benchmark targets.

use thzscan_core::*;

/// Reference sweep scaled to a fast sample count.
pub fn bench_sweep(n_time: usize) -> SweepConfig {
    SweepConfig::new(240e-6, 90e9, 0.23e12, 0.32e12, n_time, 3e8).unwrap()
}

/// Small six-hole sample for end-to-end style benchmarks.
pub fn bench_phantom() -> Phantom {
    build_phantom(&PhantomSpec::default()).unwrap()
}

/// A single synthesized depth profile.
pub fn bench_ascan(n_time: usize, n_depth: usize) -> AScan {
    let sweep = bench_sweep(n_time);
    let demod = DemodConfig {
        n_depth_bins: n_depth,
        max_depth_m: 0.05,
        window: WindowKind::Hann,
    };
    let params = InterferenceParams::balanced(&sweep);
    let reflectors = vec![
        Reflector::new(0.050, 0.30).unwrap(),
        Reflector::new(0.074, 0.60).unwrap(),
        Reflector::new(0.086, 0.80).unwrap(),
    ];
    synthesize_ascan(&sweep, &demod, &params, &reflectors, 0.05, 1).unwrap()
}
