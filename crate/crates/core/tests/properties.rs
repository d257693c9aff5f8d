//! Property tests for the algebraic invariants of the model.

use proptest::prelude::*;
use thzscan_core::*;

fn sweep() -> SweepConfig {
    SweepConfig::new(240e-6, 90e9, 0.23e12, 0.32e12, 512, 3e8).unwrap()
}

proptest! {
    #[test]
    fn beat_frequency_is_homogeneous(dl in 1e-6..1.0f64, k in 0.1..10.0f64) {
        let sweep = sweep();
        let f1 = beat_frequency(&sweep, dl).unwrap();
        let fk = beat_frequency(&sweep, k * dl).unwrap();
        prop_assert!((fk - k * f1).abs() <= 1e-12 * fk.abs().max(1e-30));
    }

    #[test]
    fn range_inverts_beat_on_the_working_interval(dl in 0.0..1.0f64) {
        let sweep = sweep();
        let back = range_from_beat(&sweep, beat_frequency(&sweep, dl).unwrap()).unwrap();
        prop_assert!((back - dl).abs() <= 1e-9 * dl.max(1e-12));
    }

    #[test]
    fn intensity_never_leaves_the_fringe_envelope(
        i1 in 0.0..3.0f64,
        i2 in 0.0..3.0f64,
        visibility in 0.0..1.0f64,
        phase in -10.0..10.0f64,
        dl in 0.0..0.5f64,
        t_frac in 0.0..1.0f64,
    ) {
        let sweep = sweep();
        let params = InterferenceParams::new(i1, i2, visibility, phase, &sweep).unwrap();
        let t = t_frac * sweep.sweep_period_s;
        let v = interference_intensity(&sweep, &params, dl, t);
        let total = i1 + i2;
        prop_assert!(v >= total * (1.0 - visibility) - 1e-12);
        prop_assert!(v <= total * (1.0 + visibility) + 1e-12);
    }

    #[test]
    fn transform_is_linear_in_the_signal(
        f in prop::collection::vec(-1.0..1.0f64, 48),
        g in prop::collection::vec(-1.0..1.0f64, 48),
        alpha in -3.0..3.0f64,
        beta in -3.0..3.0f64,
    ) {
        let combo: Vec<f64> = f.iter().zip(&g).map(|(a, b)| alpha * a + beta * b).collect();
        let params = CwtParams {
            scales: vec![1.0, 2.7, 6.5],
            ..CwtParams::default()
        };
        let wf = cwt_transform(&f, WaveletKind::MexicanHat, &params).unwrap();
        let wg = cwt_transform(&g, WaveletKind::MexicanHat, &params).unwrap();
        let wc = cwt_transform(&combo, WaveletKind::MexicanHat, &params).unwrap();
        let scale_max = (0..wc.n_scales())
            .flat_map(|s| wc.row(s).iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        for s in 0..wf.n_scales() {
            for b in 0..wf.n_translations() {
                let expected = alpha * wf.at(s, b) + beta * wg.at(s, b);
                prop_assert!(
                    (wc.at(s, b) - expected).abs() <= 1e-8 * scale_max.max(1.0),
                    "at ({s}, {b}): {} vs {expected}", wc.at(s, b)
                );
            }
        }
    }

    #[test]
    fn transform_commutes_with_shifts_in_the_interior(
        f in prop::collection::vec(-1.0..1.0f64, 128),
        shift in 1usize..8,
    ) {
        let params = CwtParams {
            scales: vec![1.0, 2.0, 3.0],
            ..CwtParams::default()
        };
        let mut shifted = vec![0.0; shift];
        shifted.extend_from_slice(&f[..f.len() - shift]);

        let w = cwt_transform(&f, WaveletKind::Morlet, &params).unwrap();
        let ws = cwt_transform(&shifted, WaveletKind::Morlet, &params).unwrap();
        let scale_max = (0..w.n_scales())
            .flat_map(|s| w.row(s).iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));

        // Margin covers the widest kernel support plus the shift itself.
        let margin = (10.0f64 * 3.0).ceil() as usize + shift;
        for s in 0..w.n_scales() {
            for b in margin..f.len() - margin {
                let expected = w.at(s, b - shift);
                prop_assert!(
                    (ws.at(s, b) - expected).abs() <= 1e-8 * scale_max.max(1.0),
                    "scale {s} b {b}: {} vs {expected}", ws.at(s, b)
                );
            }
        }
    }

    #[test]
    fn normalization_is_idempotent_and_argmax_stable(
        data in prop::collection::vec(-5.0..5.0f64, 60),
    ) {
        prop_assume!(data.iter().any(|&v| v.abs() > 1e-9));
        let vol = VolumeScan::from_parts(3, 4, 5, 1e-3, 1e-4, Provenance::Raw, data);
        let argmax = |v: &VolumeScan| {
            v.data()
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                .unwrap()
                .0
        };
        let once = normalize_volume(&vol).unwrap();
        prop_assert!((once.peak_magnitude() - 1.0).abs() < 1e-12);
        prop_assert_eq!(argmax(&vol), argmax(&once));
        let twice = normalize_volume(&once).unwrap();
        for (a, b) in twice.data().iter().zip(once.data()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn metrics_are_invariant_under_common_permutations(
        pairs in prop::collection::vec((0.0..200.0f64, 1.0..200.0f64), 1..8),
        seed in 0u64..1000,
    ) {
        let measured: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let actual: Vec<f64> = pairs.iter().map(|p| p.1).collect();

        // Deterministic permutation from the seed.
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        let mut state = seed.wrapping_add(1);
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
        let pm: Vec<f64> = order.iter().map(|&i| measured[i]).collect();
        let pa: Vec<f64> = order.iter().map(|&i| actual[i]).collect();

        let a = compute_metrics(&measured, &actual, MethodTag::Raw).unwrap();
        let b = compute_metrics(&pm, &pa, MethodTag::Raw).unwrap();
        prop_assert_eq!(a.total_difference_mm2, b.total_difference_mm2);
        prop_assert_eq!(a.percent_difference, b.percent_difference);
    }

    #[test]
    fn mask_area_stays_within_the_perimeter_band(
        diameter_mm in 3.0..20.0f64,
        step_mm in 0.4..1.0f64,
        off_x in 0.0..1.0f64,
        off_y in 0.0..1.0f64,
    ) {
        let d = diameter_mm * 1e-3;
        let step = step_mm * 1e-3;
        let margin = 2.0 * step;
        let cx = margin + 0.5 * d + off_x * step;
        let cy = margin + 0.5 * d + off_y * step;
        let extent = cx.max(cy) + 0.5 * d + margin;
        let n = (extent / step).ceil() as usize + 1;

        let spec = PhantomSpec {
            hole_diameters_m: vec![d],
            hole_centers_xy_m: vec![(cx, cy)],
            grid_nx: n,
            grid_ny: n,
            scan_step_m: step,
            clutter_count: 0,
            ..PhantomSpec::default()
        };
        let phantom = build_phantom(&spec).unwrap();
        let count = phantom.ground_truth.per_defect_pixel_count[0] as f64;
        let mask_area_mm2 = count * step_mm * step_mm;
        let analytic_mm2 = std::f64::consts::PI * (0.5 * diameter_mm).powi(2);
        let band = std::f64::consts::PI * diameter_mm * step_mm;
        prop_assert!(
            (mask_area_mm2 - analytic_mm2).abs() <= band,
            "count {count}: |{mask_area_mm2} - {analytic_mm2}| > {band}"
        );
    }
}
