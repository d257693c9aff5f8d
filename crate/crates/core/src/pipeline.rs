//! End-to-end processing of a raw volume into per-method defect reports.
//!
//! For every requested method the raw volume is (optionally) enhanced,
//! normalized to unit peak, sliced at the defect interface, segmented, and
//! measured against the reference areas. The same routine backs the
//! command-line front end and the test suites.

use crate::cwt::{self, CwtParams, ScalePolicy, WaveletKind};
use crate::error::{Error, Result};
use crate::segmentation::{
    compute_metrics, measure_areas, segment_defects, DefectLabelMap, DefectReport, MethodTag,
    SegmentationParams,
};
use crate::volume::{
    enhance_volume, extract_slice, locate_interface_b, mean_ascan, normalize_volume, SliceImage,
    VolumeScan,
};

impl MethodTag {
    /// The wavelet kernel behind a method; `None` for the raw route.
    pub fn wavelet(&self) -> Option<WaveletKind> {
        match self {
            MethodTag::Raw => None,
            MethodTag::Morlet => Some(WaveletKind::Morlet),
            MethodTag::Gaussian => Some(WaveletKind::GaussianBell),
            MethodTag::MexicanHat => Some(WaveletKind::MexicanHat),
        }
    }

    pub fn all() -> [MethodTag; 4] {
        [
            MethodTag::Raw,
            MethodTag::Morlet,
            MethodTag::Gaussian,
            MethodTag::MexicanHat,
        ]
    }
}

/// Knobs of the processing stage.
#[derive(Debug, Clone)]
pub struct ProcessOptions {
    pub methods: Vec<MethodTag>,
    pub cwt_params: CwtParams,
    pub scale_policy: ScalePolicy,
    /// Fixed slice index; overrides the automatic interface search.
    pub z_index: Option<usize>,
    /// Search window `[lo, hi)` for the automatic interface location;
    /// the whole depth range when absent.
    pub z_window: Option<(usize, usize)>,
    pub segmentation: SegmentationParams,
}

impl Default for ProcessOptions {
    fn default() -> Self {
        Self {
            methods: MethodTag::all().to_vec(),
            cwt_params: CwtParams::default(),
            scale_policy: ScalePolicy::FixedScaleAuto,
            z_index: None,
            z_window: None,
            segmentation: SegmentationParams::default(),
        }
    }
}

/// Everything produced for one method.
#[derive(Debug, Clone)]
pub struct MethodResult {
    pub method: MethodTag,
    /// Depth bin the slice was taken at.
    pub z_index: usize,
    /// Wavelet scale the enhancement ran at; `None` for the raw route and
    /// for `MaxOverScales`.
    pub scale_used: Option<f64>,
    pub slice: SliceImage,
    pub label_map: DefectLabelMap,
    pub report: DefectReport,
}

/// Run every requested method over a raw volume and report against the
/// reference areas (mm², any order).
pub fn process_volume(
    raw: &VolumeScan,
    actual_areas_mm2: &[f64],
    options: &ProcessOptions,
) -> Result<Vec<MethodResult>> {
    if options.methods.is_empty() {
        return Err(Error::domain("at least one method is required"));
    }
    options.cwt_params.validate()?;

    let mut results = Vec::with_capacity(options.methods.len());
    for &method in &options.methods {
        let result = process_method(raw, actual_areas_mm2, options, method)
            .map_err(|e| prefix_method(method, e))?;
        results.push(result);
    }
    Ok(results)
}

fn process_method(
    raw: &VolumeScan,
    actual_areas_mm2: &[f64],
    options: &ProcessOptions,
    method: MethodTag,
) -> Result<MethodResult> {
    let (volume, scale_used) = match method.wavelet() {
        None => (raw.clone(), None),
        Some(kind) => {
            // Resolve the automatic policy here so the matched scale can be
            // reported; the reference profile is the volume's mean A-scan.
            let (policy, scale) = match options.scale_policy {
                ScalePolicy::FixedScaleAuto => {
                    let scale =
                        cwt::match_scale(&mean_ascan(raw), kind, &options.cwt_params);
                    (ScalePolicy::FixedScale(scale), Some(scale))
                }
                ScalePolicy::FixedScale(scale) => (ScalePolicy::FixedScale(scale), Some(scale)),
                ScalePolicy::MaxOverScales => (ScalePolicy::MaxOverScales, None),
            };
            (
                enhance_volume(raw, kind, &options.cwt_params, policy)?,
                scale,
            )
        }
    };

    let normalized = normalize_volume(&volume)?;
    let z_index = match options.z_index {
        Some(z) => z,
        None => {
            let (lo, hi) = options.z_window.unwrap_or((0, normalized.dims().2));
            locate_interface_b(&normalized, lo, hi)?
        }
    };
    let slice = extract_slice(&normalized, z_index)?;
    let label_map = segment_defects(&slice, &options.segmentation)?;
    let measured = measure_areas(&label_map, slice.pixel_area_mm2());
    let report = compute_metrics(&measured, actual_areas_mm2, method)?;

    Ok(MethodResult {
        method,
        z_index,
        scale_used,
        slice,
        label_map,
        report,
    })
}

/// Keep the error variant but name the method that failed.
fn prefix_method(method: MethodTag, e: Error) -> Error {
    let tag = method.name();
    match e {
        Error::Domain(m) => Error::Domain(format!("method {tag}: {m}")),
        Error::Spec(m) => Error::Spec(format!("method {tag}: {m}")),
        Error::Degenerate(m) => Error::Degenerate(format!("method {tag}: {m}")),
        Error::Format(m) => Error::Format(format!("method {tag}: {m}")),
        io @ Error::Io(_) => io,
    }
}
