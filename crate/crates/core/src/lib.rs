//! Synthetic terahertz FMCW reflection scanning with wavelet-based signal
//! enhancement and defect quantification.
//!
//! The crate simulates reflection scans of a layered heat-shield sample with
//! circular air-hole defects, sharpens the depth signals with a continuous
//! wavelet transform (three selectable kernels), and measures the defect
//! areas from segmented depth slices:
//!
//! - [`fmcw`] — interference fringes, beat-frequency ranging, A-scan synthesis
//! - [`phantom`] — the parametric six-hole sample and its raster scan
//! - [`cwt`] — wavelet kernels, the transform, and profile enhancement
//! - [`volume`] — volume assembly, normalization, slicing, file formats
//! - [`segmentation`] — thresholding, component labeling, area metrics
//! - [`config`] — the plain-text run configuration

pub mod config;
pub mod cwt;
pub mod error;
pub mod fmcw;
pub mod phantom;
pub mod pipeline;
pub mod segmentation;
pub mod volume;

pub use config::{parse_simulation_config, SimulationConfig};
pub use cwt::{
    cwt_transform, enhance_ascan, match_scale, wavelet_eval, BoundaryPolicy, CwtCoefficients,
    CwtParams, ScalePolicy, WaveletKind,
};
pub use error::{Error, Result};
pub use fmcw::{
    beat_frequency, interference_intensity, range_from_beat, synthesize_ascan, AScan, DemodConfig,
    InterferenceParams, Reflector, SweepConfig, WindowKind, VACUUM_LIGHT_SPEED_MPS,
};
pub use phantom::{
    build_phantom, pixel_noise_seed, read_ground_truth_areas, scan_phantom,
    write_defect_mask_pgm, write_ground_truth_csv, GroundTruth, LayerSpec, Phantom, PhantomSpec,
};
pub use pipeline::{process_volume, MethodResult, ProcessOptions};
pub use segmentation::{
    compute_metrics, measure_areas, otsu_threshold, report_csv, segment_defects, DefectLabelMap,
    DefectReport, MethodTag, Polarity, SegmentationParams, ThresholdPolicy,
};
pub use volume::{
    enhance_volume, extract_slice, locate_interface_b, mean_ascan, normalize_volume, read_tvol,
    write_tvol, write_slice_csv, write_slice_pgm, Provenance, SliceImage, VolumeScan,
};
