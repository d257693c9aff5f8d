//! Defect segmentation, area measurement, and accuracy metrics.
//!
//! A slice image is thresholded (automatic two-class Otsu split or a fixed
//! value), the foreground is grouped into 4-connected components, tiny
//! components are discarded as noise, and the surviving components are
//! measured by pixel counting. Measured areas pair with reference areas by
//! rank to yield the per-defect differences and the total/percent error.

use crate::error::{positive, Error, Result};
use crate::volume::SliceImage;

/// Threshold selection for [`segment_defects`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdPolicy {
    /// Automatic two-class histogram split.
    Otsu,
    /// Fixed threshold value.
    Fixed(f64),
}

/// Which side of the threshold counts as defect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// Defects are the brighter class (air-backed interfaces reflect more).
    BrightDefects,
    /// Defects are the darker class.
    DarkDefects,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentationParams {
    pub threshold: ThresholdPolicy,
    pub polarity: Polarity,
    /// Components smaller than this many pixels are discarded.
    pub min_component_px: usize,
}

impl Default for SegmentationParams {
    fn default() -> Self {
        Self {
            threshold: ThresholdPolicy::Otsu,
            polarity: Polarity::BrightDefects,
            min_component_px: 2,
        }
    }
}

/// Labeled 4-connected components of a segmented slice. Label 0 is
/// background; defect labels run contiguously from 1 to `component_count`,
/// ordered by first raster-order appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectLabelMap {
    nx: usize,
    ny: usize,
    labels: Vec<u32>,
    component_count: usize,
}

impl DefectLabelMap {
    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn label_at(&self, x: usize, y: usize) -> u32 {
        self.labels[x * self.ny + y]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Pixel count per label, index 0 holding label 1.
    pub fn pixel_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.component_count];
        for &l in &self.labels {
            if l > 0 {
                counts[(l - 1) as usize] += 1;
            }
        }
        counts
    }
}

/// Tag identifying which processing route produced a measurement row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodTag {
    Raw,
    Morlet,
    Gaussian,
    MexicanHat,
}

impl MethodTag {
    pub fn name(&self) -> &'static str {
        match self {
            MethodTag::Raw => "raw",
            MethodTag::Morlet => "morlet",
            MethodTag::Gaussian => "gaussian",
            MethodTag::MexicanHat => "mexican_hat",
        }
    }
}

/// Per-defect area comparison for one processing route.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    pub method: MethodTag,
    /// Measured areas in mm², ascending.
    pub measured_areas_mm2: Vec<f64>,
    /// Reference areas in mm², ascending.
    pub actual_areas_mm2: Vec<f64>,
    /// |measured − actual| per rank-paired defect.
    pub per_defect_abs_diff_mm2: Vec<f64>,
    /// Sum of the absolute per-defect differences.
    pub total_difference_mm2: f64,
    /// Total difference as a percentage of the summed reference area.
    pub percent_difference: f64,
}

// ---------------------------------------------------------------------------
// Thresholding and labeling
// ---------------------------------------------------------------------------

/// Otsu-style automatic threshold: the 256-bin histogram split maximizing
/// the between-class variance, refined to the midpoint of the resulting
/// class means (Ridler–Calvard iteration). The refinement centers the
/// threshold inside the gap of well-separated classes, where the raw
/// histogram argmax is degenerate. Errors when the input has no spread.
pub fn otsu_threshold(values: &[f64]) -> Result<f64> {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !positive(max - min) {
        return Err(Error::degenerate(
            "automatic thresholding needs at least two distinct values",
        ));
    }

    const BINS: usize = 256;
    let mut histogram = [0usize; BINS];
    let scale = BINS as f64 / (max - min);
    for &v in values {
        let bin = (((v - min) * scale) as usize).min(BINS - 1);
        histogram[bin] += 1;
    }

    let total = values.len() as f64;
    let weighted_sum: f64 = histogram
        .iter()
        .enumerate()
        .map(|(i, &c)| i as f64 * c as f64)
        .sum();

    let mut sum_b = 0.0;
    let mut weight_b = 0.0;
    let mut best = (0usize, f64::NEG_INFINITY);
    for (i, &count) in histogram.iter().enumerate() {
        weight_b += count as f64;
        if weight_b == 0.0 {
            continue;
        }
        let weight_f = total - weight_b;
        if weight_f == 0.0 {
            break;
        }
        sum_b += i as f64 * count as f64;
        let mean_b = sum_b / weight_b;
        let mean_f = (weighted_sum - sum_b) / weight_f;
        let between = weight_b * weight_f * (mean_b - mean_f).powi(2);
        if between > best.1 {
            best = (i, between);
        }
    }
    let mut threshold = min + (best.0 as f64 + 0.5) / scale;

    // Ridler-Calvard: move to the class-mean midpoint until stationary.
    for _ in 0..64 {
        let (mut sum_lo, mut n_lo, mut sum_hi, mut n_hi) = (0.0, 0usize, 0.0, 0usize);
        for &v in values {
            if v > threshold {
                sum_hi += v;
                n_hi += 1;
            } else {
                sum_lo += v;
                n_lo += 1;
            }
        }
        if n_lo == 0 || n_hi == 0 {
            break;
        }
        let next = 0.5 * (sum_lo / n_lo as f64 + sum_hi / n_hi as f64);
        if (next - threshold).abs() <= 1e-12 * (max - min) {
            break;
        }
        threshold = next;
    }
    Ok(threshold)
}

/// Threshold a slice and label its 4-connected foreground components.
pub fn segment_defects(slice: &SliceImage, params: &SegmentationParams) -> Result<DefectLabelMap> {
    let (nx, ny) = slice.dims();
    let threshold = match params.threshold {
        ThresholdPolicy::Otsu => otsu_threshold(slice.pixels())?,
        ThresholdPolicy::Fixed(t) => {
            if !t.is_finite() {
                return Err(Error::domain("fixed threshold must be finite"));
            }
            t
        }
    };

    let foreground: Vec<bool> = slice
        .pixels()
        .iter()
        .map(|&v| match params.polarity {
            Polarity::BrightDefects => v > threshold,
            Polarity::DarkDefects => v < threshold,
        })
        .collect();

    // Flood-fill labeling in raster order (x outer to match pixel layout).
    let idx = |x: usize, y: usize| x * ny + y;
    let mut labels = vec![0u32; nx * ny];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut stack = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            let start = idx(x, y);
            if !foreground[start] || labels[start] != 0 {
                continue;
            }
            let label = components.len() as u32 + 1;
            let mut member_pixels = Vec::new();
            labels[start] = label;
            stack.push((x, y));
            while let Some((px, py)) = stack.pop() {
                member_pixels.push(idx(px, py));
                let mut visit = |nx_: usize, ny_: usize| {
                    let n = idx(nx_, ny_);
                    if foreground[n] && labels[n] == 0 {
                        labels[n] = label;
                        stack.push((nx_, ny_));
                    }
                };
                if px > 0 {
                    visit(px - 1, py);
                }
                if px + 1 < nx {
                    visit(px + 1, py);
                }
                if py > 0 {
                    visit(px, py - 1);
                }
                if py + 1 < ny {
                    visit(px, py + 1);
                }
            }
            components.push(member_pixels);
        }
    }

    // Drop sub-minimum components and relabel contiguously.
    let mut relabeled = vec![0u32; nx * ny];
    let mut next = 0u32;
    for pixels in &components {
        if pixels.len() < params.min_component_px {
            continue;
        }
        next += 1;
        for &p in pixels {
            relabeled[p] = next;
        }
    }

    Ok(DefectLabelMap {
        nx,
        ny,
        labels: relabeled,
        component_count: next as usize,
    })
}

// ---------------------------------------------------------------------------
// Measurement and metrics
// ---------------------------------------------------------------------------

/// Component areas in mm² (pixel count × pixel area), ascending.
pub fn measure_areas(labels: &DefectLabelMap, pixel_area_mm2: f64) -> Vec<f64> {
    let mut areas: Vec<f64> = labels
        .pixel_counts()
        .iter()
        .map(|&c| c as f64 * pixel_area_mm2)
        .collect();
    areas.sort_by(f64::total_cmp);
    areas
}

/// Rank-pair measured against reference areas and compute the error metrics.
///
/// Both lists are sorted ascending internally, so the pairing is by size
/// rank. A length mismatch is an error: a missed or spurious defect must
/// surface rather than be silently paired.
pub fn compute_metrics(measured: &[f64], actual: &[f64], method: MethodTag) -> Result<DefectReport> {
    if measured.len() != actual.len() {
        return Err(Error::domain(format!(
            "defect count mismatch: measured {} but reference lists {}",
            measured.len(),
            actual.len()
        )));
    }
    let mut measured = measured.to_vec();
    let mut actual = actual.to_vec();
    measured.sort_by(f64::total_cmp);
    actual.sort_by(f64::total_cmp);

    let diffs: Vec<f64> = measured
        .iter()
        .zip(&actual)
        .map(|(m, a)| (m - a).abs())
        .collect();
    let total: f64 = diffs.iter().sum();
    let actual_sum: f64 = actual.iter().sum();
    if !positive(actual_sum) {
        return Err(Error::degenerate(
            "reference areas must sum to a positive value",
        ));
    }

    Ok(DefectReport {
        method,
        measured_areas_mm2: measured,
        actual_areas_mm2: actual,
        per_defect_abs_diff_mm2: diffs,
        total_difference_mm2: total,
        percent_difference: 100.0 * total / actual_sum,
    })
}

/// Combined report CSV: header, a reference row, then one row per report.
/// Columns: method, each defect area ascending, total difference, percent
/// difference.
pub fn report_csv(actual: &[f64], reports: &[DefectReport]) -> String {
    let mut actual = actual.to_vec();
    actual.sort_by(f64::total_cmp);

    let mut out = String::from("method");
    for i in 1..=actual.len() {
        out.push_str(&format!(",defect_{i}_mm2"));
    }
    out.push_str(",total_difference_mm2,percent_difference\n");

    out.push_str("actual");
    for a in &actual {
        out.push_str(&format!(",{a:.3}"));
    }
    out.push_str(",0.00,0.00\n");

    for report in reports {
        out.push_str(report.method.name());
        for m in &report.measured_areas_mm2 {
            out.push_str(&format!(",{m:.3}"));
        }
        out.push_str(&format!(
            ",{:.2},{:.2}\n",
            report.total_difference_mm2, report.percent_difference
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
