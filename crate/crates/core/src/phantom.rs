//! Parametric layered test sample with circular air-hole defects.
//!
//! The sample is a stack of layers on a reflecting platform: an insulation
//! composite on top, a thin resin layer carrying circular through-holes, and
//! an insulation pad underneath. A raster scan synthesizes one A-scan per
//! grid position from the per-pixel reflector stack, yielding a volume with
//! exactly known ground truth for the defect areas.

use crate::error::{non_negative, positive, Error, Result};
use crate::fmcw::{
    self, DemodConfig, InterferenceParams, Reflector, SweepConfig,
};
use crate::volume::{Provenance, VolumeScan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Fraction of the span between the sample surface and the defect interface
/// within which clutter reflectors are placed.
const CLUTTER_BAND: (f64, f64) = (0.15, 0.85);

/// One layer of the stack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerSpec {
    pub thickness_m: f64,
    /// Reflectivity of the interface at the top face of this layer.
    pub top_interface_reflectivity: f64,
}

/// Geometry and material contrast of the synthetic sample plus the raster
/// scan grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhantomSpec {
    /// Layer stack from top to bottom.
    pub layer_stack: Vec<LayerSpec>,
    /// Index of the layer carrying the holes.
    pub defect_layer_index: usize,
    /// Hole diameters in meters.
    pub hole_diameters_m: Vec<f64>,
    /// Hole center positions (x, y) in meters.
    pub hole_centers_xy_m: Vec<(f64, f64)>,
    /// Reflectivity of the defect-layer top interface over a hole
    /// (air-backed, stronger than the resin-backed value).
    pub hole_interface_reflectivity: f64,
    /// Reflectivity of the platform under the stack.
    pub platform_reflectivity: f64,
    /// Distance from the zero-depth reference plane to the sample surface.
    pub standoff_m: f64,
    /// Raster step in meters.
    pub scan_step_m: f64,
    pub grid_nx: usize,
    pub grid_ny: usize,
    /// Gaussian beam waist diameter; 0 selects ideal point sampling.
    /// When positive, the defect-interface reflectivity map is blurred with
    /// σ = waist/2 before scanning.
    pub beam_waist_m: f64,
    /// Weak sub-surface reflectors per pixel, placed between the surface and
    /// the defect interface.
    pub clutter_count: usize,
    /// Upper bound of the uniform clutter reflectivity draw.
    pub clutter_reflectivity_max: f64,
    /// Seed of the clutter placement; part of the sample definition so a
    /// phantom build is fully deterministic.
    pub clutter_seed: u64,
}

impl Default for PhantomSpec {
    /// Six holes of 3–13 mm diameter in a 0.2 mm resin layer, scanned on a
    /// 1 mm grid.
    fn default() -> Self {
        let mm = 1e-3;
        Self {
            layer_stack: vec![
                LayerSpec {
                    thickness_m: 12.0 * mm,
                    top_interface_reflectivity: 0.30,
                },
                LayerSpec {
                    thickness_m: 0.2 * mm,
                    top_interface_reflectivity: 0.20,
                },
                LayerSpec {
                    thickness_m: 6.0 * mm,
                    top_interface_reflectivity: 0.05,
                },
            ],
            defect_layer_index: 1,
            hole_diameters_m: vec![3.0 * mm, 5.0 * mm, 7.0 * mm, 9.0 * mm, 11.0 * mm, 13.0 * mm],
            hole_centers_xy_m: vec![
                (7.0 * mm, 12.0 * mm),
                (15.0 * mm, 12.0 * mm),
                (25.0 * mm, 12.0 * mm),
                (37.0 * mm, 12.0 * mm),
                (51.0 * mm, 12.0 * mm),
                (67.0 * mm, 12.0 * mm),
            ],
            hole_interface_reflectivity: 0.60,
            platform_reflectivity: 0.80,
            standoff_m: 25.0 * mm,
            scan_step_m: mm,
            grid_nx: 80,
            grid_ny: 25,
            beam_waist_m: 0.0,
            clutter_count: 3,
            clutter_reflectivity_max: 0.05,
            clutter_seed: 7,
        }
    }
}

impl PhantomSpec {
    pub fn validate(&self) -> Result<()> {
        if self.layer_stack.is_empty() {
            return Err(Error::spec("layer_stack must not be empty"));
        }
        for (i, layer) in self.layer_stack.iter().enumerate() {
            if !positive(layer.thickness_m) {
                return Err(Error::spec(format!("layer {i} thickness must be positive")));
            }
            if !(0.0..=1.0).contains(&layer.top_interface_reflectivity) {
                return Err(Error::spec(format!(
                    "layer {i} interface reflectivity must lie in [0, 1]"
                )));
            }
        }
        if self.defect_layer_index >= self.layer_stack.len() {
            return Err(Error::spec(
                "defect_layer_index must address a layer of the stack",
            ));
        }
        if self.hole_diameters_m.len() != self.hole_centers_xy_m.len() {
            return Err(Error::spec(
                "hole_diameters_m and hole_centers_xy_m must have equal length",
            ));
        }
        for (i, &d) in self.hole_diameters_m.iter().enumerate() {
            if !positive(d) {
                return Err(Error::spec(format!("hole {i} diameter must be positive")));
            }
        }
        // Holes must not overlap.
        for i in 0..self.hole_diameters_m.len() {
            for j in i + 1..self.hole_diameters_m.len() {
                let (xi, yi) = self.hole_centers_xy_m[i];
                let (xj, yj) = self.hole_centers_xy_m[j];
                let dist = ((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt();
                let radii = 0.5 * (self.hole_diameters_m[i] + self.hole_diameters_m[j]);
                if dist <= radii {
                    return Err(Error::spec(format!(
                        "holes {i} and {j} overlap: center distance must exceed the radius sum"
                    )));
                }
            }
        }
        if !positive(self.scan_step_m) {
            return Err(Error::spec("scan_step_m must be positive"));
        }
        if self.grid_nx == 0 || self.grid_ny == 0 {
            return Err(Error::spec("grid must hold at least one pixel per axis"));
        }
        // Every hole fully inside the scanned extent.
        let x_max = (self.grid_nx - 1) as f64 * self.scan_step_m;
        let y_max = (self.grid_ny - 1) as f64 * self.scan_step_m;
        for (i, (&d, &(cx, cy))) in self
            .hole_diameters_m
            .iter()
            .zip(&self.hole_centers_xy_m)
            .enumerate()
        {
            let r = 0.5 * d;
            if cx - r < 0.0 || cx + r > x_max || cy - r < 0.0 || cy + r > y_max {
                return Err(Error::spec(format!(
                    "hole {i} must lie fully inside the scanned grid extent"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.hole_interface_reflectivity) {
            return Err(Error::spec("hole_interface_reflectivity must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.platform_reflectivity) {
            return Err(Error::spec("platform_reflectivity must lie in [0, 1]"));
        }
        if !non_negative(self.standoff_m) {
            return Err(Error::spec("standoff_m must be nonnegative"));
        }
        if !non_negative(self.beam_waist_m) {
            return Err(Error::spec("beam_waist_m must be nonnegative"));
        }
        if !(0.0..=1.0).contains(&self.clutter_reflectivity_max) {
            return Err(Error::spec("clutter_reflectivity_max must lie in [0, 1]"));
        }
        Ok(())
    }

    /// Depth of each layer's top interface plus the platform depth.
    fn interface_depths(&self) -> (Vec<f64>, f64) {
        let mut tops = Vec::with_capacity(self.layer_stack.len());
        let mut depth = self.standoff_m;
        for layer in &self.layer_stack {
            tops.push(depth);
            depth += layer.thickness_m;
        }
        (tops, depth)
    }

    fn pixel_index(&self, x: usize, y: usize) -> usize {
        x * self.grid_ny + y
    }
}

/// Exact geometry answers recorded alongside a built phantom.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    /// Analytic hole areas π·r² in m².
    pub per_defect_area_m2: Vec<f64>,
    /// Hole areas in mm² evaluated with π rounded to 3.14, the convention
    /// defect reports are compared against.
    pub per_defect_area_mm2_pi314: Vec<f64>,
    /// Pixels whose center falls inside each hole, at the scan step.
    pub per_defect_pixel_count: Vec<usize>,
    /// Per-pixel defect membership, indexed `x · grid_ny + y`.
    pub defect_mask: Vec<bool>,
    pub nx: usize,
    pub ny: usize,
    /// Depth of the defect-layer top interface below the reference plane.
    pub interface_b_depth_m: f64,
}

impl GroundTruth {
    pub fn mask_at(&self, x: usize, y: usize) -> bool {
        self.defect_mask[x * self.ny + y]
    }

    pub fn defect_count(&self) -> usize {
        self.per_defect_area_m2.len()
    }
}

/// Write the ground truth as a CSV sidecar: a comment line carrying the
/// defect-interface depth, then one row per defect.
pub fn write_ground_truth_csv<W: std::io::Write>(
    gt: &GroundTruth,
    writer: &mut W,
) -> Result<()> {
    writeln!(writer, "# interface_b_depth_m = {}", gt.interface_b_depth_m)?;
    writeln!(writer, "defect,diameter_mm,area_mm2,area_mm2_pi314,pixel_count")?;
    for (i, &area_m2) in gt.per_defect_area_m2.iter().enumerate() {
        let d_mm = 2.0 * (area_m2 / std::f64::consts::PI).sqrt() * 1e3;
        writeln!(
            writer,
            "{},{:.3},{},{:.3},{}",
            i + 1,
            d_mm,
            area_m2 * 1e6,
            gt.per_defect_area_mm2_pi314[i],
            gt.per_defect_pixel_count[i],
        )?;
    }
    Ok(())
}

/// Read the reference areas (the rounded-π mm² column) back from a
/// ground-truth CSV sidecar.
pub fn read_ground_truth_areas<R: std::io::Read>(reader: &mut R) -> Result<Vec<f64>> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut areas = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("defect,") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::format(format!(
                "ground-truth row needs 5 fields, got {}: `{line}`",
                fields.len()
            )));
        }
        let area: f64 = fields[3]
            .parse()
            .map_err(|_| Error::format(format!("bad area `{}`", fields[3])))?;
        areas.push(area);
    }
    Ok(areas)
}

/// Write the defect mask as a binary PGM (255 inside a defect).
pub fn write_defect_mask_pgm<W: std::io::Write>(
    gt: &GroundTruth,
    writer: &mut W,
) -> Result<()> {
    write!(writer, "P5\n{} {}\n255\n", gt.nx, gt.ny)?;
    let mut row = Vec::with_capacity(gt.nx);
    for y in 0..gt.ny {
        row.clear();
        for x in 0..gt.nx {
            row.push(if gt.mask_at(x, y) { 255u8 } else { 0u8 });
        }
        writer.write_all(&row)?;
    }
    Ok(())
}

/// A built sample: per-pixel reflector stacks plus ground truth.
#[derive(Debug, Clone)]
pub struct Phantom {
    pub spec: PhantomSpec,
    pub ground_truth: GroundTruth,
    reflectors: Vec<Vec<Reflector>>,
}

impl Phantom {
    pub fn reflectors_at(&self, x: usize, y: usize) -> &[Reflector] {
        &self.reflectors[self.spec.pixel_index(x, y)]
    }
}

// ---------------------------------------------------------------------------
// Build
// ---------------------------------------------------------------------------

/// Build the per-pixel reflector stacks and ground truth for a spec.
pub fn build_phantom(spec: &PhantomSpec) -> Result<Phantom> {
    spec.validate()?;

    let (nx, ny) = (spec.grid_nx, spec.grid_ny);
    let step = spec.scan_step_m;
    let (layer_tops, platform_depth) = spec.interface_depths();
    let b_depth = layer_tops[spec.defect_layer_index];

    // Defect mask: a pixel belongs to a hole iff its center lies within the
    // circle (boundary inclusive).
    let mut mask = vec![false; nx * ny];
    let mut pixel_counts = vec![0usize; spec.hole_diameters_m.len()];
    for x in 0..nx {
        for y in 0..ny {
            let px = x as f64 * step;
            let py = y as f64 * step;
            for (h, (&d, &(cx, cy))) in spec
                .hole_diameters_m
                .iter()
                .zip(&spec.hole_centers_xy_m)
                .enumerate()
            {
                let r = 0.5 * d;
                if (px - cx).powi(2) + (py - cy).powi(2) <= r * r {
                    mask[spec.pixel_index(x, y)] = true;
                    pixel_counts[h] += 1;
                    break;
                }
            }
        }
    }

    // Reflectivity map of the defect-layer top interface.
    let resin_refl = spec.layer_stack[spec.defect_layer_index].top_interface_reflectivity;
    let mut b_map: Vec<f64> = mask
        .iter()
        .map(|&hole| {
            if hole {
                spec.hole_interface_reflectivity
            } else {
                resin_refl
            }
        })
        .collect();
    if spec.beam_waist_m > 0.0 {
        let sigma_px = 0.5 * spec.beam_waist_m / step;
        b_map = gaussian_blur(&b_map, nx, ny, sigma_px);
    }

    // Clutter depth band between the surface and the defect interface.
    let surface_depth = layer_tops[0];
    let band_span = b_depth - surface_depth;
    let clutter_lo = surface_depth + CLUTTER_BAND.0 * band_span;
    let clutter_hi = surface_depth + CLUTTER_BAND.1 * band_span;

    let mut reflectors = Vec::with_capacity(nx * ny);
    for x in 0..nx {
        for y in 0..ny {
            let idx = spec.pixel_index(x, y);
            let mut stack = Vec::with_capacity(spec.layer_stack.len() + spec.clutter_count + 1);
            for (i, layer) in spec.layer_stack.iter().enumerate() {
                let refl = if i == spec.defect_layer_index {
                    b_map[idx]
                } else {
                    layer.top_interface_reflectivity
                };
                stack.push(Reflector {
                    path_difference_m: 2.0 * layer_tops[i],
                    reflectivity: refl,
                });
            }
            if spec.clutter_count > 0 && band_span > 0.0 {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(pixel_noise_seed(spec.clutter_seed, x, y));
                for _ in 0..spec.clutter_count {
                    let depth = rng.random_range(clutter_lo..clutter_hi);
                    let refl = rng.random_range(0.0..=spec.clutter_reflectivity_max);
                    stack.push(Reflector {
                        path_difference_m: 2.0 * depth,
                        reflectivity: refl,
                    });
                }
            }
            stack.push(Reflector {
                path_difference_m: 2.0 * platform_depth,
                reflectivity: spec.platform_reflectivity,
            });
            reflectors.push(stack);
        }
    }

    let areas_exact: Vec<f64> = spec
        .hole_diameters_m
        .iter()
        .map(|&d| std::f64::consts::PI * (0.5 * d).powi(2))
        .collect();
    // Reported reference areas round π to 3.14; keep that convention
    // alongside the exact values.
    #[allow(clippy::approx_constant)]
    let areas_pi314: Vec<f64> = spec
        .hole_diameters_m
        .iter()
        .map(|&d| 3.14 * (0.5 * d * 1e3).powi(2))
        .collect();

    Ok(Phantom {
        spec: spec.clone(),
        ground_truth: GroundTruth {
            per_defect_area_m2: areas_exact,
            per_defect_area_mm2_pi314: areas_pi314,
            per_defect_pixel_count: pixel_counts,
            defect_mask: mask,
            nx,
            ny,
            interface_b_depth_m: b_depth,
        },
        reflectors,
    })
}

/// Derive the per-pixel noise stream seed from a run seed and grid position.
pub fn pixel_noise_seed(rng_seed: u64, x: usize, y: usize) -> u64 {
    let pos = ((x as u64) << 32) ^ (y as u64 & 0xFFFF_FFFF);
    splitmix64(rng_seed ^ splitmix64(pos))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Separable Gaussian blur with edge renormalization.
fn gaussian_blur(map: &[f64], nx: usize, ny: usize, sigma_px: f64) -> Vec<f64> {
    if sigma_px <= 0.0 {
        return map.to_vec();
    }
    let radius = (3.0 * sigma_px).ceil() as isize;
    let kernel: Vec<f64> = (-radius..=radius)
        .map(|d| (-0.5 * (d as f64 / sigma_px).powi(2)).exp())
        .collect();

    let idx = |x: usize, y: usize| x * ny + y;
    let mut tmp = vec![0.0f64; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            let mut acc = 0.0;
            let mut weight = 0.0;
            for (k, &w) in kernel.iter().enumerate() {
                let xs = x as isize + k as isize - radius;
                if (0..nx as isize).contains(&xs) {
                    acc += w * map[idx(xs as usize, y)];
                    weight += w;
                }
            }
            tmp[idx(x, y)] = acc / weight;
        }
    }
    let mut out = vec![0.0f64; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            let mut acc = 0.0;
            let mut weight = 0.0;
            for (k, &w) in kernel.iter().enumerate() {
                let ys = y as isize + k as isize - radius;
                if (0..ny as isize).contains(&ys) {
                    acc += w * tmp[idx(x, ys as usize)];
                    weight += w;
                }
            }
            out[idx(x, y)] = acc / weight;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Scan
// ---------------------------------------------------------------------------

/// Raster-scan the phantom: one synthesized A-scan per grid position.
///
/// Columns are processed in parallel; each pixel draws its noise from an
/// independent stream seeded by `(rng_seed, x, y)`, so the result is
/// identical no matter how the pixels are scheduled.
pub fn scan_phantom(
    phantom: &Phantom,
    sweep: &SweepConfig,
    demod: &DemodConfig,
    interference: &InterferenceParams,
    noise_sigma: f64,
    rng_seed: u64,
) -> Result<VolumeScan> {
    sweep.validate()?;
    demod.validate(sweep)?;
    interference.validate()?;
    if !non_negative(noise_sigma) {
        return Err(Error::domain("noise_sigma must be nonnegative"));
    }

    let spec = &phantom.spec;
    let (nx, ny, nz) = (spec.grid_nx, spec.grid_ny, demod.n_depth_bins);
    let mut data = vec![0.0f64; nx * ny * nz];

    data.par_chunks_mut(nz)
        .enumerate()
        .try_for_each(|(c, column)| -> Result<()> {
            let (x, y) = (c / ny, c % ny);
            let scan = fmcw::synthesize_ascan(
                sweep,
                demod,
                interference,
                &phantom.reflectors[c],
                noise_sigma,
                pixel_noise_seed(rng_seed, x, y),
            )?;
            column.copy_from_slice(&scan.samples);
            Ok(())
        })?;

    Ok(VolumeScan::from_parts(
        nx,
        ny,
        nz,
        spec.scan_step_m,
        demod.depth_step_m(),
        Provenance::Raw,
        data,
    ))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
