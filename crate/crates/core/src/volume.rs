//! Volumetric scan assembly, enhancement, normalization, slicing, and export.
//!
//! A [`VolumeScan`] holds one depth profile per raster position in z-fastest
//! order (each A-scan is contiguous). Enhancement runs the wavelet transform
//! down every column, normalization rescales the whole volume to unit peak
//! magnitude, and slice extraction produces the XY images the defect
//! measurements run on.
//!
//! The on-disk format is fixed: magic `TVOL`, format version u16, nx/ny/nz as
//! u32, step/depth-bin sizes as f64, one provenance byte (bit 7 flags a
//! normalized volume), then nx·ny·nz f32 samples, all little-endian,
//! z-fastest.

use crate::cwt::{self, CwtParams, ScalePolicy, WaveletKind};
use crate::error::{positive, Error, Result};
use rayon::prelude::*;
use std::io::{Read, Write};

/// How a volume's samples were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Demodulated reflection magnitudes straight from the scan.
    Raw,
    /// Wavelet coefficient magnitudes at the processing scale.
    Enhanced(WaveletKind),
}

impl Provenance {
    fn code(&self) -> u8 {
        match self {
            Provenance::Raw => 0,
            Provenance::Enhanced(WaveletKind::Morlet) => 1,
            Provenance::Enhanced(WaveletKind::GaussianBell) => 2,
            Provenance::Enhanced(WaveletKind::MexicanHat) => 3,
        }
    }

    fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(Provenance::Raw),
            1 => Ok(Provenance::Enhanced(WaveletKind::Morlet)),
            2 => Ok(Provenance::Enhanced(WaveletKind::GaussianBell)),
            3 => Ok(Provenance::Enhanced(WaveletKind::MexicanHat)),
            other => Err(Error::format(format!("unknown provenance byte {other}"))),
        }
    }
}

/// 3-D grid of reflection values plus grid metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeScan {
    nx: usize,
    ny: usize,
    nz: usize,
    /// Raster step in meters.
    pub step_xy_m: f64,
    /// One-way depth per z bin in meters.
    pub depth_bin_m: f64,
    pub provenance: Provenance,
    /// Set by [`normalize_volume`]; a normalized volume has peak |value| 1.
    pub normalized: bool,
    data: Vec<f64>,
}

impl VolumeScan {
    /// Assemble a volume from raw parts. `data` is z-fastest: the A-scan of
    /// pixel (x, y) occupies `data[(x·ny + y)·nz ..][..nz]`.
    pub fn from_parts(
        nx: usize,
        ny: usize,
        nz: usize,
        step_xy_m: f64,
        depth_bin_m: f64,
        provenance: Provenance,
        data: Vec<f64>,
    ) -> Self {
        assert_eq!(data.len(), nx * ny * nz, "data length must match the grid");
        Self {
            nx,
            ny,
            nz,
            step_xy_m,
            depth_bin_m,
            provenance,
            normalized: false,
            data,
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.nx, self.ny, self.nz)
    }

    pub fn at(&self, x: usize, y: usize, z: usize) -> f64 {
        self.data[(x * self.ny + y) * self.nz + z]
    }

    /// The contiguous A-scan at one raster position.
    pub fn column(&self, x: usize, y: usize) -> &[f64] {
        let start = (x * self.ny + y) * self.nz;
        &self.data[start..start + self.nz]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Largest absolute sample value.
    pub fn peak_magnitude(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }
}

/// One XY image extracted from a volume at a fixed depth bin.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceImage {
    nx: usize,
    ny: usize,
    /// Depth bin this slice was read from.
    pub z_index: usize,
    /// Raster step in meters.
    pub step_xy_m: f64,
    pixels: Vec<f64>,
}

impl SliceImage {
    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.pixels[x * self.ny + y]
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    /// Pixel area in mm² at this raster step.
    pub fn pixel_area_mm2(&self) -> f64 {
        (self.step_xy_m * 1e3).powi(2)
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Run the wavelet enhancement down every column of a raw volume.
///
/// Under [`ScalePolicy::FixedScaleAuto`] the scale is matched once against
/// the mean A-scan of the whole volume and shared by every column, then the
/// columns are processed in parallel.
pub fn enhance_volume(
    raw: &VolumeScan,
    kind: WaveletKind,
    params: &CwtParams,
    policy: ScalePolicy,
) -> Result<VolumeScan> {
    if raw.provenance != Provenance::Raw {
        return Err(Error::domain("enhance_volume expects a raw volume"));
    }
    params.validate()?;

    let policy = match policy {
        ScalePolicy::FixedScaleAuto => {
            let reference = mean_ascan(raw);
            ScalePolicy::FixedScale(cwt::match_scale(&reference, kind, params))
        }
        other => other,
    };

    let nz = raw.nz;
    let mut data = vec![0.0f64; raw.data.len()];
    data.par_chunks_mut(nz)
        .zip(raw.data.par_chunks(nz))
        .try_for_each(|(out, column)| -> Result<()> {
            let enhanced = cwt::enhance_ascan(column, kind, params, policy)?;
            out.copy_from_slice(&enhanced);
            Ok(())
        })?;

    Ok(VolumeScan {
        nx: raw.nx,
        ny: raw.ny,
        nz: raw.nz,
        step_xy_m: raw.step_xy_m,
        depth_bin_m: raw.depth_bin_m,
        provenance: Provenance::Enhanced(kind),
        normalized: false,
        data,
    })
}

/// Mean A-scan over all raster positions, accumulated sequentially. Serves
/// as the deterministic reference profile for automatic scale matching.
pub fn mean_ascan(v: &VolumeScan) -> Vec<f64> {
    let mut mean = vec![0.0f64; v.nz];
    for column in v.data.chunks(v.nz) {
        for (m, &s) in mean.iter_mut().zip(column) {
            *m += s;
        }
    }
    let count = (v.nx * v.ny) as f64;
    for m in &mut mean {
        *m /= count;
    }
    mean
}

/// Rescale so the largest absolute value becomes exactly 1.
pub fn normalize_volume(v: &VolumeScan) -> Result<VolumeScan> {
    let peak = v.peak_magnitude();
    if !positive(peak) {
        return Err(Error::degenerate(
            "cannot normalize an all-zero volume",
        ));
    }
    let mut out = v.clone();
    for s in &mut out.data {
        *s /= peak;
    }
    out.normalized = true;
    Ok(out)
}

/// Find the depth bin with the largest spatial variance inside the window
/// `[z_lo, z_hi)` — the defect layer splits into two amplitude populations,
/// which maximizes the across-pixel variance.
///
/// Ties resolve to the shallowest bin, so a homogeneous volume yields `z_lo`.
pub fn locate_interface_b(v: &VolumeScan, z_lo: usize, z_hi: usize) -> Result<usize> {
    if z_lo >= z_hi || z_hi > v.nz {
        return Err(Error::domain(format!(
            "search window [{z_lo}, {z_hi}) must be nonempty and within 0..{}",
            v.nz
        )));
    }
    let count = (v.nx * v.ny) as f64;
    let mut best = (z_lo, f64::NEG_INFINITY);
    for z in z_lo..z_hi {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for column in v.data.chunks(v.nz) {
            let s = column[z];
            sum += s;
            sum_sq += s * s;
        }
        let mean = sum / count;
        let var = (sum_sq / count - mean * mean).max(0.0);
        if var > best.1 {
            best = (z, var);
        }
    }
    Ok(best.0)
}

/// Copy the XY image at depth bin `z`.
pub fn extract_slice(v: &VolumeScan, z: usize) -> Result<SliceImage> {
    if z >= v.nz {
        return Err(Error::domain(format!(
            "slice index {z} out of range 0..{}",
            v.nz
        )));
    }
    let mut pixels = Vec::with_capacity(v.nx * v.ny);
    for column in v.data.chunks(v.nz) {
        pixels.push(column[z]);
    }
    Ok(SliceImage {
        nx: v.nx,
        ny: v.ny,
        z_index: z,
        step_xy_m: v.step_xy_m,
        pixels,
    })
}

// ---------------------------------------------------------------------------
// TVOL file format
// ---------------------------------------------------------------------------

const TVOL_MAGIC: &[u8; 4] = b"TVOL";
const TVOL_VERSION: u16 = 1;
const NORMALIZED_FLAG: u8 = 0x80;

/// Serialize a volume to the TVOL byte format.
pub fn write_tvol<W: Write>(v: &VolumeScan, writer: &mut W) -> Result<()> {
    writer.write_all(TVOL_MAGIC)?;
    writer.write_all(&TVOL_VERSION.to_le_bytes())?;
    writer.write_all(&(v.nx as u32).to_le_bytes())?;
    writer.write_all(&(v.ny as u32).to_le_bytes())?;
    writer.write_all(&(v.nz as u32).to_le_bytes())?;
    writer.write_all(&v.step_xy_m.to_le_bytes())?;
    writer.write_all(&v.depth_bin_m.to_le_bytes())?;
    let mut code = v.provenance.code();
    if v.normalized {
        code |= NORMALIZED_FLAG;
    }
    writer.write_all(&[code])?;
    let mut buf = Vec::with_capacity(v.data.len() * 4);
    for &s in &v.data {
        buf.extend_from_slice(&(s as f32).to_le_bytes());
    }
    writer.write_all(&buf)?;
    Ok(())
}

/// Deserialize a TVOL payload. Sample values round-trip through f32.
pub fn read_tvol<R: Read>(reader: &mut R) -> Result<VolumeScan> {
    let mut magic = [0u8; 4];
    reader
        .read_exact(&mut magic)
        .map_err(|_| Error::format("volume file too short for its header"))?;
    if &magic != TVOL_MAGIC {
        return Err(Error::format("bad magic bytes: not a TVOL volume"));
    }
    let version = u16::from_le_bytes(read_array(reader)?);
    if version != TVOL_VERSION {
        return Err(Error::format(format!(
            "unsupported TVOL version {version} (expected {TVOL_VERSION})"
        )));
    }
    let nx = u32::from_le_bytes(read_array(reader)?) as usize;
    let ny = u32::from_le_bytes(read_array(reader)?) as usize;
    let nz = u32::from_le_bytes(read_array(reader)?) as usize;
    let step_xy_m = f64::from_le_bytes(read_array(reader)?);
    let depth_bin_m = f64::from_le_bytes(read_array(reader)?);
    let [code] = read_array::<1, R>(reader)?;
    let normalized = code & NORMALIZED_FLAG != 0;
    let provenance = Provenance::from_code(code & !NORMALIZED_FLAG)?;

    let count = nx
        .checked_mul(ny)
        .and_then(|v| v.checked_mul(nz))
        .ok_or_else(|| Error::format("volume dimensions overflow"))?;
    let mut buf = vec![0u8; count * 4];
    reader
        .read_exact(&mut buf)
        .map_err(|_| Error::format("volume file truncated: fewer samples than the header says"))?;
    let data = buf
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]) as f64)
        .collect();

    Ok(VolumeScan {
        nx,
        ny,
        nz,
        step_xy_m,
        depth_bin_m,
        provenance,
        normalized,
        data,
    })
}

fn read_array<const N: usize, R: Read>(reader: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    reader
        .read_exact(&mut buf)
        .map_err(|_| Error::format("volume file too short for its header"))?;
    Ok(buf)
}

// ---------------------------------------------------------------------------
// Slice export
// ---------------------------------------------------------------------------

/// Write a slice as an 8-bit binary PGM (P5), mapping [min, max] linearly to
/// 0..=255. A constant slice maps to all zeros.
pub fn write_slice_pgm<W: Write>(slice: &SliceImage, writer: &mut W) -> Result<()> {
    let (nx, ny) = slice.dims();
    let min = slice.pixels.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = slice.pixels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;

    write!(writer, "P5\n{nx} {ny}\n255\n")?;
    let mut row = Vec::with_capacity(nx);
    for y in 0..ny {
        row.clear();
        for x in 0..nx {
            let v = slice.at(x, y);
            let g = if span > 0.0 {
                (255.0 * (v - min) / span).round() as u8
            } else {
                0
            };
            row.push(g);
        }
        writer.write_all(&row)?;
    }
    Ok(())
}

/// Write a slice as CSV, one row per y, full f64 precision.
pub fn write_slice_csv<W: Write>(slice: &SliceImage, writer: &mut W) -> Result<()> {
    let (nx, ny) = slice.dims();
    for y in 0..ny {
        let mut line = String::new();
        for x in 0..nx {
            if x > 0 {
                line.push(',');
            }
            line.push_str(&format!("{}", slice.at(x, y)));
        }
        line.push('\n');
        writer.write_all(line.as_bytes())?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
