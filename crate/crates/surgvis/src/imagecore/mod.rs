//! Foundational image and label types shared by every other module.
//!
//! Pixels are stored as normalized `f64` intensities in `[0, 1]`; quantization
//! to 8 bits happens only at file boundaries (`round(v * 255)` on save,
//! `v / 255` on load).

mod label;
mod manifest;

pub use label::{DistortionCategory, DistortionLabel, LabelError, Severity};
pub use manifest::{DatasetManifest, ManifestEntry, ManifestError, Split};

use sha2::{Digest, Sha256};
use std::io::Read;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImageError {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt data in {path}: {reason}")]
    CorruptData { path: PathBuf, reason: String },
    #[error("io failure: {0}")]
    IoFailure(String),
    #[error("invalid buffer: {0}")]
    InvalidBuffer(String),
}

/// Decoded RGB raster with per-channel intensities in `[0, 1]`, interleaved
/// row-major. Immutable by convention once built; cheap to clone at desk scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuf {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

pub const CHANNELS: usize = 3;

impl ImageBuf {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::InvalidBuffer("zero dimension".into()));
        }
        if data.len() != width * height * CHANNELS {
            return Err(ImageError::InvalidBuffer(format!(
                "data length {} != {}x{}x{}",
                data.len(),
                width,
                height,
                CHANNELS
            )));
        }
        if let Some(v) = data.iter().find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0) {
            return Err(ImageError::InvalidBuffer(format!("intensity {v} outside [0,1]")));
        }
        Ok(Self { width, height, data })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        Self::new(width, height, vec![value; width * height * CHANNELS]).expect("constant fill")
    }

    /// Build from a per-pixel closure returning `[r, g, b]`; values are clamped.
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> [f64; 3]) -> Self {
        let mut data = Vec::with_capacity(width * height * CHANNELS);
        for y in 0..height {
            for x in 0..width {
                let px = f(x, y);
                for c in px {
                    data.push(c.clamp(0.0, 1.0));
                }
            }
        }
        Self { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> [f64; 3] {
        let i = (y * self.width + x) * CHANNELS;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set(&mut self, x: usize, y: usize, px: [f64; 3]) {
        let i = (y * self.width + x) * CHANNELS;
        self.data[i] = px[0];
        self.data[i + 1] = px[1];
        self.data[i + 2] = px[2];
    }

    /// Same shape, data produced by mapping every channel value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// BT.601 luminance plane.
    pub fn luminance(&self) -> Vec<f64> {
        self.data
            .chunks_exact(CHANNELS)
            .map(|px| 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2])
            .collect()
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// 8-bit quantization with round-half-up (`f64::round` is half away from
    /// zero, which coincides for non-negative values).
    pub fn to_bytes8(&self) -> Vec<u8> {
        self.data.iter().map(|&v| (v * 255.0).round() as u8).collect()
    }

    pub fn from_bytes8(width: usize, height: usize, bytes: &[u8]) -> Result<Self, ImageError> {
        if bytes.len() != width * height * CHANNELS {
            return Err(ImageError::InvalidBuffer(format!(
                "byte length {} != {}x{}x{}",
                bytes.len(),
                width,
                height,
                CHANNELS
            )));
        }
        Ok(Self {
            width,
            height,
            data: bytes.iter().map(|&b| b as f64 / 255.0).collect(),
        })
    }

    /// Content hash over dimensions and raw little-endian f64 bytes; used by
    /// provenance chains and determinism checks.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.width as u64).to_le_bytes());
        hasher.update((self.height as u64).to_le_bytes());
        for v in &self.data {
            hasher.update(v.to_le_bytes());
        }
        hex_digest(&hasher.finalize())
    }

    /// Bilinear resize; used for optional ingest resizing.
    pub fn resize(&self, width: usize, height: usize) -> Self {
        if width == self.width && height == self.height {
            return self.clone();
        }
        ImageBuf::from_fn(width, height, |x, y| {
            let fx = (x as f64 + 0.5) * self.width as f64 / width as f64 - 0.5;
            let fy = (y as f64 + 0.5) * self.height as f64 / height as f64 - 0.5;
            let x0 = fx.floor().clamp(0.0, (self.width - 1) as f64) as usize;
            let y0 = fy.floor().clamp(0.0, (self.height - 1) as f64) as usize;
            let x1 = (x0 + 1).min(self.width - 1);
            let y1 = (y0 + 1).min(self.height - 1);
            let dx = (fx - x0 as f64).clamp(0.0, 1.0);
            let dy = (fy - y0 as f64).clamp(0.0, 1.0);
            let mut out = [0.0; 3];
            for (c, o) in out.iter_mut().enumerate() {
                let p00 = self.get(x0, y0)[c];
                let p10 = self.get(x1, y0)[c];
                let p01 = self.get(x0, y1)[c];
                let p11 = self.get(x1, y1)[c];
                let top = p00 * (1.0 - dx) + p10 * dx;
                let bot = p01 * (1.0 - dx) + p11 * dx;
                *o = top * (1.0 - dy) + bot * dy;
            }
            out
        })
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

fn format_of(path: &Path) -> Result<&'static str, ImageError> {
    match path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()) {
        Some(ext) if ext == "png" => Ok("png"),
        Some(ext) if ext == "ppm" => Ok("ppm"),
        other => Err(ImageError::UnsupportedFormat(format!(
            "{} (expected .png or .ppm)",
            other.unwrap_or_else(|| "<none>".into())
        ))),
    }
}

/// Load an 8-bit PNG or binary PPM into a normalized buffer. Lossless for
/// 8-bit inputs: byte value v maps to v/255.
pub fn load_image(path: &Path) -> Result<ImageBuf, ImageError> {
    let format = format_of(path)?;
    if !path.exists() {
        return Err(ImageError::FileNotFound(path.to_path_buf()));
    }
    match format {
        "png" => load_png(path),
        "ppm" => load_ppm(path),
        _ => unreachable!(),
    }
}

/// Save as 8-bit PNG or binary PPM; quantization is `round(v * 255)`.
pub fn save_image(img: &ImageBuf, path: &Path) -> Result<(), ImageError> {
    let format = format_of(path)?;
    match format {
        "png" => save_png(img, path),
        "ppm" => save_ppm(img, path),
        _ => unreachable!(),
    }
}

/// PNG-encode to an in-memory byte vector (deterministic for a given buffer).
pub fn encode_png(img: &ImageBuf) -> Result<Vec<u8>, ImageError> {
    let raw = img.to_bytes8();
    let rgb: image::RgbImage =
        image::ImageBuffer::from_raw(img.width() as u32, img.height() as u32, raw)
            .ok_or_else(|| ImageError::InvalidBuffer("png buffer".into()))?;
    let mut out = std::io::Cursor::new(Vec::new());
    rgb.write_to(&mut out, image::ImageFormat::Png)
        .map_err(|e| ImageError::IoFailure(e.to_string()))?;
    Ok(out.into_inner())
}

/// Decode PNG bytes produced by [`encode_png`] (or any 8-bit RGB PNG).
pub fn decode_png(bytes: &[u8]) -> Result<ImageBuf, ImageError> {
    let dynimg = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
        .map_err(|e| ImageError::CorruptData { path: PathBuf::from("<memory>"), reason: e.to_string() })?;
    dynimg_to_buf(dynimg, Path::new("<memory>"))
}

fn dynimg_to_buf(dynimg: image::DynamicImage, path: &Path) -> Result<ImageBuf, ImageError> {
    use image::DynamicImage::*;
    match &dynimg {
        ImageLuma16(_) | ImageLumaA16(_) | ImageRgb16(_) | ImageRgba16(_) | ImageRgb32F(_)
        | ImageRgba32F(_) => {
            return Err(ImageError::UnsupportedFormat(format!(
                "{}: only 8-bit images are supported",
                path.display()
            )));
        }
        _ => {}
    }
    let rgb = dynimg.to_rgb8();
    ImageBuf::from_bytes8(rgb.width() as usize, rgb.height() as usize, rgb.as_raw())
}

fn load_png(path: &Path) -> Result<ImageBuf, ImageError> {
    let bytes = std::fs::read(path).map_err(|e| ImageError::IoFailure(e.to_string()))?;
    let dynimg = image::load_from_memory_with_format(&bytes, image::ImageFormat::Png)
        .map_err(|e| ImageError::CorruptData { path: path.to_path_buf(), reason: e.to_string() })?;
    dynimg_to_buf(dynimg, path)
}

fn save_png(img: &ImageBuf, path: &Path) -> Result<(), ImageError> {
    let bytes = encode_png(img)?;
    std::fs::write(path, bytes).map_err(|e| ImageError::IoFailure(e.to_string()))
}

// Binary PPM (P6, maxval 255): dependency-light fallback format.

fn load_ppm(path: &Path) -> Result<ImageBuf, ImageError> {
    let corrupt = |reason: &str| ImageError::CorruptData {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .map_err(|e| ImageError::IoFailure(e.to_string()))?
        .read_to_end(&mut bytes)
        .map_err(|e| ImageError::IoFailure(e.to_string()))?;
    if bytes.len() < 2 || &bytes[..2] != b"P6" {
        return Err(corrupt("missing P6 magic"));
    }
    let mut pos = 2;
    let mut fields = Vec::new();
    while fields.len() < 3 {
        // skip whitespace and '#' comments between header fields
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(corrupt("truncated header"));
        }
        let field = std::str::from_utf8(&bytes[start..pos]).map_err(|_| corrupt("non-ascii header"))?;
        fields.push(field.parse::<usize>().map_err(|_| corrupt("bad header field"))?);
    }
    if pos >= bytes.len() {
        return Err(corrupt("truncated after header"));
    }
    pos += 1; // single whitespace after maxval
    let (width, height, maxval) = (fields[0], fields[1], fields[2]);
    if maxval != 255 {
        return Err(ImageError::UnsupportedFormat(format!(
            "{}: PPM maxval {maxval} (only 255 supported)",
            path.display()
        )));
    }
    let need = width * height * CHANNELS;
    let pixels = &bytes[pos..];
    if pixels.len() < need {
        return Err(corrupt(&format!("expected {need} pixel bytes, found {}", pixels.len())));
    }
    ImageBuf::from_bytes8(width, height, &pixels[..need])
}

fn save_ppm(img: &ImageBuf, path: &Path) -> Result<(), ImageError> {
    let mut out = Vec::with_capacity(img.pixel_count() * CHANNELS + 32);
    write!(out, "P6\n{} {}\n255\n", img.width(), img.height())
        .map_err(|e| ImageError::IoFailure(e.to_string()))?;
    out.extend_from_slice(&img.to_bytes8());
    std::fs::write(path, out).map_err(|e| ImageError::IoFailure(e.to_string()))
}
