//! Synthetic clean-image generator.
//!
//! The benchmark accepts any clean corpus via a manifest; this generator makes
//! the pipeline self-contained for tests and demos. Images are colorful
//! compositions with saturated palettes (keeping the dark channel near zero,
//! which the dehazing operator assumes of haze-free content), hard-edged
//! shapes (so deblurring has structure to recover), a few bright highlights
//! and mid-range exposure.

use super::noise::value_noise_field;
use crate::imagecore::{DatasetManifest, ImageBuf, ManifestEntry, Split, save_image};
use crate::rng::{Rng, derive_seed, seeded, uniform, uniform_in};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("io failure: {0}")]
    Io(String),
    #[error(transparent)]
    Image(#[from] crate::imagecore::ImageError),
    #[error(transparent)]
    Manifest(#[from] crate::imagecore::manifest_error::ManifestError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub count: usize,
    pub width: usize,
    pub height: usize,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self { count: 64, width: 64, height: 64, seed: 0 }
    }
}

/// Generate `count` clean images under `out_dir/clean/` plus a manifest at
/// `out_dir/manifest.json` (all entries labeled `normal`, split `train`).
pub fn generate_clean_corpus(
    config: &CorpusConfig,
    out_dir: &Path,
) -> Result<DatasetManifest, CorpusError> {
    let clean_dir = out_dir.join("clean");
    std::fs::create_dir_all(&clean_dir).map_err(|e| CorpusError::Io(e.to_string()))?;
    let mut entries = Vec::with_capacity(config.count);
    for i in 0..config.count {
        let mut rng = seeded(derive_seed(config.seed, &format!("clean/{i}")));
        let img = clean_image(config.width, config.height, &mut rng);
        let rel = PathBuf::from(format!("clean/img{i:04}.png"));
        save_image(&img, &out_dir.join(&rel))?;
        entries.push(ManifestEntry {
            id: format!("clean{i:04}"),
            clean_path: Some(rel.clone()),
            distorted_path: rel,
            label: crate::imagecore::DistortionLabel::normal(),
            split: Split::Train,
        });
    }
    let manifest = DatasetManifest::new(out_dir, entries)?;
    manifest.save(&out_dir.join("manifest.json"))?;
    Ok(manifest)
}

/// One synthetic clean frame.
pub fn clean_image(width: usize, height: usize, rng: &mut Rng) -> ImageBuf {
    let hue_field = value_noise_field(width, height, 3, rng);
    let value_field = value_noise_field(width, height, 3, rng);
    let hue_base = uniform_in(rng, 0.0, 360.0);
    let hue_span = uniform_in(rng, 60.0, 160.0);

    let mut img = ImageBuf::from_fn(width, height, |x, y| {
        let i = y * width + x;
        let h = (hue_base + hue_span * hue_field[i]).rem_euclid(360.0);
        let v = 0.30 + 0.45 * value_field[i];
        hsv_to_rgb(h, 0.97, v)
    });

    // Hard-edged discs: a few bright saturated highlights, a few dark spots,
    // the rest mid-range.
    let n_discs = 4 + (uniform(rng) * 4.0) as usize;
    for d in 0..n_discs {
        let cx = uniform_in(rng, 0.0, width as f64);
        let cy = uniform_in(rng, 0.0, height as f64);
        let r = uniform_in(rng, 0.06, 0.18) * width.min(height) as f64;
        let hue = uniform_in(rng, 0.0, 360.0);
        let v = match d % 3 {
            0 => uniform_in(rng, 0.80, 0.93), // highlight
            1 => uniform_in(rng, 0.05, 0.15), // shadow
            _ => uniform_in(rng, 0.35, 0.70),
        };
        let color = hsv_to_rgb(hue, 0.97, v);
        stamp_disc(&mut img, cx, cy, r, color);
    }
    img
}

fn stamp_disc(img: &mut ImageBuf, cx: f64, cy: f64, r: f64, color: [f64; 3]) {
    let (w, h) = (img.width(), img.height());
    let x0 = ((cx - r - 1.0).floor().max(0.0)) as usize;
    let y0 = ((cy - r - 1.0).floor().max(0.0)) as usize;
    let x1 = ((cx + r + 1.0).ceil().min(w as f64 - 1.0)) as usize;
    let y1 = ((cy + r + 1.0).ceil().min(h as f64 - 1.0)) as usize;
    for y in y0..=y1 {
        for x in x0..=x1 {
            let dist = ((x as f64 - cx).powi(2) + (y as f64 - cy).powi(2)).sqrt();
            // one-pixel soft edge
            let cover = (r - dist + 0.5).clamp(0.0, 1.0);
            if cover > 0.0 {
                let base = img.get(x, y);
                let mut px = [0.0; 3];
                for c in 0..3 {
                    px[c] = base[c] * (1.0 - cover) + color[c] * cover;
                }
                img.set(x, y, px);
            }
        }
    }
}

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [f64; 3] {
    let h = h.rem_euclid(360.0) / 60.0;
    let c = v * s;
    let x = c * (1.0 - (h.rem_euclid(2.0) - 1.0).abs());
    let (r, g, b) = match h as usize {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [r + m, g + m, b + m]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn clean_images_have_near_zero_dark_channel_and_mid_exposure() {
        for seed in 0..10u64 {
            let img = clean_image(64, 64, &mut seeded(seed));
            let min_channel_mean = img
                .data()
                .chunks_exact(3)
                .map(|px| px.iter().cloned().fold(1.0f64, f64::min))
                .sum::<f64>()
                / img.pixel_count() as f64;
            assert!(min_channel_mean < 0.05, "seed {seed}: dark-channel proxy {min_channel_mean}");
            let mean = img.mean();
            assert!((0.15..0.6).contains(&mean), "seed {seed}: mean {mean}");
        }
    }

    #[test]
    fn corpus_generation_is_deterministic() {
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        let cfg = CorpusConfig { count: 3, width: 16, height: 16, seed: 9 };
        generate_clean_corpus(&cfg, d1.path()).unwrap();
        generate_clean_corpus(&cfg, d2.path()).unwrap();
        for i in 0..3 {
            let a = std::fs::read(d1.path().join(format!("clean/img{i:04}.png"))).unwrap();
            let b = std::fs::read(d2.path().join(format!("clean/img{i:04}.png"))).unwrap();
            assert_eq!(a, b);
        }
    }
}
