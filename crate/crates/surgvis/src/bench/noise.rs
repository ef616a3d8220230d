//! Smooth multi-octave value noise, used as the optical-depth field for
//! synthetic smoke and as the base layer of generated clean images.

use crate::rng::{Rng, uniform};

/// Multi-octave value noise normalized to span exactly [0, 1].
/// Octave `o` uses a lattice of `base << o` cells with amplitude `0.5^o`.
pub fn value_noise_field(width: usize, height: usize, octaves: usize, rng: &mut Rng) -> Vec<f64> {
    assert!(width > 0 && height > 0);
    let octaves = octaves.max(1);
    let mut field = vec![0.0f64; width * height];
    let mut amplitude = 1.0;
    for o in 0..octaves {
        let cells = 4usize << o;
        add_octave(&mut field, width, height, cells, amplitude, rng);
        amplitude *= 0.5;
    }
    let min = field.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = field.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    if span < 1e-12 {
        return vec![0.0; width * height];
    }
    for v in &mut field {
        *v = (*v - min) / span;
    }
    field
}

fn add_octave(field: &mut [f64], width: usize, height: usize, cells: usize, amp: f64, rng: &mut Rng) {
    let gw = cells + 1;
    let gh = cells + 1;
    let lattice: Vec<f64> = (0..gw * gh).map(|_| uniform(rng)).collect();
    let smooth = |t: f64| t * t * (3.0 - 2.0 * t);
    for y in 0..height {
        let fy = y as f64 / height as f64 * cells as f64;
        let y0 = (fy as usize).min(cells - 1);
        let ty = smooth(fy - y0 as f64);
        for x in 0..width {
            let fx = x as f64 / width as f64 * cells as f64;
            let x0 = (fx as usize).min(cells - 1);
            let tx = smooth(fx - x0 as f64);
            let v00 = lattice[y0 * gw + x0];
            let v10 = lattice[y0 * gw + x0 + 1];
            let v01 = lattice[(y0 + 1) * gw + x0];
            let v11 = lattice[(y0 + 1) * gw + x0 + 1];
            let top = v00 + (v10 - v00) * tx;
            let bot = v01 + (v11 - v01) * tx;
            field[y * width + x] += amp * (top + (bot - top) * ty);
        }
    }
}
