//! Shared generators and independent reference implementations for tests.
#![allow(dead_code)]

use mosaic_enhance::{ColorImage, ColorModel, GrayImage};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_gray(rng: &mut StdRng, h: usize, w: usize) -> GrayImage {
    GrayImage::new(h, w, (0..h * w).map(|_| rng.gen_range(0.0..255.0)).collect()).unwrap()
}

pub fn random_color(rng: &mut StdRng, h: usize, w: usize) -> ColorImage {
    let planes = [(); 3].map(|_| (0..h * w).map(|_| rng.gen_range(0.0..255.0)).collect());
    ColorImage::new(h, w, ColorModel::Rgb, planes).unwrap()
}

/// Integer-valued 8-bit color image, as decoded from a file.
pub fn random_color_u8(rng: &mut StdRng, h: usize, w: usize) -> ColorImage {
    let bytes: Vec<u8> = (0..h * w * 3).map(|_| rng.gen()).collect();
    ColorImage::from_rgb8(h, w, &bytes).unwrap()
}

/// Direct double sum `F(p,s) = sum x(n,m) exp(-2πi (pn/H + sm/W))`.
pub fn naive_dft2(img: &GrayImage) -> Vec<Complex64> {
    let (h, w) = (img.height(), img.width());
    let mut out = vec![Complex64::new(0.0, 0.0); h * w];
    for p in 0..h {
        for s in 0..w {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..h {
                for m in 0..w {
                    // reduce the phase index exactly before going to floating point
                    let a = ((p * n) % h) as f64 / h as f64 + ((s * m) % w) as f64 / w as f64;
                    acc += img.get(n, m) * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * a);
                }
            }
            out[p * w + s] = acc;
        }
    }
    out
}

fn ratio_term(max: f64, min: f64, eps: f64) -> f64 {
    20.0 * ((max + eps) / (min + eps)).log10()
}

/// Block scan over explicit coordinates, planes visited in the outer loop.
pub fn brute_ceme(planes: &[&[f64]], h: usize, w: usize, l1: usize, l2: usize, eps: f64) -> f64 {
    let (k1, k2) = (h / l1, w / l2);
    let mut total = 0.0;
    for k in 0..k1 {
        for l in 0..k2 {
            let mut values = Vec::new();
            for plane in planes {
                for i in 0..l1 {
                    for j in 0..l2 {
                        values.push(plane[(k * l1 + i) * w + l * l2 + j]);
                    }
                }
            }
            let max = values.iter().cloned().fold(f64::MIN, f64::max);
            let min = values.iter().cloned().fold(f64::MAX, f64::min);
            total += ratio_term(max, min, eps);
        }
    }
    total / (k1 * k2) as f64
}

pub fn brute_eme(img: &GrayImage, l1: usize, l2: usize, eps: f64) -> f64 {
    brute_ceme(&[img.data()], img.height(), img.width(), l1, l2, eps)
}

/// Relative max error between two complex arrays, scaled by the largest reference magnitude.
pub fn rel_err(actual: &[Complex64], expected: &[Complex64]) -> f64 {
    let scale = expected.iter().map(|z| z.norm()).fold(1e-300, f64::max);
    actual
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Smooth scene with texture, each channel affinely compressed into `[lo, hi]`.
pub fn low_contrast_scene(h: usize, w: usize, lo: f64, hi: f64, seed: u64) -> ColorImage {
    let mut rng = rng(seed);
    let mut planes: [Vec<f64>; 3] = Default::default();
    for (c, plane) in planes.iter_mut().enumerate() {
        let raw: Vec<f64> = (0..h * w)
            .map(|i| {
                let (y, x) = ((i / w) as f64, (i % w) as f64);
                let phase = c as f64 * 0.7;
                (x / 9.0 + phase).sin() * 40.0
                    + (y / 13.0 - phase).cos() * 35.0
                    + ((x + y) / 5.0).sin() * 15.0
                    + if ((x / 16.0).floor() + (y / 16.0).floor()) as i64 % 2 == 0 {
                        30.0
                    } else {
                        -30.0
                    }
                    + rng.gen_range(-10.0..10.0)
            })
            .collect();
        *plane = raw;
    }
    let all = planes.iter().flatten();
    let min = all.clone().cloned().fold(f64::MAX, f64::min);
    let max = all.cloned().fold(f64::MIN, f64::max);
    let planes = planes.map(|p| {
        p.into_iter()
            .map(|v| (lo + (v - min) / (max - min) * (hi - lo)).round())
            .collect()
    });
    ColorImage::new(h, w, ColorModel::Rgb, planes).unwrap()
}
