//! 2-D discrete Fourier transform, spectrum display helpers and alpha-rooting.
//!
//! Convention: forward kernel `exp(-2πi (p n / H + s m / W))`, unnormalized;
//! the inverse carries the `1 / (H W)` factor. Any size is accepted, the 1-D
//! passes come from `rustfft` which covers every length (mixed radix, Rader
//! and Bluestein).

mod alpha_root;
mod fft2;

pub use alpha_root::{alpha_root, alpha_root_enhance, alpha_root_reconstruct, AlphaMode, NOISE_FLOOR};
pub use fft2::{dft2, idft2, Reconstruction};

use num_complex::Complex64;

use crate::image::GrayImage;

/// Where the DC bin lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// DC at `(0, 0)`.
    Natural,
    /// DC at `(H / 2, W / 2)` (floor division).
    Centered,
}

/// Complex `H x W` transform, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    height: usize,
    width: usize,
    data: Vec<Complex64>,
    convention: Convention,
}

impl Spectrum {
    pub fn new(height: usize, width: usize, data: Vec<Complex64>, convention: Convention) -> Self {
        assert_eq!(data.len(), height * width, "spectrum data length");
        Self {
            height,
            width,
            data,
            convention,
        }
    }

    pub fn zeros(height: usize, width: usize) -> Self {
        Self::new(
            height,
            width,
            vec![Complex64::new(0.0, 0.0); height * width],
            Convention::Natural,
        )
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    #[inline]
    pub fn get(&self, p: usize, s: usize) -> Complex64 {
        self.data[p * self.width + s]
    }

    pub fn set(&mut self, p: usize, s: usize, value: Complex64) {
        self.data[p * self.width + s] = value;
    }

    /// Index of the DC bin under the current convention.
    pub fn dc_index(&self) -> (usize, usize) {
        match self.convention {
            Convention::Natural => (0, 0),
            Convention::Centered => (self.height / 2, self.width / 2),
        }
    }

    pub fn dc(&self) -> Complex64 {
        let (p, s) = self.dc_index();
        self.get(p, s)
    }

    /// Largest `|F(p,s) - conj(F(-p,-s))|` relative to the largest magnitude.
    ///
    /// Zero for the exact transform of a real image.
    pub fn hermitian_deviation(&self) -> f64 {
        let natural = self.to_natural();
        let (h, w) = (natural.height, natural.width);
        let scale = natural.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for p in 0..h {
            for s in 0..w {
                let mirror = natural.get((h - p) % h, (w - s) % w).conj();
                worst = worst.max((natural.get(p, s) - mirror).norm());
            }
        }
        worst / scale
    }

    fn to_natural(&self) -> Spectrum {
        match self.convention {
            Convention::Natural => self.clone(),
            Convention::Centered => center_shift(self),
        }
    }

    fn rolled(&self, dp: usize, ds: usize, convention: Convention) -> Spectrum {
        let (h, w) = (self.height, self.width);
        let mut data = vec![Complex64::new(0.0, 0.0); h * w];
        for p in 0..h {
            let dst_row = (p + dp) % h;
            for s in 0..w {
                data[dst_row * w + (s + ds) % w] = self.data[p * w + s];
            }
        }
        Spectrum::new(h, w, data, convention)
    }
}

/// Cyclic quadrant swap between the natural and centered layouts.
///
/// A natural spectrum gets its DC moved to `(H/2, W/2)`; a centered one is
/// moved back, so applying this twice is the identity for any size.
pub fn center_shift(spec: &Spectrum) -> Spectrum {
    let (h, w) = (spec.height, spec.width);
    match spec.convention {
        Convention::Natural => spec.rolled(h / 2, w / 2, Convention::Centered),
        Convention::Centered => spec.rolled(h - h / 2, w - w / 2, Convention::Natural),
    }
}

/// Log-magnitude display `log(1 + |F|)`, stretched so min -> 0 and max -> 255.
pub fn spectrum_image(spec: &Spectrum) -> GrayImage {
    let logs: Vec<f64> = spec.data.iter().map(|z| z.norm().ln_1p()).collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    let data = if range > 0.0 {
        logs.iter()
            .map(|d| ((d - lo) / range * 255.0).clamp(0.0, 255.0))
            .collect()
    } else {
        vec![0.0; logs.len()]
    };
    GrayImage::from_raw(spec.height, spec.width, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta(h: usize, w: usize, p: usize, s: usize) -> Spectrum {
        let mut spec = Spectrum::zeros(h, w);
        spec.set(p, s, Complex64::new(1.0, 0.0));
        spec
    }

    fn nonzero(spec: &Spectrum) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for p in 0..spec.height() {
            for s in 0..spec.width() {
                if spec.get(p, s).norm() != 0.0 {
                    out.push((p, s));
                }
            }
        }
        out
    }

    #[test]
    fn center_shift_moves_dc() {
        let shifted = center_shift(&delta(4, 4, 0, 0));
        assert_eq!(nonzero(&shifted), vec![(2, 2)]);
        assert_eq!(shifted.convention(), Convention::Centered);
        assert_eq!(nonzero(&center_shift(&delta(3, 3, 0, 0))), vec![(1, 1)]);
        assert_eq!(nonzero(&center_shift(&delta(3, 5, 0, 0))), vec![(1, 2)]);
    }

    #[test]
    fn center_shift_twice_is_identity() {
        for (h, w) in [(4, 6), (3, 5), (1, 1), (2, 7)] {
            let mut spec = Spectrum::zeros(h, w);
            for (i, z) in spec.data_mut().iter_mut().enumerate() {
                *z = Complex64::new(i as f64, -(i as f64) / 2.0);
            }
            assert_eq!(center_shift(&center_shift(&spec)), spec);
        }
    }

    #[test]
    fn spectrum_image_ranges() {
        let blank = spectrum_image(&Spectrum::zeros(3, 4));
        assert!(blank.data().iter().all(|&v| v == 0.0));

        let img = spectrum_image(&delta(3, 4, 1, 2));
        assert_eq!(img.get(1, 2), 255.0);
        assert_eq!(img.data().iter().filter(|&&v| v != 0.0).count(), 1);

        let mut spec = Spectrum::zeros(2, 2);
        for (i, z) in spec.data_mut().iter_mut().enumerate() {
            *z = Complex64::new(10f64.powi(i as i32 * 3), 1.0);
        }
        let img = spectrum_image(&spec);
        assert!(img.data().iter().all(|&v| (0.0..=255.0).contains(&v)));
    }
}
