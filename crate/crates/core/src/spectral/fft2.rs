use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};

use super::{Convention, Spectrum};
use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Inverse transform output: the real part plus how far from real it was.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub image: GrayImage,
    /// Largest `|imag|` over all samples, discarded from `image`.
    pub max_imag: f64,
}

fn rows_in_place(data: &mut [Complex64], width: usize, direction: FftDirection) {
    let fft = FftPlanner::new().plan_fft(width, direction);
    let scratch_len = fft.get_inplace_scratch_len();
    data.par_chunks_mut(width).for_each_init(
        || vec![Complex64::new(0.0, 0.0); scratch_len],
        |scratch, row| fft.process_with_scratch(row, scratch),
    );
}

fn transpose(src: &[Complex64], height: usize, width: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); src.len()];
    out.par_chunks_mut(height).enumerate().for_each(|(col, dst)| {
        for (row, v) in dst.iter_mut().enumerate() {
            *v = src[row * width + col];
        }
    });
    out
}

/// Separable row-column transform, unnormalized.
fn transform(mut data: Vec<Complex64>, height: usize, width: usize, direction: FftDirection) -> Vec<Complex64> {
    rows_in_place(&mut data, width, direction);
    if height > 1 {
        let mut cols = transpose(&data, height, width);
        rows_in_place(&mut cols, height, direction);
        data = transpose(&cols, width, height);
    }
    data
}

/// Forward 2-D DFT of a real image, DC at `(0, 0)`.
pub fn dft2(img: &GrayImage) -> Spectrum {
    let (h, w) = (img.height(), img.width());
    let data = img.data().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Spectrum::new(h, w, transform(data, h, w, FftDirection::Forward), Convention::Natural)
}

/// Inverse 2-D DFT with the `1 / (H W)` factor. Needs a natural-layout spectrum.
pub fn idft2(spec: &Spectrum) -> Result<Reconstruction> {
    if spec.convention() != Convention::Natural {
        return Err(Error::param("inverse transform needs a spectrum with DC at (0, 0)"));
    }
    let (h, w) = (spec.height(), spec.width());
    let scale = 1.0 / (h * w) as f64;
    let data = transform(spec.data().to_vec(), h, w, FftDirection::Inverse);
    let max_imag = data.iter().map(|z| (z.im * scale).abs()).fold(0.0, f64::max);
    let real = data.iter().map(|z| z.re * scale).collect();
    Ok(Reconstruction {
        image: GrayImage::from_raw(h, w, real),
        max_imag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12
    }

    #[test]
    fn two_by_two_by_hand() {
        let img = GrayImage::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let f = dft2(&img);
        assert!(close(f.get(0, 0), 10.0, 0.0));
        assert!(close(f.get(0, 1), -2.0, 0.0));
        assert!(close(f.get(1, 0), -4.0, 0.0));
        assert!(close(f.get(1, 1), 0.0, 0.0));
    }

    #[test]
    fn constant_image_has_only_dc() {
        let img = GrayImage::filled(3, 5, 7.0).unwrap();
        let f = dft2(&img);
        assert!(close(f.get(0, 0), 7.0 * 15.0, 0.0));
        for (i, z) in f.data().iter().enumerate().skip(1) {
            assert!(z.norm() < 1e-10, "bin {i} = {z}");
        }
    }

    #[test]
    fn zero_spectrum_inverts_to_zero() {
        let r = idft2(&Spectrum::zeros(4, 3)).unwrap();
        assert!(r.image.data().iter().all(|&v| v == 0.0));
        assert_eq!(r.max_imag, 0.0);
    }

    #[test]
    fn inverse_undoes_forward() {
        let data: Vec<f64> = (0..6 * 10).map(|i| ((i * 37) % 101) as f64).collect();
        let img = GrayImage::new(6, 10, data).unwrap();
        let r = idft2(&dft2(&img)).unwrap();
        for (a, b) in r.image.data().iter().zip(img.data()) {
            assert!((a - b).abs() < 1e-9 * 100.0);
        }
        assert!(r.max_imag < 1e-9);
    }

    #[test]
    fn centered_spectrum_is_refused() {
        let spec = super::super::center_shift(&Spectrum::zeros(2, 2));
        assert!(idft2(&spec).is_err());
    }
}
