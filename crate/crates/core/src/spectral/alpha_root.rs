use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{dft2, idft2, Reconstruction, Spectrum};
use crate::error::{Error, Result};
use crate::image::GrayImage;

/// How magnitudes are rescaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum AlphaMode {
    /// `|F| -> |F|^alpha`.
    #[serde(rename = "raw")]
    Raw,
    /// `|F| -> |F(0,0)| (|F| / |F(0,0)|)^alpha`; the DC bin and therefore the
    /// mean brightness are kept, and `alpha = 1` is an exact identity.
    #[default]
    #[serde(rename = "dcnorm")]
    DcNormalized,
}

impl fmt::Display for AlphaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlphaMode::Raw => "raw",
            AlphaMode::DcNormalized => "dcnorm",
        })
    }
}

/// Bins below this fraction of the largest magnitude are round-off from the
/// forward transform and are treated as exact zeros. Without the floor,
/// `alpha < 1` amplifies them by many orders of magnitude.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Raises every magnitude to `alpha` while keeping each bin's phase.
///
/// The bin is multiplied by a real, non-negative factor, so the phase is
/// untouched and conjugate pairs stay conjugate. Bins at or below
/// [`NOISE_FLOOR`] times the peak magnitude are set to zero, except for
/// `alpha = 1` which returns the spectrum unchanged.
pub fn alpha_root(spec: &Spectrum, alpha: f64, mode: AlphaMode) -> Result<Spectrum> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::param(format!("alpha must be positive and finite, got {alpha}")));
    }
    let reference = match mode {
        AlphaMode::Raw => 1.0,
        AlphaMode::DcNormalized => {
            let dc = spec.dc().norm();
            if dc == 0.0 {
                return Err(Error::param("DC bin is zero; dc-normalized alpha-rooting is undefined"));
            }
            dc
        }
    };
    if alpha == 1.0 {
        return Ok(spec.clone());
    }

    let exponent = alpha - 1.0;
    let peak = spec.data().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let floor = NOISE_FLOOR * peak;
    let mut out = spec.clone();
    for z in out.data_mut() {
        let mag = z.norm();
        if mag > floor {
            *z *= (mag / reference).powf(exponent);
        } else {
            *z = Complex64::new(0.0, 0.0);
        }
    }
    Ok(out)
}

/// Alpha-roots `img` in the frequency domain without clamping the result.
pub fn alpha_root_reconstruct(img: &GrayImage, alpha: f64, mode: AlphaMode) -> Result<Reconstruction> {
    idft2(&alpha_root(&dft2(img), alpha, mode)?)
}

/// Alpha-rooting enhancement, clamped back into `[0, 255]`.
pub fn alpha_root_enhance(img: &GrayImage, alpha: f64, mode: AlphaMode) -> Result<GrayImage> {
    Ok(alpha_root_reconstruct(img, alpha, mode)?.image.clamped())
}
