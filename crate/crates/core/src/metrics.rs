//! EME and CEME block-contrast measures.
//!
//! The image is cut into `k1 x k2` non-overlapping `L1 x L2` blocks with
//! `k = floor(size / L)`; trailing partial rows and columns are ignored.
//! Each block contributes `20 log10((max + eps) / (min + eps))` and the
//! measure is the mean over blocks. CEME takes max and min jointly over the
//! three planes of a color image.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{ColorImage, GrayImage};

pub const DEFAULT_EPSILON: f64 = 1e-4;

/// Block dimensions: `l1` rows by `l2` columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockGrid {
    pub l1: usize,
    pub l2: usize,
}

impl Default for BlockGrid {
    fn default() -> Self {
        Self { l1: 8, l2: 8 }
    }
}

impl BlockGrid {
    pub fn new(l1: usize, l2: usize) -> Result<Self> {
        if l1 == 0 || l2 == 0 {
            return Err(Error::param(format!("block size {l1}x{l2} must be positive")));
        }
        Ok(Self { l1, l2 })
    }

    /// Block counts `(k1, k2)` for a `height x width` image.
    pub fn counts(&self, height: usize, width: usize) -> Result<(usize, usize)> {
        if self.l1 == 0 || self.l2 == 0 {
            return Err(Error::param("block size must be positive"));
        }
        let (k1, k2) = (height / self.l1, width / self.l2);
        if k1 == 0 || k2 == 0 {
            return Err(Error::shape(format!(
                "{height}x{width} image is smaller than one {}x{} block",
                self.l1, self.l2
            )));
        }
        Ok((k1, k2))
    }
}

fn block_term(max: f64, min: f64, epsilon: f64) -> Result<f64> {
    let (num, den) = (max + epsilon, min + epsilon);
    if den.is_nan() || den <= 0.0 {
        return Err(Error::param(format!(
            "block minimum {min} with epsilon {epsilon} gives a non-positive denominator"
        )));
    }
    Ok(20.0 * (num / den).log10())
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::param(format!(
            "epsilon must be finite and non-negative, got {epsilon}"
        )));
    }
    Ok(())
}

/// Averages the block term over planes that share one geometry.
fn block_measure(planes: &[&[f64]], height: usize, width: usize, grid: BlockGrid, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    let (k1, k2) = grid.counts(height, width)?;
    let mut sum = 0.0;
    for bi in 0..k1 {
        for bj in 0..k2 {
            let mut max = f64::NEG_INFINITY;
            let mut min = f64::INFINITY;
            for plane in planes {
                for r in bi * grid.l1..(bi + 1) * grid.l1 {
                    let row = &plane[r * width + bj * grid.l2..r * width + (bj + 1) * grid.l2];
                    for &v in row {
                        max = max.max(v);
                        min = min.min(v);
                    }
                }
            }
            sum += block_term(max, min, epsilon)?;
        }
    }
    Ok(sum / (k1 * k2) as f64)
}

/// EME of a grayscale image.
pub fn eme(img: &GrayImage, grid: BlockGrid, epsilon: f64) -> Result<f64> {
    block_measure(&[img.data()], img.height(), img.width(), grid, epsilon)
}

/// CEME of a three-plane image, extremes taken jointly over the planes.
pub fn ceme(img: &ColorImage, grid: BlockGrid, epsilon: f64) -> Result<f64> {
    let [a, b, c] = img.planes();
    block_measure(&[a, b, c], img.height(), img.width(), grid, epsilon)
}
