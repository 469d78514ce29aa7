//! 8-bit histogram equalization.
//!
//! Samples are first quantized to the 256 integer levels (round half away
//! from zero, clamp). The map sends level `r` to
//! `round(w_min + (w_max - w_min) * F(r))` where `F` is the normalized
//! cumulative histogram; the default range is `[0, 255]`.

use crate::error::{Error, Result};
use crate::image::{quantize, GrayImage};

pub const LEVELS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: [u64; LEVELS],
    total: u64,
}

impl Histogram {
    /// Builds a histogram from raw counts; the total is their sum.
    pub fn from_counts(counts: [u64; LEVELS]) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn counts(&self) -> &[u64; LEVELS] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of levels with at least one pixel.
    pub fn occupied(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Normalized cumulative distribution `F(r)`; zero below the lowest occupied level.
    pub fn cdf(&self) -> [f64; LEVELS] {
        let mut out = [0.0; LEVELS];
        let mut acc = 0u64;
        for (r, &c) in self.counts.iter().enumerate() {
            acc += c;
            out[r] = acc as f64 / self.total as f64;
        }
        out
    }
}

/// Level -> level lookup table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualizationMap {
    table: [u8; LEVELS],
}

impl EqualizationMap {
    pub fn table(&self) -> &[u8; LEVELS] {
        &self.table
    }

    #[inline]
    pub fn map(&self, level: u8) -> u8 {
        self.table[level as usize]
    }

    /// Quantizes `img` and looks every sample up in the table.
    pub fn apply(&self, img: &GrayImage) -> GrayImage {
        let data = img.data().iter().map(|&v| f64::from(self.map(quantize(v)))).collect();
        GrayImage::from_raw(img.height(), img.width(), data)
    }
}

pub fn histogram(img: &GrayImage) -> Histogram {
    let mut counts = [0u64; LEVELS];
    for &v in img.data() {
        counts[quantize(v) as usize] += 1;
    }
    Histogram::from_counts(counts)
}

/// Equalization onto the full `[0, 255]` range.
pub fn equalization_map(h: &Histogram) -> Result<EqualizationMap> {
    equalization_map_range(h, 0, 255)
}

/// Equalization onto `[w_min, w_max]`.
pub fn equalization_map_range(h: &Histogram, w_min: u8, w_max: u8) -> Result<EqualizationMap> {
    if h.total == 0 {
        return Err(Error::param("cannot equalize an empty histogram"));
    }
    if w_min > w_max {
        return Err(Error::param(format!("output range [{w_min}, {w_max}] is reversed")));
    }
    let span = f64::from(w_max - w_min);
    let cdf = h.cdf();
    let mut table = [0u8; LEVELS];
    for (slot, f) in table.iter_mut().zip(cdf) {
        *slot = (f64::from(w_min) + span * f).round() as u8;
    }
    Ok(EqualizationMap { table })
}

/// Histogram-equalizes `img`; the output holds integer levels in `[0, 255]`.
pub fn equalize(img: &GrayImage) -> GrayImage {
    // an image always has at least one pixel, so the histogram is never empty
    let map = equalization_map(&histogram(img)).expect("non-empty image");
    map.apply(img)
}
