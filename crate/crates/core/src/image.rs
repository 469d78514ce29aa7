//! Planar real-valued image containers and the 8-bit raster boundary.
//!
//! Samples are carried as `f64` everywhere inside the crate. Quantization to
//! bytes happens only when writing a file: round half away from zero, then
//! clamp to `[0, 255]`.

use std::fmt;
use std::path::Path;

use ::image::{DynamicImage, ImageBuffer, Luma, Rgb};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Color model tag carried by a [`ColorImage`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorModel {
    Rgb,
    Xyz,
    Cmy,
    Yuv,
}

impl fmt::Display for ColorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorModel::Rgb => "rgb",
            ColorModel::Xyz => "xyz",
            ColorModel::Cmy => "cmy",
            ColorModel::Yuv => "yuv",
        })
    }
}

/// Single-plane image, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

impl GrayImage {
    pub fn new(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::shape(format!("empty image {height}x{width}")));
        }
        if data.len() != height * width {
            return Err(Error::shape(format!(
                "{} samples for a {height}x{width} image",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("image samples must be finite"));
        }
        Ok(Self { height, width, data })
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Result<Self> {
        Self::new(height, width, vec![value; height * width])
    }

    /// Builds an image from nested rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::shape("ragged rows"));
        }
        Self::new(height, width, rows.concat())
    }

    // Trusted constructor for internal producers that already uphold the invariants.
    pub(crate) fn from_raw(height: usize, width: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), height * width);
        Self { height, width, data }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.width).map(<[f64]>::to_vec).collect()
    }

    /// Returns a copy with every sample clamped to `[0, 255]`.
    pub fn clamped(&self) -> GrayImage {
        let data = self.data.iter().map(|v| v.clamp(0.0, 255.0)).collect();
        GrayImage::from_raw(self.height, self.width, data)
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }
}

/// Three-plane image with a color-model tag.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorImage {
    height: usize,
    width: usize,
    model: ColorModel,
    planes: [Vec<f64>; 3],
}

impl ColorImage {
    pub fn new(height: usize, width: usize, model: ColorModel, planes: [Vec<f64>; 3]) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::shape(format!("empty image {height}x{width}")));
        }
        if planes.iter().any(|p| p.len() != height * width) {
            return Err(Error::shape(format!("planes do not all hold {height}x{width} samples")));
        }
        if planes.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::param("image samples must be finite"));
        }
        Ok(Self {
            height,
            width,
            model,
            planes,
        })
    }

    pub fn from_gray_planes(model: ColorModel, planes: [GrayImage; 3]) -> Result<Self> {
        let (h, w) = (planes[0].height, planes[0].width);
        if planes.iter().any(|p| p.height != h || p.width != w) {
            return Err(Error::shape("planes differ in size"));
        }
        let [a, b, c] = planes;
        Ok(Self::from_raw(h, w, model, [a.data, b.data, c.data]))
    }

    /// Interleaved 8-bit RGB, row-major, three bytes per pixel.
    pub fn from_rgb8(height: usize, width: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != height * width * 3 {
            return Err(Error::shape(format!(
                "{} bytes for a {height}x{width} RGB image",
                bytes.len()
            )));
        }
        let mut planes: [Vec<f64>; 3] = Default::default();
        for (c, plane) in planes.iter_mut().enumerate() {
            *plane = bytes.iter().skip(c).step_by(3).map(|&b| f64::from(b)).collect();
        }
        Self::new(height, width, ColorModel::Rgb, planes)
    }

    pub(crate) fn from_raw(height: usize, width: usize, model: ColorModel, planes: [Vec<f64>; 3]) -> Self {
        debug_assert!(planes.iter().all(|p| p.len() == height * width));
        Self {
            height,
            width,
            model,
            planes,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn model(&self) -> ColorModel {
        self.model
    }

    pub fn planes(&self) -> &[Vec<f64>; 3] {
        &self.planes
    }

    pub fn plane(&self, channel: usize) -> &[f64] {
        &self.planes[channel]
    }

    pub fn into_planes(self) -> [Vec<f64>; 3] {
        self.planes
    }

    /// Copies one channel out as a [`GrayImage`].
    pub fn channel(&self, channel: usize) -> GrayImage {
        GrayImage::from_raw(self.height, self.width, self.planes[channel].clone())
    }

    #[inline]
    pub fn pixel(&self, row: usize, col: usize) -> [f64; 3] {
        let i = row * self.width + col;
        [self.planes[0][i], self.planes[1][i], self.planes[2][i]]
    }

    pub fn clamped(&self) -> ColorImage {
        let planes = self
            .planes
            .clone()
            .map(|p| p.into_iter().map(|v| v.clamp(0.0, 255.0)).collect());
        ColorImage::from_raw(self.height, self.width, self.model, planes)
    }

    /// Rounds every sample to the byte it would be stored as.
    pub fn quantized(&self) -> ColorImage {
        let planes = self
            .planes
            .clone()
            .map(|p| p.into_iter().map(|v| f64::from(quantize(v))).collect());
        ColorImage::from_raw(self.height, self.width, self.model, planes)
    }
}

/// Round half away from zero, then clamp to `[0, 255]`.
#[inline]
pub fn quantize(sample: f64) -> u8 {
    // f64::round already rounds half away from zero
    sample.round().clamp(0.0, 255.0) as u8
}

/// Something that can be written as an 8-bit raster.
pub trait Raster {
    fn to_dynamic(&self) -> DynamicImage;
}

impl Raster for GrayImage {
    fn to_dynamic(&self) -> DynamicImage {
        let bytes = self.data.iter().map(|&v| quantize(v)).collect();
        let buf = ImageBuffer::<Luma<u8>, Vec<u8>>::from_raw(self.width as u32, self.height as u32, bytes)
            .expect("buffer length matches dimensions");
        DynamicImage::ImageLuma8(buf)
    }
}

impl Raster for ColorImage {
    fn to_dynamic(&self) -> DynamicImage {
        let n = self.height * self.width;
        let mut bytes = Vec::with_capacity(n * 3);
        for i in 0..n {
            bytes.extend(self.planes.iter().map(|p| quantize(p[i])));
        }
        let buf = ImageBuffer::<Rgb<u8>, Vec<u8>>::from_raw(self.width as u32, self.height as u32, bytes)
            .expect("buffer length matches dimensions");
        DynamicImage::ImageRgb8(buf)
    }
}

/// Decodes a PNG, TIFF, JPEG or BMP raster into an RGB [`ColorImage`].
///
/// Grayscale inputs are replicated into three planes and alpha channels are
/// dropped, both with a logged warning.
pub fn load_image(path: impl AsRef<Path>) -> Result<ColorImage> {
    let path = path.as_ref();
    let reader = ::image::ImageReader::open(path)
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?
        .with_guessed_format()
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    let decoded = reader.decode().map_err(|source| Error::Decode {
        path: path.to_path_buf(),
        source,
    })?;

    let color = decoded.color();
    if color.channel_count() < 3 {
        log::warn!("{}: grayscale input replicated into three planes", path.display());
    }
    if color.has_alpha() {
        log::warn!("{}: alpha channel dropped", path.display());
    }
    if color.bytes_per_pixel() / color.channel_count() > 1 {
        log::warn!("{}: samples deeper than 8 bits reduced to 8 bits", path.display());
    }

    let rgb = decoded.to_rgb8();
    let (w, h) = rgb.dimensions();
    ColorImage::from_rgb8(h as usize, w as usize, rgb.as_raw())
}

/// Writes `img` as an 8-bit raster; the format follows the file extension.
pub fn save_image(img: &impl Raster, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    img.to_dynamic().save(path).map_err(|source| Error::Encode {
        path: path.to_path_buf(),
        source,
    })
}
