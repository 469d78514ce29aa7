//! Lossless rearrangement of a three-channel image into one grayscale plane.
//!
//! Four layouts are supported. For source pixel `(n, m)` with channels
//! `(c1, c2, c3)` and luminance `I`:
//!
//! ```text
//! 2x2      rows 2n..2n+1, cols 2m..2m+1        [ I  c1 ]
//!                                               [ c2 c3 ]
//!
//! 2x3      pixels (n,2j), (n,2j+1) = a, b       [ c1(a) c2(a) c3(b) ]
//!          rows 2n..2n+1, cols 3j..3j+2         [ c3(a) c1(b) c2(b) ]
//!
//! row      rows 4n..4n+3 (3n..3n+2 without I), col m, top to bottom  I c1 c2 c3
//! column   row n, cols 4m..4m+3 (3m..3m+2 without I), left to right  I c1 c2 c3
//! ```
//!
//! Every sample lands on exactly one mosaic cell, so [`inverse`] reads the
//! channels back bit-for-bit. Luminance cells are dropped on the way back.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::colorspace::weighted_luminance;
use crate::error::{Error, Result};
use crate::image::{ColorImage, ColorModel, GrayImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MosaicKind {
    TwoByTwo,
    TwoByThree,
    Row,
    Column,
}

impl MosaicKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MosaicKind::TwoByTwo => "2x2",
            MosaicKind::TwoByThree => "2x3",
            MosaicKind::Row => "row",
            MosaicKind::Column => "col",
        }
    }
}

impl fmt::Display for MosaicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for MosaicKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A layout plus whether it carries the luminance plane.
///
/// 2x2 always carries luminance and 2x3 never does; only row and column
/// layouts make it optional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MosaicModel {
    kind: MosaicKind,
    include_luminance: bool,
}

/// Which source plane a mosaic cell holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Luminance,
    Channel(usize),
}

const CHANNELS: [Slot; 3] = [Slot::Channel(0), Slot::Channel(1), Slot::Channel(2)];
const WITH_LUMINANCE: [Slot; 4] = [Slot::Luminance, Slot::Channel(0), Slot::Channel(1), Slot::Channel(2)];

impl MosaicModel {
    /// Builds a model; the luminance flag is forced for 2x2 and 2x3.
    pub fn new(kind: MosaicKind, include_luminance: bool) -> Self {
        let include_luminance = match kind {
            MosaicKind::TwoByTwo => true,
            MosaicKind::TwoByThree => false,
            MosaicKind::Row | MosaicKind::Column => include_luminance,
        };
        Self {
            kind,
            include_luminance,
        }
    }

    pub fn two_by_two() -> Self {
        Self::new(MosaicKind::TwoByTwo, true)
    }

    pub fn two_by_three() -> Self {
        Self::new(MosaicKind::TwoByThree, false)
    }

    pub fn row(include_luminance: bool) -> Self {
        Self::new(MosaicKind::Row, include_luminance)
    }

    pub fn column(include_luminance: bool) -> Self {
        Self::new(MosaicKind::Column, include_luminance)
    }

    pub fn kind(&self) -> MosaicKind {
        self.kind
    }

    pub fn include_luminance(&self) -> bool {
        self.include_luminance
    }

    /// Mosaic dimensions `(rows, cols)` for an `height x width` source.
    pub fn mosaic_dims(&self, height: usize, width: usize) -> Result<(usize, usize)> {
        if height == 0 || width == 0 {
            return Err(Error::shape(format!("empty source {height}x{width}")));
        }
        let planes = self.slots().len();
        Ok(match self.kind {
            MosaicKind::TwoByTwo => (2 * height, 2 * width),
            MosaicKind::TwoByThree => {
                if !width.is_multiple_of(2) {
                    return Err(Error::shape(format!(
                        "2x3 mosaic needs an even source width, got {width}"
                    )));
                }
                (2 * height, 3 * width / 2)
            }
            MosaicKind::Row => (planes * height, width),
            MosaicKind::Column => (height, planes * width),
        })
    }

    fn slots(&self) -> &'static [Slot] {
        if self.include_luminance {
            &WITH_LUMINANCE
        } else {
            &CHANNELS
        }
    }

    /// Mosaic cell holding `slot` of source pixel `(n, m)`.
    #[inline]
    fn position(&self, slot: Slot, n: usize, m: usize) -> (usize, usize) {
        match self.kind {
            MosaicKind::TwoByTwo => {
                let (dr, dc) = match slot {
                    Slot::Luminance => (0, 0),
                    Slot::Channel(0) => (0, 1),
                    Slot::Channel(1) => (1, 0),
                    _ => (1, 1),
                };
                (2 * n + dr, 2 * m + dc)
            }
            MosaicKind::TwoByThree => {
                let base = 3 * (m / 2);
                let (dr, dc) = match (m % 2, slot) {
                    (0, Slot::Channel(0)) => (0, 0),
                    (0, Slot::Channel(1)) => (0, 1),
                    (0, _) => (1, 0),
                    (_, Slot::Channel(0)) => (1, 1),
                    (_, Slot::Channel(1)) => (1, 2),
                    _ => (0, 2),
                };
                (2 * n + dr, base + dc)
            }
            MosaicKind::Row | MosaicKind::Column => {
                let k = self.slots().len();
                let offset = self.slots().iter().position(|&s| s == slot).expect("slot in model");
                if self.kind == MosaicKind::Row {
                    (k * n + offset, m)
                } else {
                    (n, k * m + offset)
                }
            }
        }
    }
}

impl fmt::Display for MosaicModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MosaicKind::Row | MosaicKind::Column if !self.include_luminance => {
                write!(f, "{} (no luminance)", self.kind)
            }
            _ => write!(f, "{}", self.kind),
        }
    }
}

/// A mosaic plane plus what is needed to undo it.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayMosaic {
    plane: GrayImage,
    model: MosaicModel,
    src_height: usize,
    src_width: usize,
    src_color_model: ColorModel,
}

impl GrayMosaic {
    pub fn new(
        plane: GrayImage,
        model: MosaicModel,
        src_height: usize,
        src_width: usize,
        src_color_model: ColorModel,
    ) -> Result<Self> {
        let expected = model.mosaic_dims(src_height, src_width)?;
        if (plane.height(), plane.width()) != expected {
            return Err(Error::shape(format!(
                "{} mosaic of a {src_height}x{src_width} source must be {}x{}, got {}x{}",
                model,
                expected.0,
                expected.1,
                plane.height(),
                plane.width()
            )));
        }
        Ok(Self {
            plane,
            model,
            src_height,
            src_width,
            src_color_model,
        })
    }

    /// Same layout and source, different plane contents (e.g. after enhancement).
    pub fn with_plane(&self, plane: GrayImage) -> Result<Self> {
        Self::new(plane, self.model, self.src_height, self.src_width, self.src_color_model)
    }

    pub fn plane(&self) -> &GrayImage {
        &self.plane
    }

    pub fn into_plane(self) -> GrayImage {
        self.plane
    }

    pub fn model(&self) -> MosaicModel {
        self.model
    }

    pub fn src_height(&self) -> usize {
        self.src_height
    }

    pub fn src_width(&self) -> usize {
        self.src_width
    }

    pub fn src_color_model(&self) -> ColorModel {
        self.src_color_model
    }
}

/// Lays the channels (and luminance, when the model carries it) out as one plane.
pub fn forward(img: &ColorImage, model: MosaicModel) -> Result<GrayMosaic> {
    let (h, w) = (img.height(), img.width());
    let (rows, cols) = model.mosaic_dims(h, w)?;
    let luminance = model.include_luminance.then(|| weighted_luminance(img));

    let mut out = vec![0.0; rows * cols];
    for n in 0..h {
        for m in 0..w {
            let i = n * w + m;
            for &slot in model.slots() {
                let value = match slot {
                    Slot::Luminance => luminance.as_ref().expect("luminance computed").data()[i],
                    Slot::Channel(c) => img.plane(c)[i],
                };
                let (r, c) = model.position(slot, n, m);
                out[r * cols + c] = value;
            }
        }
    }
    Ok(GrayMosaic {
        plane: GrayImage::from_raw(rows, cols, out),
        model,
        src_height: h,
        src_width: w,
        src_color_model: img.model(),
    })
}

/// Reads the three channels back out of a mosaic, discarding luminance cells.
pub fn inverse(mosaic: &GrayMosaic) -> Result<ColorImage> {
    let model = mosaic.model;
    let (h, w) = (mosaic.src_height, mosaic.src_width);
    let expected = model.mosaic_dims(h, w)?;
    let plane = &mosaic.plane;
    if (plane.height(), plane.width()) != expected {
        return Err(Error::shape("mosaic plane does not match its model"));
    }

    let mut planes: [Vec<f64>; 3] = [vec![0.0; h * w], vec![0.0; h * w], vec![0.0; h * w]];
    for n in 0..h {
        for m in 0..w {
            for (c, out) in planes.iter_mut().enumerate() {
                let (r, col) = model.position(Slot::Channel(c), n, m);
                out[n * w + m] = plane.get(r, col);
            }
        }
    }
    Ok(ColorImage::from_raw(h, w, mosaic.src_color_model, planes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn image(pixels: &[[f64; 3]], height: usize, width: usize) -> ColorImage {
        let planes = [0, 1, 2].map(|c| pixels.iter().map(|p| p[c]).collect());
        ColorImage::new(height, width, ColorModel::Rgb, planes).unwrap()
    }

    fn assert_rows_close(actual: &GrayImage, expected: &[Vec<f64>]) {
        let rows = actual.to_rows();
        assert_eq!(rows.len(), expected.len());
        for (a, e) in rows.iter().zip(expected) {
            assert_eq!(a.len(), e.len());
            for (x, y) in a.iter().zip(e) {
                assert!((x - y).abs() < 1e-12, "{rows:?} vs {expected:?}");
            }
        }
    }

    #[test]
    fn two_by_two_single_pixel() {
        let m = forward(&image(&[[10.0, 20.0, 30.0]], 1, 1), MosaicModel::two_by_two()).unwrap();
        assert_rows_close(m.plane(), &[vec![18.1, 10.0], vec![20.0, 30.0]]);
    }

    #[test]
    fn two_by_three_pair() {
        let img = image(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]], 1, 2);
        let m = forward(&img, MosaicModel::two_by_three()).unwrap();
        assert_eq!(m.plane().to_rows(), vec![vec![1.0, 2.0, 6.0], vec![3.0, 4.0, 5.0]]);
    }

    #[test]
    fn column_with_luminance() {
        let m = forward(&image(&[[10.0, 20.0, 30.0]], 1, 1), MosaicModel::column(true)).unwrap();
        assert_rows_close(m.plane(), &[vec![18.1, 10.0, 20.0, 30.0]]);
    }

    #[test]
    fn row_layouts_stack_vertically() {
        let img = image(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]], 1, 2);
        let m = forward(&img, MosaicModel::row(false)).unwrap();
        assert_eq!(
            m.plane().to_rows(),
            vec![vec![1.0, 4.0], vec![2.0, 5.0], vec![3.0, 6.0]]
        );
        let m = forward(&img, MosaicModel::row(true)).unwrap();
        assert_eq!((m.plane().height(), m.plane().width()), (4, 2));
        assert_eq!(m.plane().row(1), &[1.0, 4.0]);
    }

    #[test]
    fn flags_are_forced() {
        assert!(MosaicModel::new(MosaicKind::TwoByTwo, false).include_luminance());
        assert!(!MosaicModel::new(MosaicKind::TwoByThree, true).include_luminance());
        assert!(!MosaicModel::row(false).include_luminance());
    }

    #[test]
    fn dimension_formulas() {
        let (h, w) = (5, 6);
        assert_eq!(MosaicModel::two_by_two().mosaic_dims(h, w).unwrap(), (10, 12));
        assert_eq!(MosaicModel::two_by_three().mosaic_dims(h, w).unwrap(), (10, 9));
        assert_eq!(MosaicModel::row(true).mosaic_dims(h, w).unwrap(), (20, 6));
        assert_eq!(MosaicModel::row(false).mosaic_dims(h, w).unwrap(), (15, 6));
        assert_eq!(MosaicModel::column(true).mosaic_dims(h, w).unwrap(), (5, 24));
        assert_eq!(MosaicModel::column(false).mosaic_dims(h, w).unwrap(), (5, 18));
    }

    #[test]
    fn odd_width_two_by_three_is_an_error() {
        let img = image(&[[1.0, 2.0, 3.0]; 3], 1, 3);
        assert!(matches!(
            forward(&img, MosaicModel::two_by_three()),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn inverse_discards_luminance() {
        let plane = GrayImage::from_rows(&[vec![18.1, 10.0], vec![20.0, 30.0]]).unwrap();
        let mosaic = GrayMosaic::new(plane, MosaicModel::two_by_two(), 1, 1, ColorModel::Rgb).unwrap();
        assert_eq!(inverse(&mosaic).unwrap().pixel(0, 0), [10.0, 20.0, 30.0]);

        // a tampered luminance cell has no effect
        let plane = GrayImage::from_rows(&[vec![-999.0, 10.0], vec![20.0, 30.0]]).unwrap();
        let mosaic = mosaic.with_plane(plane).unwrap();
        assert_eq!(inverse(&mosaic).unwrap().pixel(0, 0), [10.0, 20.0, 30.0]);
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let plane = GrayImage::filled(3, 3, 0.0).unwrap();
        assert!(matches!(
            GrayMosaic::new(plane, MosaicModel::two_by_two(), 1, 1, ColorModel::Rgb),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn two_by_three_roundtrip_small() {
        let px: Vec<[f64; 3]> = (0..8).map(|i| [i as f64, 10.0 + i as f64, 20.0 + i as f64]).collect();
        let img = image(&px, 2, 4);
        let m = forward(&img, MosaicModel::two_by_three()).unwrap();
        assert_eq!(inverse(&m).unwrap(), img);
    }
}
