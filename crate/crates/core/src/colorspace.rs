//! Luminance and conversions between RGB and the XYZ, CMY and YUV models.
//!
//! All conversions route through RGB and are exact (CMY) or matrix-exact
//! (XYZ, YUV) inverses of each other. No clamping happens here: values that
//! leave `[0, 255]` are carried until the file boundary.

use crate::error::{Error, Result};
use crate::image::{ColorImage, ColorModel, GrayImage};

/// Weights of the luminance plane `I = 0.3 R + 0.59 G + 0.11 B`.
pub const LUMINANCE_WEIGHTS: [f64; 3] = [0.3, 0.59, 0.11];

type Mat3 = [[f64; 3]; 3];

/// Linear sRGB (D65) to XYZ. Applied to raw channel values: scaling by 1/255
/// and back by 255 cancels for a linear map.
const RGB_TO_XYZ: Mat3 = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

const BT601_LUMA: [f64; 3] = [0.299, 0.587, 0.114];
const U_SCALE: f64 = 0.492;
const V_SCALE: f64 = 0.877;
const CHROMA_OFFSET: f64 = 128.0;

fn rgb_to_yuv_matrix() -> Mat3 {
    let [yr, yg, yb] = BT601_LUMA;
    [
        [yr, yg, yb],
        [-U_SCALE * yr, -U_SCALE * yg, U_SCALE * (1.0 - yb)],
        [V_SCALE * (1.0 - yr), -V_SCALE * yg, -V_SCALE * yb],
    ]
}

fn invert(m: &Mat3) -> Mat3 {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let adj = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    let det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
    adj.map(|row| row.map(|v| v / det))
}

fn apply(img: &ColorImage, m: &Mat3, pre_offset: [f64; 3], post_offset: [f64; 3], model: ColorModel) -> ColorImage {
    let n = img.height() * img.width();
    let [a, b, c] = img.planes();
    let mut out: [Vec<f64>; 3] = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for i in 0..n {
        let px = [a[i] - pre_offset[0], b[i] - pre_offset[1], c[i] - pre_offset[2]];
        for (k, plane) in out.iter_mut().enumerate() {
            plane[i] = m[k][0] * px[0] + m[k][1] * px[1] + m[k][2] * px[2] + post_offset[k];
        }
    }
    ColorImage::from_raw(img.height(), img.width(), model, out)
}

/// `0.3 c1 + 0.59 c2 + 0.11 c3` over whatever three planes the image holds.
pub fn weighted_luminance(img: &ColorImage) -> GrayImage {
    let [w0, w1, w2] = LUMINANCE_WEIGHTS;
    let [a, b, c] = img.planes();
    let data = a
        .iter()
        .zip(b)
        .zip(c)
        .map(|((&x, &y), &z)| w0 * x + w1 * y + w2 * z)
        .collect();
    GrayImage::from_raw(img.height(), img.width(), data)
}

/// Luminance of an RGB image.
pub fn luminance(img: &ColorImage) -> Result<GrayImage> {
    if img.model() != ColorModel::Rgb {
        return Err(Error::ColorModel {
            expected: ColorModel::Rgb,
            actual: img.model(),
        });
    }
    Ok(weighted_luminance(img))
}

/// Converts between RGB and another model. One side must be RGB.
pub fn convert(img: &ColorImage, target: ColorModel) -> Result<ColorImage> {
    use ColorModel::*;

    let source = img.model();
    if source == target {
        return Ok(img.clone());
    }
    let zero = [0.0; 3];
    let chroma = [0.0, CHROMA_OFFSET, CHROMA_OFFSET];
    let out = match (source, target) {
        (Rgb, Cmy) | (Cmy, Rgb) => {
            let planes = img.planes().clone().map(|p| p.into_iter().map(|v| 255.0 - v).collect());
            ColorImage::from_raw(img.height(), img.width(), target, planes)
        }
        (Rgb, Xyz) => apply(img, &RGB_TO_XYZ, zero, zero, Xyz),
        (Xyz, Rgb) => apply(img, &invert(&RGB_TO_XYZ), zero, zero, Rgb),
        (Rgb, Yuv) => apply(img, &rgb_to_yuv_matrix(), zero, chroma, Yuv),
        (Yuv, Rgb) => apply(img, &invert(&rgb_to_yuv_matrix()), chroma, zero, Rgb),
        _ => {
            return Err(Error::UnsupportedConversion {
                from: source,
                to: target,
            })
        }
    };
    Ok(out)
}
