//! End-to-end runs: convert, lay out as a mosaic, enhance, undo, score.
//!
//! For the YUV model no mosaic is built: only the Y plane is enhanced and
//! the original U and V planes are put back around it.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colorspace::convert;
use crate::error::{Error, Result};
use crate::image::{ColorImage, ColorModel, GrayImage};
use crate::metrics::{ceme, eme, BlockGrid, DEFAULT_EPSILON};
use crate::mosaic::{self, GrayMosaic, MosaicModel};
use crate::spatial::equalize;
use crate::spectral::{alpha_root, dft2, idft2, AlphaMode, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    AlphaRooting,
    HistEq,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::AlphaRooting => "alpha_rooting",
            Method::HistEq => "hist_eq",
        })
    }
}

/// Inclusive grid `lo, lo + step, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for SweepRange {
    fn default() -> Self {
        Self {
            lo: 0.80,
            hi: 1.00,
            step: 0.01,
        }
    }
}

impl SweepRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let range = Self { lo, hi, step };
        range.validate()?;
        Ok(range)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { lo, hi, step } = *self;
        if ![lo, hi, step].iter().all(|v| v.is_finite()) {
            return Err(Error::param("sweep bounds must be finite"));
        }
        if !(0.0 < lo && lo <= hi && hi <= 2.0) {
            return Err(Error::param(format!(
                "sweep range needs 0 < lo <= hi <= 2, got {lo}..{hi}"
            )));
        }
        if step <= 0.0 {
            return Err(Error::param(format!("sweep step must be positive, got {step}")));
        }
        Ok(())
    }

    /// The grid points in ascending order. Each is computed as `lo + i * step`
    /// so rounding does not accumulate.
    pub fn alphas(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| (self.lo + i as f64 * self.step).min(self.hi)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaSetting {
    Fixed(f64),
    Sweep(SweepRange),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mosaic_model: MosaicModel,
    pub method: Method,
    pub color_model: ColorModel,
    /// Ignored for histogram equalization.
    pub alpha: AlphaSetting,
    pub alpha_mode: AlphaMode,
    pub block: BlockGrid,
    pub epsilon: f64,
}

impl RunConfig {
    pub fn new(mosaic_model: MosaicModel, method: Method) -> Self {
        Self {
            mosaic_model,
            method,
            color_model: ColorModel::Rgb,
            alpha: AlphaSetting::Sweep(SweepRange::default()),
            alpha_mode: AlphaMode::default(),
            block: BlockGrid::default(),
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = AlphaSetting::Fixed(alpha);
        self
    }

    pub fn with_sweep(mut self, range: SweepRange) -> Self {
        self.alpha = AlphaSetting::Sweep(range);
        self
    }

    pub fn with_color_model(mut self, model: ColorModel) -> Self {
        self.color_model = model;
        self
    }

    pub fn with_alpha_mode(mut self, mode: AlphaMode) -> Self {
        self.alpha_mode = mode;
        self
    }

    pub fn with_block(mut self, block: BlockGrid) -> Self {
        self.block = block;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        BlockGrid::new(self.block.l1, self.block.l2)?;
        if !self.epsilon.is_finite() || self.epsilon < 0.0 {
            return Err(Error::param(format!(
                "epsilon must be finite and non-negative, got {}",
                self.epsilon
            )));
        }
        if self.method == Method::AlphaRooting {
            match self.alpha {
                AlphaSetting::Fixed(a) if !(a > 0.0 && a.is_finite()) => {
                    return Err(Error::param(format!("alpha must be positive and finite, got {a}")));
                }
                AlphaSetting::Sweep(range) => range.validate()?,
                AlphaSetting::Fixed(_) => {}
            }
        }
        Ok(())
    }
}

/// Scores of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct EnhancementReport {
    /// `None` on the YUV path, where no mosaic is built.
    pub mosaic_model: Option<MosaicModel>,
    pub method: Method,
    pub color_model: ColorModel,
    pub alpha: Option<f64>,
    pub alpha_mode: AlphaMode,
    /// EME of the working plane (mosaic, or Y for YUV) before and after.
    pub eme_before: f64,
    pub eme_after: f64,
    /// CEME of the RGB image before and after.
    pub ceme_before: f64,
    pub ceme_after: f64,
    pub block: BlockGrid,
    pub epsilon: f64,
}

#[derive(Debug, Clone)]
enum Layout {
    Mosaic(GrayMosaic),
    LumaPlane,
}

/// Everything about a run that does not depend on alpha.
///
/// Building one computes the conversion, the mosaic, the before-scores and,
/// for alpha-rooting, the forward spectrum; [`PreparedRun::evaluate`] can
/// then be called for any number of alphas.
#[derive(Debug, Clone)]
pub struct PreparedRun {
    cfg: RunConfig,
    converted: ColorImage,
    layout: Layout,
    plane: GrayImage,
    spectrum: Option<Spectrum>,
    eme_before: f64,
    ceme_before: f64,
}

/// An enhanced image with its scores.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub image: ColorImage,
    /// Enhanced working plane before any clamping; EME is scored on its
    /// `[0, 255]`-clamped copy.
    pub enhanced_plane: GrayImage,
    pub report: EnhancementReport,
}

impl PreparedRun {
    pub fn new(img: &ColorImage, cfg: &RunConfig) -> Result<Self> {
        if img.model() != ColorModel::Rgb {
            return Err(Error::ColorModel {
                expected: ColorModel::Rgb,
                actual: img.model(),
            });
        }
        cfg.validate()?;

        let converted = convert(img, cfg.color_model)?;
        let (layout, plane) = if cfg.color_model == ColorModel::Yuv {
            (Layout::LumaPlane, converted.channel(0))
        } else {
            let m = mosaic::forward(&converted, cfg.mosaic_model)?;
            let plane = m.plane().clone();
            (Layout::Mosaic(m), plane)
        };
        let spectrum = (cfg.method == Method::AlphaRooting).then(|| dft2(&plane));
        let eme_before = eme(&plane, cfg.block, cfg.epsilon)?;
        let ceme_before = ceme(img, cfg.block, cfg.epsilon)?;

        Ok(Self {
            cfg: cfg.clone(),
            converted,
            layout,
            plane,
            spectrum,
            eme_before,
            ceme_before,
        })
    }

    /// The working plane before enhancement: the mosaic, or Y on the YUV path.
    pub fn plane(&self) -> &GrayImage {
        &self.plane
    }

    /// Forward spectrum of the working plane, present for alpha-rooting runs.
    pub fn spectrum(&self) -> Option<&Spectrum> {
        self.spectrum.as_ref()
    }

    pub fn eme_before(&self) -> f64 {
        self.eme_before
    }

    pub fn ceme_before(&self) -> f64 {
        self.ceme_before
    }

    fn enhance_plane(&self, alpha: Option<f64>) -> Result<GrayImage> {
        match self.cfg.method {
            Method::HistEq => Ok(equalize(&self.plane)),
            Method::AlphaRooting => {
                let alpha = alpha.ok_or_else(|| Error::param("alpha-rooting needs an alpha"))?;
                let spectrum = self.spectrum.as_ref().expect("spectrum computed for alpha-rooting");
                let rooted = alpha_root(spectrum, alpha, self.cfg.alpha_mode)?;
                // not clamped here: out-of-range values are carried to the RGB output
                Ok(idft2(&rooted)?.image)
            }
        }
    }

    fn reassemble(&self, enhanced: &GrayImage) -> Result<ColorImage> {
        let converted = match &self.layout {
            Layout::Mosaic(m) => mosaic::inverse(&m.with_plane(enhanced.clone())?)?,
            Layout::LumaPlane => {
                let [_, u, v] = self.converted.planes().clone();
                ColorImage::new(
                    self.converted.height(),
                    self.converted.width(),
                    self.converted.model(),
                    [enhanced.data().to_vec(), u, v],
                )?
            }
        };
        Ok(convert(&converted, ColorModel::Rgb)?.clamped())
    }

    /// Enhances with `alpha` (ignored for histogram equalization).
    pub fn evaluate(&self, alpha: Option<f64>) -> Result<Evaluation> {
        let alpha = match self.cfg.method {
            Method::AlphaRooting => alpha,
            Method::HistEq => None,
        };
        let enhanced_plane = self.enhance_plane(alpha)?;
        let image = self.reassemble(&enhanced_plane)?;
        let report = EnhancementReport {
            mosaic_model: match self.layout {
                Layout::Mosaic(_) => Some(self.cfg.mosaic_model),
                Layout::LumaPlane => None,
            },
            method: self.cfg.method,
            color_model: self.cfg.color_model,
            alpha,
            alpha_mode: self.cfg.alpha_mode,
            eme_before: self.eme_before,
            eme_after: eme(&enhanced_plane.clamped(), self.cfg.block, self.cfg.epsilon)?,
            ceme_before: self.ceme_before,
            ceme_after: ceme(&image, self.cfg.block, self.cfg.epsilon)?,
            block: self.cfg.block,
            epsilon: self.cfg.epsilon,
        };
        Ok(Evaluation {
            image,
            enhanced_plane,
            report,
        })
    }

    /// CEME of the enhanced color image only.
    pub fn ceme_at(&self, alpha: Option<f64>) -> Result<f64> {
        let plane = self.enhance_plane(alpha)?;
        ceme(&self.reassemble(&plane)?, self.cfg.block, self.cfg.epsilon)
    }
}

/// One enhancement with a fixed alpha (or histogram equalization).
pub fn enhance(img: &ColorImage, cfg: &RunConfig) -> Result<(ColorImage, EnhancementReport)> {
    let alpha = match (cfg.method, cfg.alpha) {
        (Method::HistEq, _) => None,
        (Method::AlphaRooting, AlphaSetting::Fixed(a)) => Some(a),
        (Method::AlphaRooting, AlphaSetting::Sweep(_)) => {
            return Err(Error::param("enhance needs a fixed alpha; use alpha_sweep for a range"))
        }
    };
    let eval = PreparedRun::new(img, cfg)?.evaluate(alpha)?;
    Ok((eval.image, eval.report))
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub best_alpha: f64,
    pub image: ColorImage,
    pub report: EnhancementReport,
    /// `(alpha, ceme)` for every grid point, ascending in alpha.
    pub curve: Vec<(f64, f64)>,
}

/// Picks the alpha whose enhanced color image has the highest CEME.
///
/// Ties go to the larger alpha. The forward spectrum is computed once and
/// shared by all grid points.
pub fn alpha_sweep(img: &ColorImage, cfg: &RunConfig) -> Result<SweepOutcome> {
    let range = match cfg.alpha {
        AlphaSetting::Sweep(r) => r,
        AlphaSetting::Fixed(a) => SweepRange::new(a, a, 1.0)?,
    };
    PreparedRun::new(img, cfg)?.sweep(range)
}

impl PreparedRun {
    /// Evaluates every grid point of `range` against the shared spectrum.
    pub fn sweep(&self, range: SweepRange) -> Result<SweepOutcome> {
        if self.cfg.method != Method::AlphaRooting {
            return Err(Error::param("alpha sweep only applies to alpha-rooting"));
        }
        range.validate()?;
        let curve = range
            .alphas()
            .into_par_iter()
            .map(|a| self.ceme_at(Some(a)).map(|c| (a, c)))
            .collect::<Result<Vec<_>>>()?;

        let mut best = curve[0];
        for &(a, c) in &curve[1..] {
            if c >= best.1 {
                best = (a, c);
            }
        }
        let eval = self.evaluate(Some(best.0))?;
        Ok(SweepOutcome {
            best_alpha: best.0,
            image: eval.image,
            report: eval.report,
            curve,
        })
    }
}

/// Dispatches to [`enhance`] or [`alpha_sweep`] depending on the alpha setting.
pub fn run(img: &ColorImage, cfg: &RunConfig) -> Result<(ColorImage, EnhancementReport)> {
    match (cfg.method, cfg.alpha) {
        (Method::AlphaRooting, AlphaSetting::Sweep(_)) => {
            let out = alpha_sweep(img, cfg)?;
            Ok((out.image, out.report))
        }
        _ => enhance(img, cfg),
    }
}
