//! JSON record written by the command-line tool, one object per run.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::image::ColorModel;
use crate::mosaic::MosaicKind;
use crate::pipeline::{EnhancementReport, Method};
use crate::spectral::AlphaMode;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub input: String,
    pub output: String,
    /// `null` on the YUV path, which enhances Y directly.
    pub mosaic_model: Option<MosaicKind>,
    pub include_luminance: Option<bool>,
    pub method: Method,
    pub color_model: ColorModel,
    pub alpha: Option<f64>,
    pub alpha_mode: Option<AlphaMode>,
    pub block: [usize; 2],
    pub epsilon: f64,
    pub eme_before: f64,
    pub eme_after: f64,
    pub ceme_before: f64,
    pub ceme_after: f64,
    pub elapsed_ms: f64,
}

impl RunRecord {
    pub fn new(input: &Path, output: &Path, report: &EnhancementReport, elapsed_ms: f64) -> Self {
        Self {
            input: input.display().to_string(),
            output: output.display().to_string(),
            mosaic_model: report.mosaic_model.map(|m| m.kind()),
            include_luminance: report.mosaic_model.map(|m| m.include_luminance()),
            method: report.method,
            color_model: report.color_model,
            alpha: report.alpha,
            alpha_mode: (report.method == Method::AlphaRooting).then_some(report.alpha_mode),
            block: [report.block.l1, report.block.l2],
            epsilon: report.epsilon,
            eme_before: report.eme_before,
            eme_after: report.eme_after,
            ceme_before: report.ceme_before,
            ceme_after: report.ceme_after,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n").map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}
