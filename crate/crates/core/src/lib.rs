//! Color image enhancement through grayscale mosaics.
//!
//! A color image is rearranged, without loss, into one 2-D grayscale plane
//! (see [`mosaic`]). That plane is enhanced either in the frequency domain by
//! alpha-rooting ([`spectral`]) or spatially by histogram equalization
//! ([`spatial`]), and then rearranged back into color. [`metrics`] scores the
//! result with the EME and CEME block-contrast measures, and [`pipeline`]
//! ties the steps together, including a sweep for the CEME-maximizing alpha.
//!
//! ```no_run
//! use mosaic_enhance::{image, pipeline, mosaic::MosaicModel};
//!
//! # fn main() -> mosaic_enhance::Result<()> {
//! let img = image::load_image("flower.png")?;
//! let cfg = pipeline::RunConfig::new(MosaicModel::two_by_two(), pipeline::Method::AlphaRooting);
//! let out = pipeline::alpha_sweep(&img, &cfg)?;
//! println!("alpha {} CEME {} -> {}", out.best_alpha, out.report.ceme_before, out.report.ceme_after);
//! image::save_image(&out.image, "flower_enhanced.png")?;
//! # Ok(())
//! # }
//! ```

pub mod colorspace;
pub mod error;
pub mod image;
pub mod metrics;
pub mod mosaic;
pub mod pipeline;
pub mod report;
pub mod spatial;
pub mod spectral;

pub use error::{Error, Result};
pub use image::{ColorImage, ColorModel, GrayImage};
