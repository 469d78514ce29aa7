use std::path::PathBuf;

use thiserror::Error;

use crate::image::ColorModel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to decode {path}: {source}")]
    Decode {
        path: PathBuf,
        #[source]
        source: ::image::ImageError,
    },

    #[error("failed to write {path}: {source}")]
    Encode {
        path: PathBuf,
        #[source]
        source: ::image::ImageError,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Dimensions that a mosaic model, block grid or plane set cannot accept.
    #[error("shape error: {0}")]
    Shape(String),

    #[error("operation expects color model {expected:?}, got {actual:?}")]
    ColorModel { expected: ColorModel, actual: ColorModel },

    #[error("unsupported conversion {from:?} -> {to:?}")]
    UnsupportedConversion { from: ColorModel, to: ColorModel },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
