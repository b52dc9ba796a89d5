//! Grayscale image enhancement toolkit.
//!
//! Images enter as Netpbm files ([`raster`]), are converted to real-valued
//! [`FieldImage`]s for arithmetic, and leave as 8-bit [`GrayImage`]s through a
//! single rounding step ([`quantize`]).
//!
//! - [`tonemap`]: histograms, equalization, linear and log stretching, matching.
//! - [`spectral`]: 2D DFT (radix-2 for power-of-two axes), shifts, log magnitude.
//! - [`freqfilter`]: ideal, Butterworth and Gaussian masks and their application.
//! - [`spatial`]: cross-correlation with border policies, smoothing, edge kernels.

pub mod error;
pub mod freqfilter;
pub mod raster;
pub mod spatial;
pub mod spectral;
pub mod tonemap;

pub use error::{Error, Result};
pub use raster::{quantize, FieldImage, GrayImage, Image, RgbImage};
