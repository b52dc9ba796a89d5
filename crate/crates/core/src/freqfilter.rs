//! Frequency-domain masks and their application.
//!
//! Masks live on the centered grid: gain `H(i, j)` depends on the distance
//! from `(floor(H/2), floor(W/2))`, where the DC coefficient sits after
//! [`fftshift`]. High-pass masks are the pointwise complement `1 - lowpass`
//! for every family.

use std::fmt;

use crate::raster::FieldImage;
use crate::spectral::{dft2, fftshift, idft2, ifftshift};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterFamily {
    Ideal,
    Butterworth,
    Gaussian,
}

impl fmt::Display for FilterFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FilterFamily::Ideal => "ideal",
            FilterFamily::Butterworth => "butterworth",
            FilterFamily::Gaussian => "gaussian",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    LowPass,
    HighPass,
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FilterKind::LowPass => "lowpass",
            FilterKind::HighPass => "highpass",
        })
    }
}

/// Real transfer function sampled on the centered frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterMask {
    width: usize,
    height: usize,
    gains: Vec<f64>,
    family: FilterFamily,
    kind: FilterKind,
    cutoff: f64,
    order: Option<u32>,
}

impl FilterMask {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn gain(&self, row: usize, col: usize) -> f64 {
        self.gains[row * self.width + col]
    }

    pub fn family(&self) -> FilterFamily {
        self.family
    }

    pub fn kind(&self) -> FilterKind {
        self.kind
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Butterworth order; `None` for the other families.
    pub fn order(&self) -> Option<u32> {
        self.order
    }
}

/// Distance of every grid point from the centered DC position.
pub fn distance_grid(width: usize, height: usize) -> FieldImage {
    let (cr, cc) = ((height / 2) as f64, (width / 2) as f64);
    FieldImage::from_fn(width, height, |r, c| (r as f64 - cr).hypot(c as f64 - cc))
        .expect("distances are finite")
}

fn check_cutoff(cutoff: f64) -> Result<()> {
    // also rejects NaN
    if !cutoff.is_finite() || cutoff <= 0.0 {
        return Err(Error::BadCutoff(cutoff));
    }
    Ok(())
}

fn build(
    width: usize,
    height: usize,
    family: FilterFamily,
    kind: FilterKind,
    cutoff: f64,
    order: Option<u32>,
    lowpass: impl Fn(f64) -> f64,
) -> FilterMask {
    let gains = distance_grid(width, height)
        .data()
        .iter()
        .map(|&d| {
            let g = lowpass(d);
            match kind {
                FilterKind::LowPass => g,
                FilterKind::HighPass => 1.0 - g,
            }
        })
        .collect();
    FilterMask {
        width,
        height,
        gains,
        family,
        kind,
        cutoff,
        order,
    }
}

/// Brick-wall mask; `D <= cutoff` passes for low-pass.
pub fn ideal_mask(
    width: usize,
    height: usize,
    cutoff: f64,
    kind: FilterKind,
) -> Result<FilterMask> {
    check_cutoff(cutoff)?;
    Ok(build(
        width,
        height,
        FilterFamily::Ideal,
        kind,
        cutoff,
        None,
        |d| {
            if d <= cutoff {
                1.0
            } else {
                0.0
            }
        },
    ))
}

/// `1 / (1 + (D/D0)^(2n))` low-pass, complemented for high-pass.
pub fn butterworth_mask(
    width: usize,
    height: usize,
    cutoff: f64,
    order: u32,
    kind: FilterKind,
) -> Result<FilterMask> {
    check_cutoff(cutoff)?;
    if order < 1 {
        return Err(Error::BadOrder(order));
    }
    let exponent = 2.0 * f64::from(order);
    Ok(build(
        width,
        height,
        FilterFamily::Butterworth,
        kind,
        cutoff,
        Some(order),
        |d| 1.0 / (1.0 + (d / cutoff).powf(exponent)),
    ))
}

/// `exp(-D² / (2 D0²))` low-pass, complemented for high-pass.
pub fn gaussian_mask(
    width: usize,
    height: usize,
    cutoff: f64,
    kind: FilterKind,
) -> Result<FilterMask> {
    check_cutoff(cutoff)?;
    let denom = 2.0 * cutoff * cutoff;
    Ok(build(
        width,
        height,
        FilterFamily::Gaussian,
        kind,
        cutoff,
        None,
        |d| (-(d * d) / denom).exp(),
    ))
}

/// Filters `img` through `mask`: transform, center, multiply, uncenter,
/// invert, and take the per-pixel complex magnitude.
///
/// No padding is applied, so the implied spatial convolution is circular.
/// Because the magnitude is taken, negative ringing lobes come out positive.
pub fn apply_frequency_filter(img: &FieldImage, mask: &FilterMask) -> Result<FieldImage> {
    if img.width() != mask.width || img.height() != mask.height {
        return Err(Error::DimensionMismatch(
            img.width(),
            img.height(),
            mask.width,
            mask.height,
        ));
    }
    let mut centered = fftshift(&dft2(img));
    for (c, &g) in centered.coeffs_mut().iter_mut().zip(&mask.gains) {
        *c *= g;
    }
    Ok(idft2(&ifftshift(&centered))?.magnitude())
}
