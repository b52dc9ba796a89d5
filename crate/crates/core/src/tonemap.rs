//! Histogram analytics and 256-entry intensity remapping.
//!
//! Every transform here is realized as a [`Lut`] so it can be applied to an
//! 8-bit image in one pass. The stretching and log curves also have
//! continuous forms ([`stretch_value`], [`log_value`]) for real-valued
//! working images; for integer inputs they agree with the table entries.

use crate::raster::{quantize, GrayImage};
use crate::{Error, Result};

pub const LEVELS: usize = 256;

/// Per-level occurrence counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: [u64; LEVELS],
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Largest single-level probability mass.
    pub fn max_mass(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        *self.counts.iter().max().unwrap() as f64 / total as f64
    }
}

/// Running prefix sum of a [`Histogram`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cdf {
    pub cumulative: [u64; LEVELS],
}

impl Cdf {
    pub fn total(&self) -> u64 {
        self.cumulative[LEVELS - 1]
    }

    /// `cumulative[v] / total`, or 0 for an empty distribution.
    pub fn normalized(&self, level: u8) -> f64 {
        match self.total() {
            0 => 0.0,
            n => self.cumulative[level as usize] as f64 / n as f64,
        }
    }
}

/// Intensity lookup table: `out = map[in]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lut {
    pub map: [u8; LEVELS],
}

impl Lut {
    pub fn identity() -> Self {
        let mut map = [0u8; LEVELS];
        for (v, m) in map.iter_mut().enumerate() {
            *m = v as u8;
        }
        Lut { map }
    }

    fn from_fn(f: impl Fn(u8) -> u8) -> Self {
        let mut map = [0u8; LEVELS];
        for (v, m) in map.iter_mut().enumerate() {
            *m = f(v as u8);
        }
        Lut { map }
    }

    pub fn is_monotone(&self) -> bool {
        self.map.windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn histogram(img: &GrayImage) -> Histogram {
    let mut counts = [0u64; LEVELS];
    for &v in img.data() {
        counts[v as usize] += 1;
    }
    Histogram { counts }
}

pub fn cdf(hist: &Histogram) -> Cdf {
    let mut cumulative = [0u64; LEVELS];
    let mut acc = 0u64;
    for (c, &n) in cumulative.iter_mut().zip(hist.counts.iter()) {
        acc += n;
        *c = acc;
    }
    Cdf { cumulative }
}

/// Normalizes the CDF onto `[0, 255]`:
/// `map[v] = quantize((cdf[v] - cmin) * 255 / (cmax - cmin))`.
///
/// `cmin` is the minimum over the whole table, i.e. `cdf[0]`, so it is zero
/// whenever level 0 is unoccupied. If `cmax == cmin` every entry is 0.
pub fn equalization_lut(cdf: &Cdf) -> Result<Lut> {
    let cmax = cdf.total();
    if cmax == 0 {
        return Err(Error::EmptyImage);
    }
    let cmin = *cdf.cumulative.iter().min().unwrap();
    if cmax == cmin {
        return Ok(Lut { map: [0; LEVELS] });
    }
    let span = (cmax - cmin) as f64;
    Ok(Lut::from_fn(|v| {
        quantize((cdf.cumulative[v as usize] - cmin) as f64 * 255.0 / span)
    }))
}

/// Linear contrast stretch of `[x_min, x_max]` onto `[y_min, y_max]`.
///
/// Inputs outside the source range clamp to the nearest target endpoint.
pub fn stretch_value(x: f64, x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> f64 {
    if x <= x_min {
        y_min
    } else if x >= x_max {
        y_max
    } else {
        // multiply before dividing: exact for integer arguments with an exact quotient
        (x - x_min) * (y_max - y_min) / (x_max - x_min) + y_min
    }
}

pub fn stretch_lut(x_min: u8, x_max: u8, y_min: u8, y_max: u8) -> Result<Lut> {
    if x_min >= x_max || y_min > y_max {
        return Err(Error::DegenerateRange);
    }
    let (x0, x1, y0, y1) = (
        f64::from(x_min),
        f64::from(x_max),
        f64::from(y_min),
        f64::from(y_max),
    );
    Ok(Lut::from_fn(|v| {
        quantize(stretch_value(f64::from(v), x0, x1, y0, y1))
    }))
}

/// Log dynamic-range compression scaled so `v_max` maps to 255:
/// `255 / ln(1 + v_max) * ln(1 + x)`. Negative inputs are treated as 0.
pub fn log_value(x: f64, v_max: f64) -> f64 {
    // ratio first: keeps map(v_max) == 255 and exact ties such as ln16/ln256
    255.0 * (x.max(0.0).ln_1p() / v_max.ln_1p())
}

pub fn log_lut(v_max: u8) -> Result<Lut> {
    if v_max == 0 {
        return Err(Error::DegenerateRange);
    }
    let top = f64::from(v_max);
    Ok(Lut::from_fn(|v| quantize(log_value(f64::from(v), top))))
}

/// Histogram specification by discrete CDF inversion.
///
/// `map[v]` is the smallest target level `t` with `T(t) >= S(v)`, where `S`
/// and `T` are the normalized source and target CDFs. The comparison is done
/// in exact integer arithmetic. Levels absent from the source (`S(v) = 0`)
/// map to 0.
pub fn matching_lut(source: &Cdf, target: &Cdf) -> Result<Lut> {
    let (ns, nt) = (source.total() as u128, target.total() as u128);
    if ns == 0 || nt == 0 {
        return Err(Error::EmptyImage);
    }
    let mut map = [0u8; LEVELS];
    // S is nondecreasing, so the answer is too; resume the scan from the last hit.
    let mut t = 0usize;
    for (v, m) in map.iter_mut().enumerate() {
        let need = source.cumulative[v] as u128 * nt;
        while (target.cumulative[t] as u128) * ns < need {
            t += 1;
        }
        *m = t as u8;
    }
    Ok(Lut { map })
}

pub fn apply_lut(img: &GrayImage, lut: &Lut) -> GrayImage {
    let data = img.data().iter().map(|&v| lut.map[v as usize]).collect();
    GrayImage::new(img.width(), img.height(), data).expect("dimensions preserved")
}

/// Histogram equalization of an 8-bit image.
pub fn equalize(img: &GrayImage) -> Result<GrayImage> {
    let lut = equalization_lut(&cdf(&histogram(img)))?;
    Ok(apply_lut(img, &lut))
}

/// Remaps `img` so its histogram approximates that of `target`.
pub fn match_histogram(img: &GrayImage, target: &GrayImage) -> Result<GrayImage> {
    let lut = matching_lut(&cdf(&histogram(img)), &cdf(&histogram(target)))?;
    Ok(apply_lut(img, &lut))
}
