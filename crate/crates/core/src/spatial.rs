//! Spatial kernel filtering.
//!
//! The engine is cross-correlation (no kernel flip): the kernel's center tap
//! sits on the output pixel and `weights[a + r][b + r]` multiplies the sample
//! at offset `(a, b)`. Samples outside the image come from a
//! [`BoundaryPolicy`].

use std::f64::consts::PI;
use std::fmt;

use crate::raster::FieldImage;
use crate::{Error, Result};

/// Square, odd-sized correlation kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    size: usize,
    weights: Vec<f64>,
}

impl Kernel {
    pub fn new(size: usize, weights: Vec<f64>) -> Result<Self> {
        if size.is_multiple_of(2) {
            return Err(Error::EvenKernel(size));
        }
        if weights.len() != size * size {
            return Err(Error::InvalidDimensions {
                width: size,
                height: size,
                len: weights.len(),
            });
        }
        Ok(Self { size, weights })
    }

    fn from_rows<const K: usize>(rows: [[f64; K]; K]) -> Self {
        Self {
            size: K,
            weights: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn radius(&self) -> usize {
        self.size / 2
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn identity() -> Self {
        Self::from_rows([[1.0]])
    }

    /// Uniform `1/k²` box.
    pub fn mean(size: usize) -> Result<Self> {
        check_window(size)?;
        let w = 1.0 / (size * size) as f64;
        Self::new(size, vec![w; size * size])
    }

    pub fn laplacian() -> Self {
        Self::from_rows([[0.0, -1.0, 0.0], [-1.0, 4.0, -1.0], [0.0, -1.0, 0.0]])
    }

    pub fn sobel_x() -> Self {
        Self::from_rows([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])
    }

    pub fn sobel_y() -> Self {
        Self::from_rows([[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]])
    }

    pub fn prewitt_x() -> Self {
        Self::from_rows([[-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0]])
    }

    pub fn prewitt_y() -> Self {
        Self::from_rows([[-1.0, -1.0, -1.0], [0.0, 0.0, 0.0], [1.0, 1.0, 1.0]])
    }
}

/// How samples outside the image are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryPolicy {
    /// Mirror about the edge sample without repeating it (`-1 -> 1`).
    Reflect,
    /// Clamp to the nearest edge sample.
    Replicate,
    /// Read 0.
    Zero,
}

impl fmt::Display for BoundaryPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryPolicy::Reflect => "reflect",
            BoundaryPolicy::Replicate => "replicate",
            BoundaryPolicy::Zero => "zero",
        })
    }
}

impl BoundaryPolicy {
    /// Maps a possibly out-of-range index onto `0..len`, or `None` for a
    /// zero sample.
    pub fn resolve(self, idx: isize, len: usize) -> Option<usize> {
        let n = len as isize;
        if (0..n).contains(&idx) {
            return Some(idx as usize);
        }
        match self {
            BoundaryPolicy::Zero => None,
            BoundaryPolicy::Replicate => Some(idx.clamp(0, n - 1) as usize),
            BoundaryPolicy::Reflect => {
                if n == 1 {
                    return Some(0);
                }
                // mirror is periodic with period 2(n-1)
                let period = 2 * (n - 1);
                let m = idx.rem_euclid(period);
                Some(if m < n { m } else { period - m } as usize)
            }
        }
    }
}

fn check_window(size: usize) -> Result<()> {
    if size < 3 || size.is_multiple_of(2) {
        return Err(Error::EvenKernel(size));
    }
    Ok(())
}

/// Sampler over a field with a fixed boundary policy.
struct Window<'a> {
    img: &'a FieldImage,
    policy: BoundaryPolicy,
}

impl Window<'_> {
    #[inline]
    fn sample(&self, row: isize, col: isize) -> f64 {
        match (
            self.policy.resolve(row, self.img.height()),
            self.policy.resolve(col, self.img.width()),
        ) {
            (Some(r), Some(c)) => self.img.get(r, c),
            _ => 0.0,
        }
    }
}

fn map_pixels(img: &FieldImage, mut f: impl FnMut(usize, usize) -> f64) -> FieldImage {
    let mut data = Vec::with_capacity(img.data().len());
    for row in 0..img.height() {
        for col in 0..img.width() {
            data.push(f(row, col));
        }
    }
    FieldImage::from_parts(img.width(), img.height(), data)
}

/// Cross-correlates `img` with `kern`; output has the input's dimensions.
pub fn correlate(img: &FieldImage, kern: &Kernel, policy: BoundaryPolicy) -> FieldImage {
    let win = Window { img, policy };
    let r = kern.radius() as isize;
    let k = kern.size();
    map_pixels(img, |row, col| {
        let mut acc = 0.0;
        for a in -r..=r {
            let base = ((a + r) as usize) * k;
            for b in -r..=r {
                let w = kern.weights[base + (b + r) as usize];
                if w != 0.0 {
                    acc += w * win.sample(row as isize + a, col as isize + b);
                }
            }
        }
        acc
    })
}

pub fn mean_filter(img: &FieldImage, size: usize, policy: BoundaryPolicy) -> Result<FieldImage> {
    Ok(correlate(img, &Kernel::mean(size)?, policy))
}

/// Order-statistic filter; with an odd window the median is a window sample.
pub fn median_filter(img: &FieldImage, size: usize, policy: BoundaryPolicy) -> Result<FieldImage> {
    check_window(size)?;
    let win = Window { img, policy };
    let r = (size / 2) as isize;
    let mut buf = Vec::with_capacity(size * size);
    Ok(map_pixels(img, |row, col| {
        buf.clear();
        for a in -r..=r {
            for b in -r..=r {
                buf.push(win.sample(row as isize + a, col as isize + b));
            }
        }
        let mid = buf.len() / 2;
        *buf.select_nth_unstable_by(mid, f64::total_cmp).1
    }))
}

/// Edge-preserving smoothing with Gaussian spatial and range weights:
/// `w = exp(-(a²+b²)/(2σs²)) · exp(-(I(p) - I(q))²/(2σc²))`, normalized over
/// the `d×d` window.
pub fn bilateral_filter(
    img: &FieldImage,
    diameter: usize,
    sigma_color: f64,
    sigma_space: f64,
    policy: BoundaryPolicy,
) -> Result<FieldImage> {
    check_window(diameter)?;
    for s in [sigma_color, sigma_space] {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::BadSigma(s));
        }
    }
    let win = Window { img, policy };
    let r = (diameter / 2) as isize;
    let space_denom = 2.0 * sigma_space * sigma_space;
    let color_denom = 2.0 * sigma_color * sigma_color;

    let mut spatial = Vec::with_capacity(diameter * diameter);
    for a in -r..=r {
        for b in -r..=r {
            spatial.push((-((a * a + b * b) as f64) / space_denom).exp());
        }
    }

    Ok(map_pixels(img, |row, col| {
        let center = img.get(row, col);
        let (mut num, mut den) = (0.0, 0.0);
        let mut taps = spatial.iter();
        for a in -r..=r {
            for b in -r..=r {
                let ws = taps.next().unwrap();
                let q = win.sample(row as isize + a, col as isize + b);
                let diff = center - q;
                let w = ws * (-(diff * diff) / color_denom).exp();
                num -= w * diff;
                den += w;
            }
        }
        // Σw·q/Σw written as an offset from the center: a flat window returns
        // the center exactly. The center tap has weight 1, so den >= 1.
        center + num / den
    }))
}

pub fn laplacian(img: &FieldImage, policy: BoundaryPolicy) -> FieldImage {
    correlate(img, &Kernel::laplacian(), policy)
}

/// Sobel derivative responses `(gx, gy)`.
pub fn sobel(img: &FieldImage, policy: BoundaryPolicy) -> (FieldImage, FieldImage) {
    (
        correlate(img, &Kernel::sobel_x(), policy),
        correlate(img, &Kernel::sobel_y(), policy),
    )
}

/// Prewitt derivative responses `(gx, gy)`.
pub fn prewitt(img: &FieldImage, policy: BoundaryPolicy) -> (FieldImage, FieldImage) {
    (
        correlate(img, &Kernel::prewitt_x(), policy),
        correlate(img, &Kernel::prewitt_y(), policy),
    )
}

fn zip_with(gx: &FieldImage, gy: &FieldImage, f: impl Fn(f64, f64) -> f64) -> Result<FieldImage> {
    gx.same_dims(gy)?;
    let data = gx
        .data()
        .iter()
        .zip(gy.data())
        .map(|(&x, &y)| f(x, y))
        .collect();
    Ok(FieldImage::from_parts(gx.width(), gx.height(), data))
}

/// `sqrt(gx² + gy²)` per pixel.
pub fn gradient_magnitude(gx: &FieldImage, gy: &FieldImage) -> Result<FieldImage> {
    zip_with(gx, gy, f64::hypot)
}

/// `atan2(gy, gx)` in `(-π, π]`; zero gradient maps to 0.
pub fn gradient_direction(gx: &FieldImage, gy: &FieldImage) -> Result<FieldImage> {
    zip_with(gx, gy, |x, y| {
        if x == 0.0 && y == 0.0 {
            return 0.0;
        }
        let theta = y.atan2(x);
        // atan2(-0.0, negative) is -π
        if theta == -PI {
            PI
        } else {
            theta
        }
    })
}
