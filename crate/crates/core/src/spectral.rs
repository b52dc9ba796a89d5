//! 2D discrete Fourier transform and spectrum utilities.
//!
//! The transform is separable: every row is transformed, then every column.
//! Power-of-two line lengths use a recursive radix-2 decimation-in-time FFT;
//! any other length falls back to the direct O(n²) sum. The forward
//! transform uses `exp(-j·)` and is unnormalized; the inverse uses `exp(+j·)`
//! and carries the full `1/(MN)` factor.
//!
//! Coefficients are indexed `(u, v)` = (row, column), so `u` runs over the
//! image height and `v` over its width.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::raster::FieldImage;
use crate::{Error, Result};

/// Complex frequency coefficients of an image.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    width: usize,
    height: usize,
    coeffs: Vec<Complex64>,
    dc_centered: bool,
}

impl Spectrum {
    /// Wraps raw coefficients (row-major). The spectrum starts uncentered.
    pub fn new(width: usize, height: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if width == 0 || height == 0 || width * height != coeffs.len() {
            return Err(Error::InvalidDimensions {
                width,
                height,
                len: coeffs.len(),
            });
        }
        Ok(Self {
            width,
            height,
            coeffs,
            dc_centered: false,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn get(&self, u: usize, v: usize) -> Complex64 {
        self.coeffs[u * self.width + v]
    }

    pub fn is_dc_centered(&self) -> bool {
        self.dc_centered
    }
}

/// Complex-valued spatial field returned by [`idft2`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    width: usize,
    height: usize,
    data: Vec<Complex64>,
}

impl ComplexField {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn real(&self) -> FieldImage {
        FieldImage::from_parts(
            self.width,
            self.height,
            self.data.iter().map(|c| c.re).collect(),
        )
    }

    /// Per-pixel complex modulus.
    pub fn magnitude(&self) -> FieldImage {
        FieldImage::from_parts(
            self.width,
            self.height,
            self.data.iter().map(|c| c.norm()).collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        }
    }
}

/// Unnormalized 1D DFT of `input`; `inverse` flips the exponent sign.
pub fn dft1d(input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let dir = if inverse {
        Direction::Inverse
    } else {
        Direction::Forward
    };
    transform_line(input, dir)
}

fn transform_line(input: &[Complex64], dir: Direction) -> Vec<Complex64> {
    if input.len().is_power_of_two() {
        radix2(input, dir.sign())
    } else {
        direct_sum(input, dir.sign())
    }
}

fn radix2(input: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = input.len();
    if n == 1 {
        return input.to_vec();
    }
    let even: Vec<_> = input.iter().step_by(2).copied().collect();
    let odd: Vec<_> = input.iter().skip(1).step_by(2).copied().collect();
    let even = radix2(&even, sign);
    let odd = radix2(&odd, sign);

    let half = n / 2;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..half {
        let twiddle = Complex64::from_polar(1.0, sign * TAU * k as f64 / n as f64);
        let t = twiddle * odd[k];
        out[k] = even[k] + t;
        out[k + half] = even[k] - t;
    }
    out
}

fn direct_sum(input: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = input.len();
    (0..n)
        .map(|k| {
            input
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    // reduce the phase index first to keep the angle small
                    let phase = ((k * j) % n) as f64 / n as f64;
                    x * Complex64::from_polar(1.0, sign * TAU * phase)
                })
                .sum()
        })
        .collect()
}

/// Row pass then column pass, in place on a row-major buffer.
fn transform_2d(data: &mut [Complex64], width: usize, height: usize, dir: Direction) {
    for row in data.chunks_exact_mut(width) {
        let out = transform_line(row, dir);
        row.copy_from_slice(&out);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); height];
    for col in 0..width {
        for (row, c) in column.iter_mut().enumerate() {
            *c = data[row * width + col];
        }
        let out = transform_line(&column, dir);
        for (row, c) in out.into_iter().enumerate() {
            data[row * width + col] = c;
        }
    }
}

/// Forward 2D DFT: `F(u,v) = Σ_x Σ_y f(x,y) exp(-j2π(ux/H + vy/W))`.
pub fn dft2(img: &FieldImage) -> Spectrum {
    let (width, height) = (img.width(), img.height());
    let mut coeffs: Vec<Complex64> = img.data().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform_2d(&mut coeffs, width, height, Direction::Forward);
    Spectrum {
        width,
        height,
        coeffs,
        dc_centered: false,
    }
}

/// Inverse 2D DFT with `1/(MN)` normalization. The spectrum must be in
/// natural (uncentered) order.
pub fn idft2(spec: &Spectrum) -> Result<ComplexField> {
    if spec.dc_centered {
        return Err(Error::ShiftedSpectrum);
    }
    let (width, height) = (spec.width, spec.height);
    let mut data = spec.coeffs.clone();
    transform_2d(&mut data, width, height, Direction::Inverse);
    let scale = 1.0 / (width * height) as f64;
    for c in &mut data {
        *c *= scale;
    }
    Ok(ComplexField {
        width,
        height,
        data,
    })
}

fn roll(spec: &Spectrum, row_shift: usize, col_shift: usize, dc_centered: bool) -> Spectrum {
    let (w, h) = (spec.width, spec.height);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); w * h];
    for u in 0..h {
        let du = (u + row_shift) % h;
        for v in 0..w {
            coeffs[du * w + (v + col_shift) % w] = spec.coeffs[u * w + v];
        }
    }
    Spectrum {
        width: w,
        height: h,
        coeffs,
        dc_centered,
    }
}

/// Moves the DC coefficient to `(floor(H/2), floor(W/2))`.
pub fn fftshift(spec: &Spectrum) -> Spectrum {
    roll(spec, spec.height / 2, spec.width / 2, true)
}

/// Inverse of [`fftshift`] (shift by the ceiling halves).
pub fn ifftshift(spec: &Spectrum) -> Spectrum {
    roll(spec, spec.height.div_ceil(2), spec.width.div_ceil(2), false)
}

/// `ln(1 + |F(u,v)|)` per coefficient, in the spectrum's current order.
pub fn magnitude_spectrum(spec: &Spectrum) -> FieldImage {
    FieldImage::from_parts(
        spec.width,
        spec.height,
        spec.coeffs.iter().map(|c| c.norm().ln_1p()).collect(),
    )
}
