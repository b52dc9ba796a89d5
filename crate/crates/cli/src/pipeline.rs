//! Validated pipeline steps and their execution on the working image.

use std::fmt;
use std::path::Path;

use anyhow::Context;
use enhance_core::freqfilter::{
    apply_frequency_filter, butterworth_mask, gaussian_mask, ideal_mask, FilterKind,
};
use enhance_core::raster::read_netpbm;
use enhance_core::spatial::{
    bilateral_filter, gradient_direction, gradient_magnitude, laplacian, mean_filter,
    median_filter, prewitt, sobel, BoundaryPolicy,
};
use enhance_core::spectral::{dft2, fftshift, magnitude_spectrum};
use enhance_core::tonemap::{equalize, log_value, match_histogram, stretch_value};
use enhance_core::{Error, FieldImage, GrayImage};

use crate::args::{
    BorderArg, EdgeArgs, EdgeMethod, EdgeOutput, FilterArg, FreqArgs, SmoothArgs, SmoothMethod,
    Step, StretchArgs,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FreqFamily {
    Ideal,
    Butterworth { order: u32 },
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothing {
    Mean {
        ksize: usize,
    },
    Median {
        ksize: usize,
    },
    Bilateral {
        d: usize,
        sigma_color: f64,
        sigma_space: f64,
    },
}

/// One step with parameters checked against the library preconditions.
#[derive(Debug, Clone, PartialEq)]
pub enum PipelineStep {
    Equalize,
    Stretch {
        x_bounds: Option<(u8, u8)>,
        y_min: u8,
        y_max: u8,
    },
    Logmap,
    Match {
        target: GrayImage,
    },
    Spectrum,
    Frequency {
        kind: FilterKind,
        family: FreqFamily,
        cutoff: f64,
    },
    Smooth {
        method: Smoothing,
        border: BoundaryPolicy,
    },
    Edges {
        method: EdgeMethod,
        output: EdgeOutput,
        border: BoundaryPolicy,
    },
}

fn policy(arg: Option<BorderArg>, default: BoundaryPolicy) -> BoundaryPolicy {
    match arg {
        None => default,
        Some(BorderArg::Zero) => BoundaryPolicy::Zero,
        Some(BorderArg::Reflect) => BoundaryPolicy::Reflect,
        Some(BorderArg::Replicate) => BoundaryPolicy::Replicate,
    }
}

fn odd_window(size: usize) -> Result<usize, Error> {
    if size < 3 || size.is_multiple_of(2) {
        return Err(Error::EvenKernel(size));
    }
    Ok(size)
}

fn positive_sigma(s: f64) -> Result<f64, Error> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::BadSigma(s));
    }
    Ok(s)
}

pub fn load_gray(path: &Path) -> anyhow::Result<GrayImage> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let img = read_netpbm(&bytes).with_context(|| format!("{}", path.display()))?;
    Ok(img.into_gray())
}

impl PipelineStep {
    /// Checks parameters and loads auxiliary inputs before anything runs.
    pub fn from_args(step: Step) -> anyhow::Result<Self> {
        Ok(match step {
            Step::Equalize => PipelineStep::Equalize,
            Step::Stretch(StretchArgs {
                x_min,
                x_max,
                y_min,
                y_max,
            }) => {
                let x_bounds = x_min.zip(x_max);
                if x_bounds.is_some_and(|(lo, hi)| lo >= hi) || y_min > y_max {
                    return Err(Error::DegenerateRange.into());
                }
                PipelineStep::Stretch {
                    x_bounds,
                    y_min,
                    y_max,
                }
            }
            Step::Logmap => PipelineStep::Logmap,
            Step::Match { target } => PipelineStep::Match {
                target: load_gray(&target)?,
            },
            Step::Spectrum => PipelineStep::Spectrum,
            Step::Lowpass(f) => Self::frequency(FilterKind::LowPass, f)?,
            Step::Highpass(f) => Self::frequency(FilterKind::HighPass, f)?,
            Step::Smooth(SmoothArgs {
                method,
                ksize,
                d,
                sigma_color,
                sigma_space,
                border,
            }) => {
                let (method, default) = match method {
                    SmoothMethod::Mean => (
                        Smoothing::Mean {
                            ksize: odd_window(ksize)?,
                        },
                        BoundaryPolicy::Zero,
                    ),
                    SmoothMethod::Median => (
                        Smoothing::Median {
                            ksize: odd_window(ksize)?,
                        },
                        BoundaryPolicy::Reflect,
                    ),
                    SmoothMethod::Bilateral => (
                        Smoothing::Bilateral {
                            d: odd_window(d)?,
                            sigma_color: positive_sigma(sigma_color)?,
                            sigma_space: positive_sigma(sigma_space)?,
                        },
                        BoundaryPolicy::Reflect,
                    ),
                };
                PipelineStep::Smooth {
                    method,
                    border: policy(border, default),
                }
            }
            Step::Edges(EdgeArgs {
                method,
                output,
                border,
            }) => PipelineStep::Edges {
                method,
                output,
                border: policy(border, BoundaryPolicy::Zero),
            },
        })
    }

    fn frequency(kind: FilterKind, args: FreqArgs) -> anyhow::Result<Self> {
        if !args.cutoff.is_finite() || args.cutoff <= 0.0 {
            return Err(Error::BadCutoff(args.cutoff).into());
        }
        let family = match args.filter {
            FilterArg::Ideal => FreqFamily::Ideal,
            FilterArg::Gaussian => FreqFamily::Gaussian,
            FilterArg::Butterworth => {
                if args.order < 1 {
                    return Err(Error::BadOrder(args.order).into());
                }
                FreqFamily::Butterworth { order: args.order }
            }
        };
        Ok(PipelineStep::Frequency {
            kind,
            family,
            cutoff: args.cutoff,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PipelineStep::Equalize => "equalize",
            PipelineStep::Stretch { .. } => "stretch",
            PipelineStep::Logmap => "logmap",
            PipelineStep::Match { .. } => "match",
            PipelineStep::Spectrum => "spectrum",
            PipelineStep::Frequency {
                kind: FilterKind::LowPass,
                ..
            } => "lowpass",
            PipelineStep::Frequency { .. } => "highpass",
            PipelineStep::Smooth { .. } => "smooth",
            PipelineStep::Edges { .. } => "edges",
        }
    }

    pub fn run(&self, img: &FieldImage) -> Result<StepOutput, Error> {
        let plain = |image| StepOutput {
            image,
            resolved: String::new(),
        };
        Ok(match self {
            PipelineStep::Equalize => plain(equalize(&img.to_gray())?.to_field()),
            PipelineStep::Stretch {
                x_bounds,
                y_min,
                y_max,
            } => {
                let (lo, hi) = match x_bounds {
                    Some((lo, hi)) => (f64::from(*lo), f64::from(*hi)),
                    None => (img.min(), img.max()),
                };
                if lo >= hi {
                    return Err(Error::DegenerateRange);
                }
                let (y0, y1) = (f64::from(*y_min), f64::from(*y_max));
                StepOutput {
                    image: img.map(|v| stretch_value(v, lo, hi, y0, y1))?,
                    resolved: format!(" x_min={lo:.4} x_max={hi:.4}"),
                }
            }
            PipelineStep::Logmap => {
                let top = img.max();
                if top <= 0.0 {
                    return Err(Error::DegenerateRange);
                }
                StepOutput {
                    image: img.map(|v| log_value(v, top))?,
                    resolved: format!(" v_max={top:.4}"),
                }
            }
            PipelineStep::Match { target } => {
                plain(match_histogram(&img.to_gray(), target)?.to_field())
            }
            PipelineStep::Spectrum => {
                plain(magnitude_spectrum(&fftshift(&dft2(img))).stretch_to_full_range())
            }
            PipelineStep::Frequency {
                kind,
                family,
                cutoff,
            } => {
                let (w, h) = (img.width(), img.height());
                let mask = match family {
                    FreqFamily::Ideal => ideal_mask(w, h, *cutoff, *kind)?,
                    FreqFamily::Butterworth { order } => {
                        butterworth_mask(w, h, *cutoff, *order, *kind)?
                    }
                    FreqFamily::Gaussian => gaussian_mask(w, h, *cutoff, *kind)?,
                };
                plain(apply_frequency_filter(img, &mask)?)
            }
            PipelineStep::Smooth { method, border } => plain(match *method {
                Smoothing::Mean { ksize } => mean_filter(img, ksize, *border)?,
                Smoothing::Median { ksize } => median_filter(img, ksize, *border)?,
                Smoothing::Bilateral {
                    d,
                    sigma_color,
                    sigma_space,
                } => bilateral_filter(img, d, sigma_color, sigma_space, *border)?,
            }),
            PipelineStep::Edges {
                method,
                output,
                border,
            } => {
                let raw = match method {
                    EdgeMethod::Laplacian => laplacian(img, *border),
                    EdgeMethod::Sobel | EdgeMethod::Prewitt => {
                        let (gx, gy) = if *method == EdgeMethod::Sobel {
                            sobel(img, *border)
                        } else {
                            prewitt(img, *border)
                        };
                        match output {
                            EdgeOutput::Magnitude => gradient_magnitude(&gx, &gy)?,
                            EdgeOutput::Gx => gx,
                            EdgeOutput::Gy => gy,
                            EdgeOutput::Direction => gradient_direction(&gx, &gy)?,
                        }
                    }
                };
                StepOutput {
                    resolved: format!(" rescaled_from=[{:.4},{:.4}]", raw.min(), raw.max()),
                    image: raw.stretch_to_full_range(),
                }
            }
        })
    }
}

/// Result of one step plus any parameters resolved at run time (auto
/// bounds, rescale ranges) for the report.
pub struct StepOutput {
    pub image: FieldImage,
    pub resolved: String,
}

impl fmt::Display for PipelineStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        match self {
            PipelineStep::Equalize | PipelineStep::Logmap | PipelineStep::Spectrum => Ok(()),
            PipelineStep::Stretch { y_min, y_max, .. } => write!(f, " y_min={y_min} y_max={y_max}"),
            PipelineStep::Match { target } => {
                write!(f, " target={}x{}", target.width(), target.height())
            }
            PipelineStep::Frequency { family, cutoff, .. } => match family {
                FreqFamily::Ideal => write!(f, " filter=ideal cutoff={cutoff}"),
                FreqFamily::Gaussian => write!(f, " filter=gaussian cutoff={cutoff}"),
                FreqFamily::Butterworth { order } => {
                    write!(f, " filter=butterworth cutoff={cutoff} order={order}")
                }
            },
            PipelineStep::Smooth { method, border } => match method {
                Smoothing::Mean { ksize } => write!(f, " method=mean ksize={ksize} border={border}"),
                Smoothing::Median { ksize } => {
                    write!(f, " method=median ksize={ksize} border={border}")
                }
                Smoothing::Bilateral {
                    d,
                    sigma_color,
                    sigma_space,
                } => write!(
                    f,
                    " method=bilateral d={d} sigma_color={sigma_color} sigma_space={sigma_space} border={border}"
                ),
            },
            PipelineStep::Edges {
                method,
                output,
                border,
            } => {
                let method = match method {
                    EdgeMethod::Sobel => "sobel",
                    EdgeMethod::Prewitt => "prewitt",
                    EdgeMethod::Laplacian => "laplacian",
                };
                let output = match output {
                    EdgeOutput::Magnitude => "magnitude",
                    EdgeOutput::Gx => "gx",
                    EdgeOutput::Gy => "gy",
                    EdgeOutput::Direction => "direction",
                };
                write!(f, " method={method} output={output} border={border}")
            }
        }
    }
}

/// `<step> <params> min=… max=… mean=…` with four decimals.
pub fn report_line(step: &PipelineStep, out: &StepOutput) -> String {
    format!(
        "{step}{} min={:.4} max={:.4} mean={:.4}",
        out.resolved,
        out.image.min(),
        out.image.max(),
        out.image.mean()
    )
}
