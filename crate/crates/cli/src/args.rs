//! Command-line grammar.
//!
//! `enhance -i PATH -o PATH [--report PATH] [--quantize-between] STEP [STEP ...]`
//!
//! The global flags are parsed first; everything after them is split into
//! one token group per step (a step keyword starts a new group) and each
//! group is parsed on its own.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "enhance",
    about = "Grayscale image enhancement pipeline over Netpbm files",
    after_help = "Steps: equalize | stretch | logmap | match | spectrum | lowpass | highpass | smooth | edges\n\
                  Run `enhance -i x -o y STEP --help` for the flags of a step."
)]
pub struct Cli {
    /// Input image (PGM or PPM, maxval 255)
    #[arg(short = 'i', value_name = "PATH")]
    pub input: PathBuf,

    /// Output PGM
    #[arg(short = 'o', value_name = "PATH")]
    pub output: PathBuf,

    /// Append one line per step with its parameters and output statistics
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Round the working image to 8 bits after every step
    #[arg(long)]
    pub quantize_between: bool,

    #[arg(
        value_name = "STEP",
        required = true,
        trailing_var_arg = true,
        allow_hyphen_values = true
    )]
    pub steps: Vec<String>,
}

#[derive(Debug, Parser)]
#[command(no_binary_name = true, disable_help_subcommand = true)]
struct StepLine {
    #[command(subcommand)]
    step: Step,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Step {
    /// Histogram equalization
    Equalize,
    /// Linear contrast stretch (source bounds default to the image min/max)
    Stretch(StretchArgs),
    /// Logarithmic dynamic-range compression
    Logmap,
    /// Histogram matching against a target image
    Match {
        #[arg(long, value_name = "PATH")]
        target: PathBuf,
    },
    /// Centered log-magnitude spectrum (must be the last step)
    Spectrum,
    /// Frequency-domain low-pass filter
    Lowpass(FreqArgs),
    /// Frequency-domain high-pass filter
    Highpass(FreqArgs),
    /// Spatial smoothing
    Smooth(SmoothArgs),
    /// Edge response, min-max rescaled to [0, 255]
    Edges(EdgeArgs),
}

pub const STEP_NAMES: [&str; 9] = [
    "equalize", "stretch", "logmap", "match", "spectrum", "lowpass", "highpass", "smooth", "edges",
];

#[derive(Debug, Clone, PartialEq, Args)]
pub struct StretchArgs {
    #[arg(long, requires = "x_max", value_name = "N")]
    pub x_min: Option<u8>,
    #[arg(long, requires = "x_min", value_name = "N")]
    pub x_max: Option<u8>,
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub y_min: u8,
    #[arg(long, default_value_t = 255, value_name = "N")]
    pub y_max: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    Ideal,
    Butterworth,
    Gaussian,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct FreqArgs {
    #[arg(long, value_enum)]
    pub filter: FilterArg,
    /// Cutoff radius in frequency-grid pixels
    #[arg(long, value_name = "F")]
    pub cutoff: f64,
    /// Butterworth order
    #[arg(long, default_value_t = 2, value_name = "N")]
    pub order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SmoothMethod {
    Mean,
    Median,
    Bilateral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BorderArg {
    Zero,
    Reflect,
    Replicate,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SmoothArgs {
    #[arg(long, value_enum)]
    pub method: SmoothMethod,
    /// Window size for mean and median
    #[arg(long, default_value_t = 3, value_name = "N")]
    pub ksize: usize,
    /// Bilateral window diameter
    #[arg(long, default_value_t = 9, value_name = "N")]
    pub d: usize,
    #[arg(long, default_value_t = 75.0, value_name = "F")]
    pub sigma_color: f64,
    #[arg(long, default_value_t = 75.0, value_name = "F")]
    pub sigma_space: f64,
    #[arg(long, value_enum)]
    pub border: Option<BorderArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeMethod {
    Sobel,
    Prewitt,
    Laplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeOutput {
    Magnitude,
    Gx,
    Gy,
    Direction,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct EdgeArgs {
    #[arg(long, value_enum)]
    pub method: EdgeMethod,
    #[arg(long, value_enum, default_value_t = EdgeOutput::Magnitude)]
    pub output: EdgeOutput,
    #[arg(long, value_enum)]
    pub border: Option<BorderArg>,
}

/// Splits the step tokens into groups, one per step keyword. Every `--flag`
/// inside a group consumes the following token as its value, so a value that
/// happens to spell a step name (a `--target` path, say) stays in its group.
pub fn split_steps(tokens: &[String]) -> Result<Vec<Vec<String>>, String> {
    let mut groups: Vec<Vec<String>> = Vec::new();
    let mut iter = tokens.iter();
    while let Some(tok) = iter.next() {
        if STEP_NAMES.contains(&tok.as_str()) {
            groups.push(vec![tok.clone()]);
            continue;
        }
        let Some(group) = groups.last_mut() else {
            return Err(format!("unknown step '{tok}'"));
        };
        group.push(tok.clone());
        let takes_value = tok.starts_with("--") && !tok.contains('=') && tok != "--help";
        if takes_value {
            if let Some(value) = iter.next() {
                group.push(value.clone());
            }
        }
    }
    Ok(groups)
}

pub fn parse_step(group: &[String]) -> Result<Step, clap::Error> {
    StepLine::try_parse_from(group).map(|line| line.step)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn splits_on_step_keywords() {
        let groups =
            split_steps(&toks("equalize stretch --y-min 10 smooth --method median")).unwrap();
        assert_eq!(groups.len(), 3);
        assert_eq!(groups[1], toks("stretch --y-min 10"));
    }

    #[test]
    fn flag_values_named_like_steps_stay_put() {
        let groups = split_steps(&toks("match --target spectrum equalize")).unwrap();
        assert_eq!(
            groups,
            vec![toks("match --target spectrum"), toks("equalize")]
        );
    }

    #[test]
    fn leading_garbage_is_rejected() {
        assert!(split_steps(&toks("--bogus equalize")).is_err());
        assert!(split_steps(&toks("sharpen")).is_err());
    }

    #[test]
    fn parses_each_step() {
        assert_eq!(parse_step(&toks("equalize")).unwrap(), Step::Equalize);
        assert_eq!(
            parse_step(&toks("stretch --y-max 200")).unwrap(),
            Step::Stretch(StretchArgs {
                x_min: None,
                x_max: None,
                y_min: 0,
                y_max: 200
            })
        );
        let Step::Lowpass(f) =
            parse_step(&toks("lowpass --filter butterworth --cutoff 12.5")).unwrap()
        else {
            panic!()
        };
        assert_eq!(
            (f.filter, f.cutoff, f.order),
            (FilterArg::Butterworth, 12.5, 2)
        );
        let Step::Smooth(s) =
            parse_step(&toks("smooth --method bilateral --d 5 --border replicate")).unwrap()
        else {
            panic!()
        };
        assert_eq!(
            (s.d, s.sigma_color, s.border),
            (5, 75.0, Some(BorderArg::Replicate))
        );
        let Step::Edges(e) =
            parse_step(&toks("edges --method prewitt --output direction")).unwrap()
        else {
            panic!()
        };
        assert_eq!(
            (e.method, e.output, e.border),
            (EdgeMethod::Prewitt, EdgeOutput::Direction, None)
        );
    }

    #[test]
    fn grammar_errors() {
        for bad in [
            "stretch --x-min 10",
            "stretch --y-min 300",
            "lowpass --filter box --cutoff 3",
            "lowpass --filter ideal",
            "smooth --method mean --ksize three",
            "edges --method canny",
            "equalize --extra 1",
        ] {
            assert!(parse_step(&toks(bad)).is_err(), "{bad}");
        }
    }
}
