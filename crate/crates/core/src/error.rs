use thiserror::Error;

/// Errors produced by the image enhancement library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed netpbm header: {0}")]
    MalformedHeader(String),
    #[error("unsupported maxval {0} (only 255 is supported)")]
    UnsupportedMaxval(u32),
    #[error("truncated pixel data: expected {expected} samples, found {found}")]
    TruncatedData { expected: usize, found: usize },
    #[error("invalid sample value: {0}")]
    InvalidSample(String),
    #[error("invalid dimensions {width}x{height} for {len} samples")]
    InvalidDimensions {
        width: usize,
        height: usize,
        len: usize,
    },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("empty image")]
    EmptyImage,
    #[error("degenerate intensity range")]
    DegenerateRange,
    #[error("spectrum is dc-centered; apply ifftshift first")]
    ShiftedSpectrum,
    #[error("cutoff must be positive, got {0}")]
    BadCutoff(f64),
    #[error("butterworth order must be at least 1, got {0}")]
    BadOrder(u32),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("kernel size must be odd and at least 3, got {0}")]
    EvenKernel(usize),
    #[error("sigma must be positive, got {0}")]
    BadSigma(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
