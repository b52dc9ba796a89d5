use enhance_core::freqfilter::{apply_frequency_filter, gaussian_mask, FilterKind};
use enhance_core::raster::{from_field, read_netpbm, write_pgm};
use enhance_core::spatial::{median_filter, BoundaryPolicy};
use enhance_core::tonemap::{cdf, equalize, histogram, match_histogram};
use enhance_core::{FieldImage, GrayImage, Image};

/// Vertical bands four pixels wide; a 3x3 median leaves them unchanged.
fn stripes(width: usize, height: usize) -> GrayImage {
    let data = (0..width * height)
        .map(|i| {
            if ((i % width) / 4).is_multiple_of(2) {
                60
            } else {
                190
            }
        })
        .collect();
    GrayImage::new(width, height, data).unwrap()
}

fn variance(f: &FieldImage) -> f64 {
    let m = f.mean();
    f.data().iter().map(|v| (v - m).powi(2)).sum::<f64>() / f.data().len() as f64
}

#[test]
fn ascii_ppm_to_equalized_pgm() {
    let ppm = b"P3\n# two by two\n2 2\n255\n255 0 0  0 255 0\n0 0 255  255 255 255\n";
    let gray = read_netpbm(ppm).unwrap().into_gray();
    assert_eq!(gray.data(), &[76, 150, 29, 255]);
    let eq = equalize(&gray).unwrap();
    assert_eq!(eq.data(), &[128, 191, 64, 255]);
    let bytes = write_pgm(&eq);
    assert_eq!(read_netpbm(&bytes).unwrap(), Image::Gray(eq));
}

#[test]
fn median_removes_salt_and_pepper() {
    let clean = stripes(24, 24);
    let mut noisy = clean.clone().into_data();
    // sparse impulses, never two in one window; rows 0, 1, 22 and 23 are
    // skipped because reflection duplicates rows 1 and 22 into border windows
    for i in (5..noisy.len())
        .step_by(37)
        .filter(|i| (2..22).contains(&(i / 24)))
    {
        noisy[i] = if i % 2 == 0 { 255 } else { 0 };
    }
    let noisy = GrayImage::new(24, 24, noisy).unwrap();
    let out =
        from_field(&median_filter(&noisy.to_field(), 3, BoundaryPolicy::Reflect).unwrap()).unwrap();
    let wrong = |img: &GrayImage| {
        img.data()
            .iter()
            .zip(clean.data())
            .filter(|(a, b)| a != b)
            .count()
    };
    assert!(wrong(&noisy) > 10);
    assert_eq!(wrong(&out), 0);
}

#[test]
fn gaussian_lowpass_smooths_and_highpass_removes_mean() {
    let img = stripes(32, 32).to_field();
    let lp = gaussian_mask(32, 32, 3.0, FilterKind::LowPass).unwrap();
    let smooth = apply_frequency_filter(&img, &lp).unwrap();
    assert!(variance(&smooth) < variance(&img));
    assert!((smooth.mean() - img.mean()).abs() < 1e-6);

    let hp = gaussian_mask(32, 32, 3.0, FilterKind::HighPass).unwrap();
    let detail = apply_frequency_filter(&img, &hp).unwrap();
    // DC removed; the magnitude of a zero-mean field is far below the input mean
    assert!(detail.mean() < img.mean() / 2.0);
}

#[test]
fn matching_moves_histogram_toward_target() {
    let src = stripes(16, 16);
    let target = GrayImage::new(4, 1, vec![10, 11, 240, 241]).unwrap();
    let out = match_histogram(&src, &target).unwrap();
    let (co, ct) = (cdf(&histogram(&out)), cdf(&histogram(&target)));
    for v in 0..=255u8 {
        assert!((co.normalized(v) - ct.normalized(v)).abs() <= 0.5 + 0.25 + 1e-12);
    }
    assert!(out.data().iter().all(|&v| v == 11 || v == 241));
}
