#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use enhance_core::raster::{read_netpbm, write_pgm};
use enhance_core::{FieldImage, GrayImage};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn enhance(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enhance"))
        .args(args)
        .output()
        .expect("spawn enhance")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn save(path: &Path, img: &GrayImage) {
    std::fs::write(path, write_pgm(img)).unwrap();
}

pub fn load(path: &Path) -> GrayImage {
    read_netpbm(&std::fs::read(path).unwrap())
        .unwrap()
        .into_gray()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_field(rng: &mut StdRng, width: usize, height: usize) -> FieldImage {
    let data = (0..width * height)
        .map(|_| rng.random_range(0.0..255.0))
        .collect();
    FieldImage::new(width, height, data).unwrap()
}

pub fn random_gray(rng: &mut StdRng, width: usize, height: usize) -> GrayImage {
    let data = (0..width * height).map(|_| rng.random::<u8>()).collect();
    GrayImage::new(width, height, data).unwrap()
}

/// Quadruple-sum DFT straight from the definition, complex as (re, im).
pub fn naive_dft2(img: &FieldImage) -> Vec<(f64, f64)> {
    let (w, h) = (img.width(), img.height());
    let mut out = Vec::with_capacity(w * h);
    for u in 0..h {
        for v in 0..w {
            let (mut re, mut im) = (0.0, 0.0);
            for x in 0..h {
                for y in 0..w {
                    let phase = ((u * x) % h) as f64 / h as f64 + ((v * y) % w) as f64 / w as f64;
                    let angle = -std::f64::consts::TAU * phase;
                    let f = img.get(x, y);
                    re += f * angle.cos();
                    im += f * angle.sin();
                }
            }
            out.push((re, im));
        }
    }
    out
}
