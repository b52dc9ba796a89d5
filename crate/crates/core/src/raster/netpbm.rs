//! Netpbm PGM (P2/P5) and PPM (P3/P6) codec, maxval 255 only.

use super::{GrayImage, Image, RgbImage};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    GrayAscii,
    GrayBinary,
    RgbAscii,
    RgbBinary,
}

impl Kind {
    fn from_magic(magic: &[u8]) -> Option<Self> {
        match magic {
            b"P2" => Some(Kind::GrayAscii),
            b"P5" => Some(Kind::GrayBinary),
            b"P3" => Some(Kind::RgbAscii),
            b"P6" => Some(Kind::RgbBinary),
            _ => None,
        }
    }

    fn channels(self) -> usize {
        match self {
            Kind::GrayAscii | Kind::GrayBinary => 1,
            Kind::RgbAscii | Kind::RgbBinary => 3,
        }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments (to end of line).
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_separators();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn header_number(&mut self, what: &str) -> Result<u32> {
        let tok = self
            .token()
            .ok_or_else(|| Error::MalformedHeader(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                Error::MalformedHeader(format!(
                    "invalid {what}: {:?}",
                    String::from_utf8_lossy(tok)
                ))
            })
    }
}

/// Decodes a P2/P5 (gray) or P3/P6 (color) image with maxval 255.
pub fn read_netpbm(bytes: &[u8]) -> Result<Image> {
    let kind = bytes
        .get(..2)
        .and_then(Kind::from_magic)
        .ok_or_else(|| Error::MalformedHeader("bad magic number".into()))?;
    if bytes
        .get(2)
        .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
    {
        return Err(Error::MalformedHeader("bad magic number".into()));
    }

    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.header_number("width")? as usize;
    let height = cur.header_number("height")? as usize;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    let maxval = cur.header_number("maxval")?;
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }

    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(kind.channels()))
        .ok_or_else(|| Error::MalformedHeader("dimensions overflow".into()))?;

    let samples = match kind {
        Kind::GrayBinary | Kind::RgbBinary => {
            // exactly one whitespace byte separates maxval from the payload
            match bytes.get(cur.pos) {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                _ => {
                    return Err(Error::MalformedHeader(
                        "missing whitespace before pixel data".into(),
                    ))
                }
            }
            let payload = &bytes[cur.pos..];
            if payload.len() < expected {
                return Err(Error::TruncatedData {
                    expected,
                    found: payload.len(),
                });
            }
            payload[..expected].to_vec()
        }
        Kind::GrayAscii | Kind::RgbAscii => {
            let mut out = Vec::with_capacity(expected);
            while out.len() < expected {
                let Some(tok) = cur.token() else {
                    return Err(Error::TruncatedData {
                        expected,
                        found: out.len(),
                    });
                };
                let value = std::str::from_utf8(tok)
                    .ok()
                    .and_then(|s| s.parse::<u32>().ok())
                    .filter(|&v| v <= maxval)
                    .ok_or_else(|| Error::InvalidSample(String::from_utf8_lossy(tok).into()))?;
                out.push(value as u8);
            }
            out
        }
    };

    Ok(match kind.channels() {
        1 => Image::Gray(GrayImage::new(width, height, samples)?),
        _ => {
            let px = samples
                .chunks_exact(3)
                .map(|c| [c[0], c[1], c[2]])
                .collect();
            Image::Rgb(RgbImage::new(width, height, px)?)
        }
    })
}

/// Encodes a binary PGM: `P5\n<w> <h>\n255\n` followed by the raw bytes.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.data().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.data());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gray(bytes: &[u8]) -> GrayImage {
        match read_netpbm(bytes).unwrap() {
            Image::Gray(g) => g,
            other => panic!("expected gray, got {other:?}"),
        }
    }

    #[test]
    fn binary_pgm() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend([0, 64, 128, 255]);
        let g = gray(&bytes);
        assert_eq!((g.width(), g.height()), (2, 2));
        assert_eq!(g.data(), &[0, 64, 128, 255]);
    }

    #[test]
    fn ascii_pgm_single_pixel() {
        assert_eq!(gray(b"P2\n1 1\n255\n7\n").data(), &[7]);
    }

    #[test]
    fn payload_may_start_with_whitespace_byte_values() {
        // 0x0a and 0x20 are valid pixel values after the single separator
        let mut bytes = b"P5 2 1 255\n".to_vec();
        bytes.extend(*b"\n ");
        assert_eq!(gray(&bytes).data(), &[10, 32]);
    }

    #[test]
    fn comments_are_skipped() {
        let bytes = b"P2\n# created by hand\n2 # width\n1\n# max\n255\n3 4\n";
        assert_eq!(gray(bytes).data(), &[3, 4]);
    }

    #[test]
    fn rejects_sixteen_bit() {
        let bytes = b"P5\n2 2\n65535\n\0\0\0\0\0\0\0\0";
        assert_eq!(read_netpbm(bytes), Err(Error::UnsupportedMaxval(65535)));
    }

    #[test]
    fn malformed_headers() {
        for bytes in [
            &b"P7\n1 1\n255\n\0"[..],
            b"",
            b"P5",
            b"P5\n2\n",
            b"P5\nx 2\n255\n",
            b"P5\n0 2\n255\n",
            b"P55 1 1 255\n\0",
        ] {
            assert!(
                matches!(read_netpbm(bytes), Err(Error::MalformedHeader(_))),
                "{:?}",
                String::from_utf8_lossy(bytes)
            );
        }
    }

    #[test]
    fn truncated_payloads() {
        assert_eq!(
            read_netpbm(b"P5\n2 2\n255\n\x01\x02"),
            Err(Error::TruncatedData {
                expected: 4,
                found: 2
            })
        );
        assert_eq!(
            read_netpbm(b"P3\n1 1\n255\n1 2\n"),
            Err(Error::TruncatedData {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn ascii_sample_out_of_range() {
        assert!(matches!(
            read_netpbm(b"P2\n1 1\n255\n256\n"),
            Err(Error::InvalidSample(_))
        ));
    }

    #[test]
    fn ppm_both_encodings() {
        let mut p6 = b"P6\n2 1\n255\n".to_vec();
        p6.extend([255, 0, 0, 1, 2, 3]);
        let ascii = b"P3\n2 1\n255\n255 0 0\n1 2 3\n";
        for bytes in [&p6[..], &ascii[..]] {
            match read_netpbm(bytes).unwrap() {
                Image::Rgb(c) => assert_eq!(c.data(), &[[255, 0, 0], [1, 2, 3]]),
                other => panic!("expected rgb, got {other:?}"),
            }
        }
    }

    #[test]
    fn write_layout() {
        let img = GrayImage::new(1, 2, vec![0, 255]).unwrap();
        assert_eq!(write_pgm(&img), b"P5\n1 2\n255\n\x00\xff");
        let img = GrayImage::new(2, 1, vec![10, 20]).unwrap();
        assert!(write_pgm(&img).starts_with(b"P5\n2 1\n255\n"));
    }

    proptest! {
        #[test]
        fn round_trip(
            (w, h, data) in (1usize..12, 1usize..12)
                .prop_flat_map(|(w, h)| (Just(w), Just(h), prop::collection::vec(any::<u8>(), w * h)))
        ) {
            let img = GrayImage::new(w, h, data).unwrap();
            prop_assert_eq!(read_netpbm(&write_pgm(&img)).unwrap(), Image::Gray(img));
        }
    }
}
