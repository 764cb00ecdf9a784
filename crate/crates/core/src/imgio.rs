//! Binary PGM (P5) images and pulse-sequence directories.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::image::{GrayImage, Mask};
use crate::model::{time_signature, PulseSequence};

/// Parsed P5 header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PgmHeader {
    pub width: usize,
    pub height: usize,
    pub maxval: u8,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail(format!("expected {what}"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => Err(Error::Parse { offset: start, message: format!("{what} out of range") }),
        }
    }
}

fn parse_header(bytes: &[u8]) -> Result<(PgmHeader, usize)> {
    let mut c = Cursor { bytes, pos: 0 };
    if !bytes.starts_with(b"P5") {
        return c.fail("bad magic, expected P5");
    }
    c.pos = 2;
    if !bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return c.fail("bad magic, expected P5");
    }
    let width_at = c.pos;
    let width = c.number("width")?;
    let height = c.number("height")?;
    if width == 0 || height == 0 {
        return Err(Error::Parse { offset: width_at, message: "dimensions must be at least 1".into() });
    }
    c.skip_space_and_comments();
    let maxval_at = c.pos;
    let maxval = c.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::Parse {
            offset: maxval_at,
            message: format!("maxval {maxval} unsupported, only 8-bit (1..=255) images are read"),
        });
    }
    if !bytes.get(c.pos).is_some_and(u8::is_ascii_whitespace) {
        return c.fail("expected a single whitespace byte before the payload");
    }
    c.pos += 1;
    let header = PgmHeader { width: width as usize, height: height as usize, maxval: maxval as u8 };
    Ok((header, c.pos))
}

/// Decodes a binary PGM. Samples map to `v / maxval` and are clamped to
/// `[EPSILON, 1]`. Bytes after the payload are ignored.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let (header, start) = parse_header(bytes)?;
    let expected = header
        .width
        .checked_mul(header.height)
        .ok_or_else(|| Error::Parse { offset: 0, message: "dimensions overflow".into() })?;
    let actual = bytes.len() - start;
    if actual < expected {
        return Err(Error::Parse {
            offset: bytes.len(),
            message: format!("truncated payload: expected {expected} bytes, found {actual}"),
        });
    }
    GrayImage::from_u8(header.width, header.height, &bytes[start..start + expected], header.maxval)
}

fn encode(width: usize, height: usize, payload: impl Iterator<Item = u8>) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend(payload);
    out
}

/// Encodes with maxval 255, storing `round(v * 255)`.
pub fn write_pgm(image: &GrayImage) -> Vec<u8> {
    encode(image.width(), image.height(), image.data().iter().map(|v| (v * 255.0).round() as u8))
}

/// Encodes a binary mask as 0 / 255.
pub fn write_mask_pgm(mask: &Mask) -> Vec<u8> {
    encode(mask.width(), mask.height(), mask.data().iter().map(|&b| b * 255))
}

pub fn read_pgm_file(path: impl AsRef<Path>) -> Result<GrayImage> {
    read_pgm(&fs::read(path)?)
}

/// `iteration,fired_count` rows with a header line.
pub fn signature_csv(seq: &PulseSequence) -> String {
    let mut out = String::from("iteration,fired_count\n");
    for (n, count) in time_signature(seq).iter().enumerate() {
        out.push_str(&format!("{},{}\n", n + 1, count));
    }
    out
}

/// Writes `frame_0001.pgm ...` and `signature.csv` into `dir`, creating it
/// if needed. Refuses to write into a non-empty directory. Returns the
/// written paths in order.
pub fn write_sequence(seq: &PulseSequence, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    if fs::read_dir(dir)?.next().is_some() {
        return Err(io::Error::new(
            io::ErrorKind::AlreadyExists,
            format!("output directory {} is not empty", dir.display()),
        )
        .into());
    }
    let mut written = Vec::with_capacity(seq.len() + 1);
    for (n, frame) in seq.frames().iter().enumerate() {
        let path = dir.join(format!("frame_{:04}.pgm", n + 1));
        fs::write(&path, write_mask_pgm(frame))?;
        written.push(path);
    }
    let path = dir.join("signature.csv");
    fs::write(&path, signature_csv(seq))?;
    written.push(path);
    Ok(written)
}
