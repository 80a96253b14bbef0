//! Binary Netpbm I/O: PGM (`P5`, gray) and PPM (`P6`, RGB), 8-bit.
//!
//! Samples map linearly between `0..=maxval` and `[0.0, 1.0]`. Writing always
//! uses `maxval = 255` with a minimal header, so `encode(decode(bytes))`
//! reproduces any file this module wrote.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::{Channels, Image};

pub fn encode(img: &Image) -> Vec<u8> {
    let magic = match img.channels() {
        Channels::Gray => "P5",
        Channels::Rgb => "P6",
    };
    let header = format!("{magic}\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.as_slice().len());
    out.extend_from_slice(header.as_bytes());
    out.extend(img.as_slice().iter().map(|&v| quantize(v)));
    out
}

#[inline]
pub fn quantize(v: f32) -> u8 {
    (v * 255.0).round().clamp(0.0, 255.0) as u8
}

/// Decodes a binary PGM/PPM. `origin` only labels errors.
pub fn decode(bytes: &[u8], origin: &Path) -> Result<Image> {
    let fail = |message: &str| Error::ImageFormat {
        path: origin.to_path_buf(),
        message: message.to_string(),
    };
    let mut cursor = Header { bytes, pos: 0 };
    let magic = cursor.token().ok_or_else(|| fail("missing magic number"))?;
    let channels = match magic {
        b"P5" => Channels::Gray,
        b"P6" => Channels::Rgb,
        _ => return Err(fail("expected P5 or P6 magic number")),
    };
    let width = cursor.number().ok_or_else(|| fail("bad width"))?;
    let height = cursor.number().ok_or_else(|| fail("bad height"))?;
    let maxval = cursor.number().ok_or_else(|| fail("bad maxval"))?;
    if width == 0 || height == 0 {
        return Err(fail("zero dimension"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(fail("only 8-bit maxval (1..=255) is supported"));
    }
    // exactly one whitespace byte separates the header from the raster
    if !cursor.bytes.get(cursor.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(fail("missing whitespace after maxval"));
    }
    let raster = &bytes[cursor.pos + 1..];
    let expected = width * height * channels.count();
    if raster.len() < expected {
        return Err(fail("truncated raster"));
    }
    if raster[..expected].iter().any(|&b| b as usize > maxval) {
        return Err(fail("sample exceeds maxval"));
    }
    let scale = maxval as f32;
    let data = raster[..expected].iter().map(|&b| b as f32 / scale).collect();
    Image::new(width, height, channels, data)
}

pub fn read(path: &Path) -> Result<Image> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes, path)
}

pub fn write(img: &Image, path: &Path) -> Result<()> {
    fs::write(path, encode(img)).map_err(|e| Error::io(path, e))
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
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

    fn number(&mut self) -> Option<usize> {
        std::str::from_utf8(self.token()?).ok()?.parse().ok()
    }
}
