//! Portable pixmap (P6 binary and P3 plain) reading and P6 writing, 8-bit only.

use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Row-major RGB image, 8 bits per channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl PixelImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::param("image must be at least 1x1"));
        }
        if width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::param(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width.saturating_mul(height),
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// A `width` x `height` image of one color.
    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self> {
        Self::new(width, height, vec![rgb; width.saturating_mul(height)])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    #[inline]
    pub fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    /// Copy of the `w` x `h` window whose top-left corner is `(row, col)`.
    pub fn crop(&self, row: usize, col: usize, w: usize, h: usize) -> Result<Self> {
        if row + h > self.height || col + w > self.width {
            return Err(Error::param("crop window exceeds image bounds"));
        }
        let pixels = (row..row + h)
            .flat_map(|r| (col..col + w).map(move |c| (r, c)))
            .map(|(r, c)| self.pixel(r, c))
            .collect();
        Self::new(w, h, pixels)
    }

    /// Reads a P6 or P3 pixmap with maxval 255.
    pub fn read_ppm<R: Read>(mut input: R) -> Result<Self> {
        let mut data = Vec::new();
        input.read_to_end(&mut data)?;
        let mut cur = Cursor { data: &data, pos: 0 };
        let magic = cur.token()?;
        let binary = match magic {
            b"P6" => true,
            b"P3" => false,
            other => {
                return Err(Error::Pixmap(format!(
                    "unsupported magic {:?}, expected P6 or P3",
                    String::from_utf8_lossy(other)
                )))
            }
        };
        let width = cur.number("width")?;
        let height = cur.number("height")?;
        let maxval = cur.number("maxval")?;
        if maxval != 255 {
            return Err(Error::Pixmap(format!("maxval {maxval} unsupported, expected 255")));
        }
        if width == 0 || height == 0 {
            return Err(Error::Pixmap("zero image dimension".into()));
        }
        let count = width
            .checked_mul(height)
            .filter(|c| c.checked_mul(3).is_some())
            .ok_or_else(|| Error::Pixmap("image dimensions overflow".into()))?;

        let pixels = if binary {
            // exactly one whitespace byte separates the header from the raster
            match cur.data.get(cur.pos) {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                _ => return Err(Error::Pixmap("missing whitespace after header".into())),
            }
            let raster = &cur.data[cur.pos..];
            if raster.len() < count * 3 {
                return Err(Error::Pixmap(format!(
                    "truncated raster: {} of {} bytes",
                    raster.len(),
                    count * 3
                )));
            }
            raster[..count * 3]
                .chunks_exact(3)
                .map(|c| [c[0], c[1], c[2]])
                .collect()
        } else {
            let mut px = Vec::with_capacity(count);
            for _ in 0..count {
                let mut rgb = [0u8; 3];
                for ch in &mut rgb {
                    let v = cur.number("sample").map_err(|_| {
                        Error::Pixmap("truncated or malformed plain raster".into())
                    })?;
                    *ch = u8::try_from(v)
                        .ok()
                        .filter(|_| v <= maxval)
                        .ok_or_else(|| Error::Pixmap(format!("sample {v} exceeds maxval")))?;
                }
                px.push(rgb);
            }
            px
        };
        Self::new(width, height, pixels)
    }

    /// Writes the image as binary P6.
    pub fn write_ppm<W: Write>(&self, mut out: W) -> Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.width, self.height)?;
        let raster: Vec<u8> = self.pixels.iter().flatten().copied().collect();
        out.write_all(&raster)?;
        out.flush()?;
        Ok(())
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<&'a [u8]> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self
            .data
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Pixmap("unexpected end of header".into()));
        }
        Ok(&self.data[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let tok = self.token()?;
        std::str::from_utf8(tok)
            .ok()
            .filter(|s| s.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                Error::Pixmap(format!("bad {what} {:?}", String::from_utf8_lossy(tok)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_binary_header_and_raster() {
        let mut data = b"P6\n2 2\n255\n".to_vec();
        data.extend(0u8..12);
        let img = PixelImage::read_ppm(data.as_slice()).unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        assert_eq!(img.pixel(1, 1), [9, 10, 11]);
    }

    #[test]
    fn reads_plain_with_comments() {
        let text = "P3\n# comment\n2 1\n255\n255 0 0  0 0 255\n";
        let img = PixelImage::read_ppm(text.as_bytes()).unwrap();
        assert_eq!(img.pixels(), &[[255, 0, 0], [0, 0, 255]]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut wide = b"P6\n2 2\n65535\n".to_vec();
        wide.extend([0u8; 24]);
        assert!(PixelImage::read_ppm(wide.as_slice()).is_err());
        assert!(PixelImage::read_ppm(&b"P5\n1 1\n255\n\0"[..]).is_err());
        assert!(PixelImage::read_ppm(&b"P6\n2 2\n255\n\0\0\0"[..]).is_err());
        assert!(PixelImage::read_ppm(&b"P3\n1 1\n255\n1 2\n"[..]).is_err());
        assert!(PixelImage::read_ppm(&b"P3\n1 1\n255\n1 2 300\n"[..]).is_err());
        assert!(PixelImage::read_ppm(&b"P6\n0 2\n255\n"[..]).is_err());
        assert!(PixelImage::read_ppm(&b""[..]).is_err());
    }

    #[test]
    fn write_then_read() {
        let img = PixelImage::new(3, 1, vec![[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        let mut buf = Vec::new();
        img.write_ppm(&mut buf).unwrap();
        assert!(buf.starts_with(b"P6\n3 1\n255\n"));
        assert_eq!(PixelImage::read_ppm(buf.as_slice()).unwrap(), img);
    }

    #[test]
    fn crop_window() {
        let px = (0..12u8).map(|i| [i, 0, 0]).collect();
        let img = PixelImage::new(4, 3, px).unwrap();
        let c = img.crop(1, 2, 2, 2).unwrap();
        assert_eq!(c.pixels(), &[[6, 0, 0], [7, 0, 0], [10, 0, 0], [11, 0, 0]]);
        assert!(img.crop(2, 0, 4, 2).is_err());
    }

    #[test]
    fn empty_image_rejected() {
        assert!(PixelImage::new(0, 3, vec![]).is_err());
    }
}
