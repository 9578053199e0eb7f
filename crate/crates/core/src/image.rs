use crate::color::Rgb8;
use crate::error::{Error, Result};

/// An opaque 8-bit RGB raster in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PixelImage {
    width: usize,
    height: usize,
    pixels: Vec<Rgb8>,
}

impl PixelImage {
    pub fn new(width: usize, height: usize, pixels: Vec<Rgb8>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: width * height,
                found: pixels.len(),
            });
        }
        Ok(Self { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, color: Rgb8) -> Self {
        Self {
            width,
            height,
            pixels: vec![color; width * height],
        }
    }

    /// Builds an image from packed RGB bytes.
    pub fn from_rgb_bytes(width: usize, height: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != width * height * 3 {
            return Err(Error::DimensionMismatch {
                expected: width * height * 3,
                found: bytes.len(),
            });
        }
        let pixels = bytes
            .chunks_exact(3)
            .map(|p| Rgb8::new(p[0], p[1], p[2]))
            .collect();
        Self::new(width, height, pixels)
    }

    /// Builds an image from packed RGBA bytes, compositing every pixel over
    /// `background`.
    pub fn from_rgba_bytes(width: usize, height: usize, bytes: &[u8], background: Rgb8) -> Result<Self> {
        if bytes.len() != width * height * 4 {
            return Err(Error::DimensionMismatch {
                expected: width * height * 4,
                found: bytes.len(),
            });
        }
        let pixels = bytes
            .chunks_exact(4)
            .map(|p| Rgb8::new(p[0], p[1], p[2]).over(p[3], background))
            .collect();
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[Rgb8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [Rgb8] {
        &mut self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb8 {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, c: Rgb8) {
        self.pixels[y * self.width + x] = c;
    }

    /// Fills the axis-aligned rectangle `[x0, x1) × [y0, y1)`, clipped to the image.
    pub fn fill_rect(&mut self, x0: usize, y0: usize, x1: usize, y1: usize, c: Rgb8) {
        for y in y0..y1.min(self.height) {
            for x in x0..x1.min(self.width) {
                self.set(x, y, c);
            }
        }
    }

    pub fn to_rgb_bytes(&self) -> Vec<u8> {
        self.pixels.iter().flat_map(|p| p.to_array()).collect()
    }

    pub fn to_rgba_bytes(&self) -> Vec<u8> {
        self.pixels
            .iter()
            .flat_map(|p| [p.r, p.g, p.b, 255])
            .collect()
    }

    /// Left-right mirror.
    pub fn mirrored(&self) -> Self {
        let mut out = self.clone();
        for y in 0..self.height {
            out.pixels[y * self.width..(y + 1) * self.width].reverse();
        }
        out
    }
}
