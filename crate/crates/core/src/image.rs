use crate::error::{Error, Result};
use crate::hermitian::HermitianCov3;

/// Row-major grid of multi-look Hermitian observations.
#[derive(Debug, Clone, PartialEq)]
pub struct PolSarImage {
    width: usize,
    height: usize,
    looks: u32,
    pixels: Vec<HermitianCov3>,
}

impl PolSarImage {
    pub fn new(
        width: usize,
        height: usize,
        looks: u32,
        pixels: Vec<HermitianCov3>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Parameter("image dimensions must be positive".into()));
        }
        if looks == 0 {
            return Err(Error::Parameter("looks must be >= 1".into()));
        }
        if pixels.len() != width * height {
            return Err(Error::Parameter(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        for (i, p) in pixels.iter().enumerate() {
            p.validate()
                .map_err(|e| Error::Parameter(format!("pixel {i}: {e}")))?;
        }
        Ok(Self {
            width,
            height,
            looks,
            pixels,
        })
    }

    /// An image with every pixel set to `value`.
    pub fn filled(width: usize, height: usize, looks: u32, value: HermitianCov3) -> Result<Self> {
        Self::new(width, height, looks, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn looks(&self) -> u32 {
        self.looks
    }

    pub fn pixels(&self) -> &[HermitianCov3] {
        &self.pixels
    }

    pub fn index(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    /// Pixel at column `x`, row `y`.
    pub fn get(&self, x: usize, y: usize) -> &HermitianCov3 {
        &self.pixels[self.index(x, y)]
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height
    }

    /// Intensity of channel `ch` (0 = HH, 1 = HV, 2 = VV) for every pixel.
    pub fn channel(&self, ch: usize) -> Vec<f64> {
        self.pixels.iter().map(|p| p.d[ch]).collect()
    }

    /// Same image with every pixel multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            pixels: self.pixels.iter().map(|p| p.scale(c)).collect(),
            ..self.clone()
        }
    }
}
