use serde::{Deserialize, Serialize};

use crate::distributions::{GphSampler, RngState};
use crate::error::Result;
use crate::hermitian::{GHParams, HermitianCov3};
use crate::image::PolSarImage;

pub const PHANTOM_WIDTH: usize = 100;
pub const PHANTOM_HEIGHT: usize = 20;
/// First column of the right half.
pub const TRUE_EDGE: usize = 50;

/// Covariance and roughness of one texture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TextureParams {
    pub sigma: HermitianCov3,
    pub omega: f64,
}

impl TextureParams {
    pub fn new(sigma: HermitianCov3, omega: f64) -> Self {
        Self { sigma, omega }
    }

    pub fn gh(&self, looks: u32) -> Result<GHParams> {
        GHParams::new(self.omega, self.sigma, looks)
    }
}

/// `width × height` image whose columns `< width/2` follow `left` and the
/// rest follow `right`. Pixels are drawn in row-major order from `rng`.
pub fn make_phantom_sized(
    left: &TextureParams,
    right: &TextureParams,
    width: usize,
    height: usize,
    looks: u32,
    rng: &mut RngState,
) -> Result<(PolSarImage, usize)> {
    let l = GphSampler::new(&left.gh(looks)?)?;
    let r = GphSampler::new(&right.gh(looks)?)?;
    let edge = width / 2;
    let pixels = (0..width * height)
        .map(|i| {
            if i % width < edge {
                l.sample(rng)
            } else {
                r.sample(rng)
            }
        })
        .collect();
    Ok((PolSarImage::new(width, height, looks, pixels)?, edge))
}

/// The standard 20 × 100 phantom with its true edge at column 50.
pub fn make_phantom(
    left: &TextureParams,
    right: &TextureParams,
    looks: u32,
    rng: &mut RngState,
) -> Result<(PolSarImage, usize)> {
    make_phantom_sized(left, right, PHANTOM_WIDTH, PHANTOM_HEIGHT, looks, rng)
}
