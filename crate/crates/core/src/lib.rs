//! Harmonic polarimetric SAR model (𝒢ᴾᴴ) and a B-spline boundary detector
//! driven by it.
//!
//! The crate is organised bottom-up:
//!
//! - [`hermitian`], [`image`], [`raster`]: 3×3 Hermitian observations, images
//!   of them, and the `.psr` raster format.
//! - [`distributions`]: Bessel K of half-integer order, IG/GIG/𝒢ᴵᴴ/𝒢ᴾᴴ
//!   densities and exact samplers.
//! - [`estimation`]: moment estimators of roughness, intensities and
//!   correlation coefficients; windowed and block-grid estimators.
//! - [`contour`]: closed B-splines, initial regions, radial fans, transition
//!   detection and the full boundary detector.
//! - [`evaluation`]: two-texture phantoms and the Monte Carlo edge-error study.
//! - [`scene`] and [`cli`]: synthetic scenes and the command-line surface.
//!
//! All randomness flows through [`distributions::RngState`], so every
//! simulation is reproducible from a single `u64` seed.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod contour;
pub mod distributions;
pub mod error;
pub mod estimation;
pub mod evaluation;
pub mod fixtures;
pub mod hermitian;
pub mod image;
pub mod numeric;
pub mod raster;
pub mod scene;

pub use error::{Error, Result};
pub use hermitian::{Complex, GHParams, HermitianCov3, Matrix3c, ScatteringVector};
pub use image::PolSarImage;
