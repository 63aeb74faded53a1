//! Reference covariance matrices and roughness values estimated on airborne
//! L-band data (urban, forest, pasture), used as simulation fixtures.
//!
//! Matrices are in linear intensity units. Roughness values are the
//! per-channel and channel-averaged ω̂ for each target.

use crate::hermitian::{Complex, HermitianCov3};

const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub const fn sigma_urban() -> HermitianCov3 {
    HermitianCov3 {
        d: [962892.0, 56707.0, 472251.0],
        o: [
            c(19171.0, -3579.0),
            c(-154638.0, 191388.0),
            c(-5798.0, 16812.0),
        ],
    }
}

pub const fn sigma_forest() -> HermitianCov3 {
    HermitianCov3 {
        d: [360932.0, 98960.0, 208843.0],
        o: [c(11050.0, 3759.0), c(63896.0, 1581.0), c(6593.0, 6868.0)],
    }
}

pub const fn sigma_pasture() -> HermitianCov3 {
    HermitianCov3 {
        d: [32556.0, 1647.0, 61028.0],
        o: [c(556.0, 787.0), c(24046.0, -27287.0), c(-146.0, -482.0)],
    }
}

/// Per-channel ω̂ (HH, HV, VV) and their average, per target.
pub const OMEGA_URBAN: ([f64; 3], f64) = ([0.17, 0.94, 0.19], 0.43);
pub const OMEGA_FOREST: ([f64; 3], f64) = ([10.22, 8.53, 10.55], 9.77);
pub const OMEGA_PASTURE: ([f64; 3], f64) = ([19.88, 22.54, 18.32], 20.24);

/// Look up a fixture by name (`urban`, `forest`, `pasture`).
pub fn by_name(name: &str) -> Option<HermitianCov3> {
    match name.to_ascii_lowercase().as_str() {
        "urban" | "u" => Some(sigma_urban()),
        "forest" | "f" => Some(sigma_forest()),
        "pasture" | "p" => Some(sigma_pasture()),
        _ => None,
    }
}

/// Heuristic roughness intervals for selecting regions by land-cover name.
/// The forest and pasture intervals are read off typical estimates.
pub fn roughness_interval(name: &str) -> Option<(f64, f64)> {
    match name.to_ascii_lowercase().as_str() {
        "urban" => Some((0.1, 1.5)),
        "forest" => Some((5.0, 15.0)),
        "pasture" => Some((15.0, 40.0)),
        _ => None,
    }
}
