//! Densities, moments and exact samplers for the Inverse Gaussian backscatter,
//! complex Gaussian / Wishart speckle and the 𝒢ᴴ family.
//!
//! Densities are computed in log space; the linear-space functions are thin
//! wrappers that exponentiate.

mod bessel;
mod gig;
mod gih;
mod gph;
mod ig;
mod rng;
mod sampling;

pub use bessel::{bessel_k, bessel_k_half, ln_bessel_k, ln_bessel_k_half};
pub use gig::{gig_ln_pdf, gig_pdf, GIGParams};
pub use gih::{gih_ln_pdf, gih_moment, gih_pdf};
pub use gph::{gph_conditional_log_pdf, gph_log_pdf, gph_pdf, wishart_mean_log_pdf};
pub use ig::{ig_ln_pdf, ig_moment, ig_pdf, ig_transform, sample_ig, IGParams};
pub use rng::RngState;
pub use sampling::{
    sample_complex_gaussian, sample_gph, sample_wishart_mean, ComplexGaussianSampler, GphSampler,
};
